#include "gallmap/geometry.hpp"

#include <algorithm>
#include <cstddef>

namespace gallmap {

Rect expand(const Rect& r, double margin) noexcept {
  return {r.x - margin, r.y - margin, r.width + 2.0 * margin,
          r.height + 2.0 * margin};
}

std::optional<Rect> intersect(const Rect& a, const Rect& b) noexcept {
  const double x0 = std::max(a.x, b.x);
  const double y0 = std::max(a.y, b.y);
  const double x1 = std::min(a.right(), b.right());
  const double y1 = std::min(a.bottom(), b.bottom());
  if (x1 <= x0 || y1 <= y0) return std::nullopt;
  return Rect{x0, y0, x1 - x0, y1 - y0};
}

std::vector<Rect> subtract(const Rect& from, const Rect& cut) {
  const auto hole = intersect(from, cut);
  if (!hole) return {from};
  std::vector<Rect> parts;
  if (hole->x > from.x)
    parts.push_back({from.x, from.y, hole->x - from.x, from.height});
  if (hole->right() < from.right())
    parts.push_back(
        {hole->right(), from.y, from.right() - hole->right(), from.height});
  if (hole->y > from.y)
    parts.push_back({hole->x, from.y, hole->width, hole->y - from.y});
  if (hole->bottom() < from.bottom())
    parts.push_back(
        {hole->x, hole->bottom(), hole->width, from.bottom() - hole->bottom()});
  return parts;
}

double RectPolygon::area() const noexcept {
  double sum = 0.0;
  for (const Rect& r : parts) sum += r.area();
  return sum;
}

Rect RectPolygon::bounds() const noexcept {
  if (parts.empty()) return {};
  double x0 = parts[0].x;
  double y0 = parts[0].y;
  double x1 = parts[0].right();
  double y1 = parts[0].bottom();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    x0 = std::min(x0, parts[i].x);
    y0 = std::min(y0, parts[i].y);
    x1 = std::max(x1, parts[i].right());
    y1 = std::max(y1, parts[i].bottom());
  }
  return {x0, y0, x1 - x0, y1 - y0};
}

namespace {

bool fuse(Rect& a, const Rect& b) {
  if (a.x == b.x && a.width == b.width) {
    if (a.bottom() == b.y) {
      a.height += b.height;
      return true;
    }
    if (b.bottom() == a.y) {
      a.y = b.y;
      a.height += b.height;
      return true;
    }
  }
  if (a.y == b.y && a.height == b.height) {
    if (a.right() == b.x) {
      a.width += b.width;
      return true;
    }
    if (b.right() == a.x) {
      a.x = b.x;
      a.width += b.width;
      return true;
    }
  }
  return false;
}

}  // namespace

void RectPolygon::normalize() {
  parts.erase(std::remove_if(parts.begin(), parts.end(),
                             [](const Rect& r) { return !r.positive(); }),
              parts.end());
  bool fused = true;
  while (fused) {
    fused = false;
    for (std::size_t i = 0; i < parts.size() && !fused; ++i)
      for (std::size_t j = i + 1; j < parts.size() && !fused; ++j)
        if (fuse(parts[i], parts[j])) {
          parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(j));
          fused = true;
        }
  }
}

RectPolygon subtract(const RectPolygon& from, const Rect& cut) {
  RectPolygon out;
  for (const Rect& part : from.parts) {
    auto pieces = subtract(part, cut);
    out.parts.insert(out.parts.end(), pieces.begin(), pieces.end());
  }
  return out;
}

RectPolygon intersect(const RectPolygon& a, const Rect& b) {
  RectPolygon out;
  for (const Rect& part : a.parts)
    if (auto r = intersect(part, b)) out.parts.push_back(*r);
  return out;
}

RectPolygon intersect(const RectPolygon& a, const RectPolygon& b) {
  RectPolygon out;
  for (const Rect& pb : b.parts) {
    RectPolygon piece = intersect(a, pb);
    out.parts.insert(out.parts.end(), piece.parts.begin(), piece.parts.end());
  }
  return out;
}

Rect largest_part(const RectPolygon& p) {
  Rect best;
  for (const Rect& r : p.parts)
    if (r.area() > best.area()) best = r;
  return best;
}

double uncovered_area(const RectPolygon& inner,
                      const std::vector<const RectPolygon*>& outers,
                      double tolerance) {
  std::vector<Rect> remaining(inner.parts.begin(), inner.parts.end());
  for (const RectPolygon* outer : outers) {
    for (const Rect& cover : outer->parts) {
      const Rect grown = expand(cover, tolerance);
      std::vector<Rect> next;
      for (const Rect& r : remaining) {
        auto pieces = subtract(r, grown);
        next.insert(next.end(), pieces.begin(), pieces.end());
      }
      remaining = std::move(next);
      if (remaining.empty()) return 0.0;
    }
  }
  double sum = 0.0;
  for (const Rect& r : remaining) sum += r.area();
  return sum;
}

double uncovered_area(const RectPolygon& inner, const RectPolygon& outer,
                      double tolerance) {
  return uncovered_area(inner, std::vector<const RectPolygon*>{&outer},
                        tolerance);
}

double interior_overlap(const RectPolygon& a, const RectPolygon& b,
                        double tolerance) {
  double sum = 0.0;
  for (const Rect& ra : a.parts) {
    const Rect shrunk = expand(ra, -tolerance);
    if (!shrunk.positive()) continue;
    for (const Rect& rb : b.parts)
      if (auto r = intersect(shrunk, rb)) sum += r->area();
  }
  return sum;
}

bool is_connected(const RectPolygon& p, double tolerance) {
  const std::size_t n = p.parts.size();
  if (n <= 1) return true;
  std::vector<std::size_t> comp(n);
  for (std::size_t i = 0; i < n; ++i) comp[i] = i;
  auto find = [&comp](std::size_t i) {
    while (comp[i] != i) i = comp[i] = comp[comp[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto touch = intersect(expand(p.parts[i], tolerance), p.parts[j]);
      if (!touch) continue;
      if (std::max(touch->width, touch->height) <= 2.0 * tolerance) continue;
      comp[find(i)] = find(j);
    }
  const std::size_t head = find(0);
  for (std::size_t i = 1; i < n; ++i)
    if (find(i) != head) return false;
  return true;
}

double area_before(const RectPolygon& p, Axis axis, double coord) {
  double sum = 0.0;
  for (const Rect& r : p.parts) {
    const double span = std::clamp(coord - r.lo(axis), 0.0, r.extent(axis));
    sum += span * r.extent(flip(axis));
  }
  return sum;
}

double coord_for_area(const RectPolygon& p, Axis axis, double target) {
  if (p.empty()) return 0.0;
  std::vector<double> cuts;
  cuts.reserve(p.parts.size() * 2);
  for (const Rect& r : p.parts) {
    cuts.push_back(r.lo(axis));
    cuts.push_back(r.hi(axis));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  target = std::clamp(target, 0.0, p.area());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double slope = 0.0;
    for (const Rect& r : p.parts)
      if (r.lo(axis) <= cuts[i] && r.hi(axis) >= cuts[i + 1])
        slope += r.extent(flip(axis));
    const double gain = slope * (cuts[i + 1] - cuts[i]);
    if (target <= acc + gain) {
      if (slope == 0.0) return cuts[i];
      return cuts[i] + (target - acc) / slope;
    }
    acc += gain;
  }
  return cuts.back();
}

std::vector<RectPolygon> slice_by_area(const RectPolygon& p, Axis axis,
                                       const std::vector<double>& areas) {
  std::vector<RectPolygon> slices;
  slices.reserve(areas.size());
  const Rect box = p.bounds();
  double lo = p.empty() ? 0.0 : box.lo(axis);
  double acc = 0.0;
  for (std::size_t i = 0; i < areas.size(); ++i) {
    acc += areas[i];
    double hi = coord_for_area(p, axis, acc);
    if (i + 1 == areas.size() && acc >= p.area() * (1.0 - 1e-12))
      hi = box.hi(axis);
    RectPolygon slice;
    for (const Rect& r : p.parts) {
      Rect clipped = r;
      clipped.set_lo(axis, std::max(r.lo(axis), lo));
      clipped.set_hi(axis, std::min(r.hi(axis), hi));
      if (clipped.positive()) slice.parts.push_back(clipped);
    }
    slices.push_back(std::move(slice));
    lo = hi;
  }
  return slices;
}

}  // namespace gallmap
