#pragma once

#include <optional>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace gallmap {

enum class Axis { horizontal, vertical };

constexpr Axis flip(Axis a) noexcept {
  return a == Axis::horizontal ? Axis::vertical : Axis::horizontal;
}

struct Rect {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  double right() const noexcept { return x + width; }
  double bottom() const noexcept { return y + height; }
  double area() const noexcept { return width * height; }
  bool positive() const noexcept { return width > 0.0 && height > 0.0; }

  double lo(Axis a) const noexcept { return a == Axis::horizontal ? x : y; }
  double hi(Axis a) const noexcept {
    return a == Axis::horizontal ? x + width : y + height;
  }
  double extent(Axis a) const noexcept {
    return a == Axis::horizontal ? width : height;
  }

  void set_lo(Axis a, double v) noexcept {
    if (a == Axis::horizontal) {
      width += x - v;
      x = v;
    } else {
      height += y - v;
      y = v;
    }
  }
  void set_hi(Axis a, double v) noexcept {
    if (a == Axis::horizontal) {
      width = v - x;
    } else {
      height = v - y;
    }
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

Rect expand(const Rect& r, double margin) noexcept;
std::optional<Rect> intersect(const Rect& a, const Rect& b) noexcept;

// Splits `from` into the parts not covered by `cut` (at most four rectangles).
std::vector<Rect> subtract(const Rect& from, const Rect& cut);

// An axis-aligned region stored as interior-disjoint rectangles whose union
// is edge-connected. Up to two parts live inline; node regions are almost
// always a single rectangle.
struct RectPolygon {
  using Parts = boost::container::small_vector<Rect, 2>;

  Parts parts;

  RectPolygon() = default;
  explicit RectPolygon(Rect r) : parts{r} {}

  bool empty() const noexcept { return parts.empty(); }
  double area() const noexcept;
  Rect bounds() const noexcept;
  bool single_rect() const noexcept { return parts.size() == 1; }

  // Fuses pairs of parts that share a full edge; keeps the invariant cheap
  // to restore after subtraction.
  void normalize();
};

RectPolygon subtract(const RectPolygon& from, const Rect& cut);
RectPolygon intersect(const RectPolygon& a, const Rect& b);
RectPolygon intersect(const RectPolygon& a, const RectPolygon& b);

// Largest-area rectangle among the parts of `p` (zero rect when empty).
Rect largest_part(const RectPolygon& p);

// Area of `inner` not covered by `outer` after expanding every part of
// `outer` by `tolerance`.
double uncovered_area(const RectPolygon& inner, const RectPolygon& outer,
                      double tolerance);
double uncovered_area(const RectPolygon& inner,
                      const std::vector<const RectPolygon*>& outers,
                      double tolerance);

// Overlap area of the interiors after shrinking `a` by `tolerance`.
double interior_overlap(const RectPolygon& a, const RectPolygon& b,
                        double tolerance);

// True when the parts form one edge-connected component (gaps up to
// `tolerance` count as touching).
bool is_connected(const RectPolygon& p, double tolerance);

// Area of `p` on the low side of `coord` along `axis`.
double area_before(const RectPolygon& p, Axis axis, double coord);

// Coordinate c such that area_before(p, axis, c) == target (clamped to the
// polygon's span). The area function is piecewise linear and monotone.
double coord_for_area(const RectPolygon& p, Axis axis, double target);

// Cuts `p` into slices with the given areas, sweeping along `axis` in
// ascending coordinate order. The areas must sum to area(p); zero-area
// entries yield empty slices.
std::vector<RectPolygon> slice_by_area(const RectPolygon& p, Axis axis,
                                       const std::vector<double>& areas);

}  // namespace gallmap
