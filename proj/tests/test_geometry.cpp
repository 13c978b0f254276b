#include "support.hpp"

#include <cmath>
#include <vector>

#include "gallmap/geometry.hpp"

using namespace gallmap;
using doctest::Approx;

TEST_CASE("rect accessors and mutation") {
  Rect r{2, 3, 10, 4};
  CHECK(r.right() == 12);
  CHECK(r.bottom() == 7);
  CHECK(r.area() == 40);
  CHECK(r.positive());
  CHECK(r.lo(Axis::horizontal) == 2);
  CHECK(r.hi(Axis::horizontal) == 12);
  CHECK(r.lo(Axis::vertical) == 3);
  CHECK(r.hi(Axis::vertical) == 7);
  CHECK(r.extent(Axis::horizontal) == 10);
  CHECK(r.extent(Axis::vertical) == 4);

  r.set_lo(Axis::horizontal, 0);
  CHECK(r == Rect{0, 3, 12, 4});
  r.set_hi(Axis::vertical, 10);
  CHECK(r == Rect{0, 3, 12, 7});
  CHECK(flip(Axis::horizontal) == Axis::vertical);
  CHECK(!Rect{0, 0, 0, 5}.positive());
}

TEST_CASE("rect intersection") {
  CHECK(intersect(Rect{0, 0, 10, 10}, Rect{4, 4, 2, 2}) == Rect{4, 4, 2, 2});
  CHECK(intersect(Rect{0, 0, 10, 10}, Rect{5, 5, 10, 10}) == Rect{5, 5, 5, 5});
  CHECK(!intersect(Rect{0, 0, 10, 10}, Rect{20, 0, 5, 5}).has_value());
  SUBCASE("touching edges do not intersect") {
    CHECK(!intersect(Rect{0, 0, 10, 10}, Rect{10, 0, 5, 10}).has_value());
  }
}

TEST_CASE("rect subtraction") {
  const Rect base{0, 0, 10, 10};
  SUBCASE("interior cut leaves four parts") {
    auto parts = subtract(base, Rect{4, 4, 2, 2});
    CHECK(parts.size() == 4);
    double total = 0;
    for (const Rect& p : parts) total += p.area();
    CHECK(total == Approx(96.0));
  }
  SUBCASE("corner cut leaves two parts") {
    auto parts = subtract(base, Rect{0, 0, 5, 5});
    CHECK(parts.size() == 2);
    double total = 0;
    for (const Rect& p : parts) total += p.area();
    CHECK(total == Approx(75.0));
  }
  SUBCASE("disjoint cut changes nothing") {
    auto parts = subtract(base, Rect{20, 20, 5, 5});
    REQUIRE(parts.size() == 1);
    CHECK(parts.front() == base);
  }
  SUBCASE("covering cut removes everything") {
    CHECK(subtract(base, Rect{-1, -1, 20, 20}).empty());
  }
}

TEST_CASE("rect polygon area, bounds and normalization") {
  RectPolygon p;
  p.parts = {{0, 0, 2, 1}, {0, 1, 1, 1}};
  CHECK(p.area() == Approx(3.0));
  CHECK(p.bounds() == Rect{0, 0, 2, 2});
  CHECK(!p.single_rect());

  RectPolygon halves;
  halves.parts = {{0, 0, 1, 2}, {1, 0, 1, 2}};
  halves.normalize();
  REQUIRE(halves.single_rect());
  CHECK(halves.parts.front() == Rect{0, 0, 2, 2});

  CHECK(RectPolygon{}.empty());
  CHECK(RectPolygon{Rect{1, 1, 2, 2}}.single_rect());
}

TEST_CASE("polygon subtraction and intersection") {
  RectPolygon p{Rect{0, 0, 4, 4}};
  RectPolygon cut = subtract(p, Rect{0, 0, 4, 2});
  CHECK(cut.area() == Approx(8.0));
  CHECK(cut.bounds() == Rect{0, 2, 4, 2});

  RectPolygon isect = intersect(p, Rect{2, 2, 4, 4});
  CHECK(isect.area() == Approx(4.0));
  CHECK(isect.bounds() == Rect{2, 2, 2, 2});

  RectPolygon l;
  l.parts = {{0, 0, 2, 1}, {0, 1, 1, 1}};
  RectPolygon both = intersect(l, RectPolygon{Rect{0, 0, 2, 2}});
  CHECK(both.area() == Approx(3.0));
}

TEST_CASE("largest part") {
  RectPolygon p;
  p.parts = {{0, 0, 1, 1}, {5, 5, 3, 2}};
  CHECK(largest_part(p) == Rect{5, 5, 3, 2});
  CHECK(largest_part(RectPolygon{}) == Rect{});
}

TEST_CASE("coverage queries") {
  const RectPolygon outer{Rect{0, 0, 10, 10}};
  SUBCASE("contained region is covered") {
    CHECK(uncovered_area(RectPolygon{Rect{2, 2, 3, 3}}, outer, 0.0) ==
          Approx(0.0));
  }
  SUBCASE("escaping region reports the escaped area") {
    CHECK(uncovered_area(RectPolygon{Rect{8, 0, 4, 1}}, outer, 0.0) ==
          Approx(2.0));
  }
  SUBCASE("tolerance forgives small escapes") {
    CHECK(uncovered_area(RectPolygon{Rect{0, 0, 10.5, 10}}, outer, 1.0) ==
          Approx(0.0));
  }
  SUBCASE("union of parents covers jointly") {
    RectPolygon left{Rect{0, 0, 5, 10}};
    RectPolygon right{Rect{5, 0, 5, 10}};
    std::vector<const RectPolygon*> parents{&left, &right};
    CHECK(uncovered_area(RectPolygon{Rect{3, 3, 4, 4}}, parents, 0.0) ==
          Approx(0.0));
    CHECK(uncovered_area(RectPolygon{Rect{3, 3, 4, 4}},
                         std::vector<const RectPolygon*>{&left}, 0.0) ==
          Approx(8.0));
  }
}

TEST_CASE("interior overlap") {
  RectPolygon a{Rect{0, 0, 5, 5}};
  CHECK(interior_overlap(a, RectPolygon{Rect{5, 0, 5, 5}}, 1e-9) ==
        Approx(0.0));
  CHECK(interior_overlap(a, RectPolygon{Rect{4, 0, 5, 5}}, 1e-9) ==
        Approx(5.0).epsilon(1e-6));
}

TEST_CASE("connectivity") {
  RectPolygon touching;
  touching.parts = {{0, 0, 1, 1}, {1, 0, 1, 1}};
  CHECK(is_connected(touching, 1e-9));

  RectPolygon corner_only;
  corner_only.parts = {{0, 0, 1, 1}, {1, 1, 1, 1}};
  CHECK(!is_connected(corner_only, 1e-9));

  RectPolygon gapped;
  gapped.parts = {{0, 0, 1, 1}, {3, 0, 1, 1}};
  CHECK(!is_connected(gapped, 1e-9));

  RectPolygon hairline;
  hairline.parts = {{0, 0, 1, 1}, {1.0 + 1e-12, 0, 1, 1}};
  CHECK(is_connected(hairline, 1e-9));

  CHECK(is_connected(RectPolygon{Rect{0, 0, 1, 1}}, 0.0));
}

TEST_CASE("area sweeps") {
  RectPolygon l;
  l.parts = {{0, 0, 2, 1}, {0, 1, 1, 1}};

  CHECK(area_before(l, Axis::horizontal, 1.0) == Approx(2.0));
  CHECK(area_before(l, Axis::horizontal, 0.5) == Approx(1.0));
  CHECK(area_before(l, Axis::horizontal, 2.0) == Approx(3.0));
  CHECK(area_before(l, Axis::vertical, 1.0) == Approx(2.0));

  CHECK(coord_for_area(l, Axis::horizontal, 2.0) == Approx(1.0));
  CHECK(coord_for_area(l, Axis::horizontal, 1.0) == Approx(0.5));
  CHECK(coord_for_area(l, Axis::horizontal, 2.5) == Approx(1.5));
  CHECK(coord_for_area(l, Axis::horizontal, 0.0) == Approx(0.0));
  CHECK(coord_for_area(l, Axis::horizontal, 3.0) == Approx(2.0));
}

TEST_CASE("slicing by area") {
  RectPolygon l;
  l.parts = {{0, 0, 2, 1}, {0, 1, 1, 1}};

  SUBCASE("two equal slices split the thick end early") {
    auto slices = slice_by_area(l, Axis::horizontal, {1.5, 1.5});
    REQUIRE(slices.size() == 2);
    CHECK(slices[0].area() == Approx(1.5));
    CHECK(slices[1].area() == Approx(1.5));
    CHECK(slices[0].bounds().right() == Approx(0.75));
    CHECK(slices[1].bounds().x == Approx(0.75));
  }
  SUBCASE("zero entries give empty slices") {
    auto slices = slice_by_area(l, Axis::horizontal, {0.0, 3.0, 0.0});
    REQUIRE(slices.size() == 3);
    CHECK(slices[0].area() == Approx(0.0));
    CHECK(slices[1].area() == Approx(3.0));
    CHECK(slices[2].area() == Approx(0.0));
  }
  SUBCASE("vertical sweep") {
    auto slices = slice_by_area(l, Axis::vertical, {2.0, 1.0});
    REQUIRE(slices.size() == 2);
    CHECK(slices[0].bounds() == Rect{0, 0, 2, 1});
    CHECK(slices[1].bounds() == Rect{0, 1, 1, 1});
  }
}
