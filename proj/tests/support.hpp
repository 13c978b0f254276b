#pragma once

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "gallmap/geometry.hpp"
#include "gallmap/io.hpp"
#include "gallmap/network.hpp"

#ifndef GALLMAP_FIXTURE_DIR
#error "GALLMAP_FIXTURE_DIR must point at the fixture directory"
#endif

namespace gallmap::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(GALLMAP_FIXTURE_DIR) + "/" + name;
}

inline PhyloNetwork load_fixture(const std::string& name) {
  return parse_edge_list(read_file(fixture_path(name)));
}

inline bool rect_near(const Rect& r, double x, double y, double width,
                      double height, double tol = 1e-9) {
  return std::abs(r.x - x) <= tol && std::abs(r.y - y) <= tol &&
         std::abs(r.width - width) <= tol && std::abs(r.height - height) <= tol;
}

// Bounding box of a node's region; most galled-tree regions are single
// rectangles, so checking the bounds pins them completely.
inline bool bounds_near(const RectPolygon& p, double x, double y, double width,
                        double height, double tol = 1e-9) {
  return rect_near(p.bounds(), x, y, width, height, tol);
}

}  // namespace gallmap::test
