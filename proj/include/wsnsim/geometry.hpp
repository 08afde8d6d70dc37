#pragma once

#include <algorithm>
#include <cmath>

namespace wsnsim {

/// Planar position in meters, relative to the deployment-area origin.
struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double squared_distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Position& a, const Position& b) {
  return std::sqrt(squared_distance(a, b));
}

inline bool inside_area(const Position& p, double width, double height) {
  return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
}

inline Position clamped(const Position& p, double width, double height) {
  return {std::clamp(p.x, 0.0, width), std::clamp(p.y, 0.0, height)};
}

}  // namespace wsnsim
