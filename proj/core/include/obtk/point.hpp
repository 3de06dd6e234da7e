#pragma once

#include <cmath>
#include <numbers>

namespace obtk {

/// Spatial dimension of every domain and field in the toolkit.
inline constexpr int kDim = 2;

/// Volume of the unit ball in the plane.
inline constexpr double kUnitBallVolume = std::numbers::pi;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;

  double operator[](int i) const { return i == 0 ? x : y; }
};

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Axis-aligned box [lo, hi].
struct Box {
  Point lo;
  Point hi;

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return width() * height(); }
  double diagonal() const { return std::hypot(width(), height()); }
  bool contains(Point p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
  bool contains(const Box& b) const { return contains(b.lo) && contains(b.hi); }

  friend bool operator==(const Box&, const Box&) = default;
};

/// Intersection of two boxes; empty boxes come back with hi < lo in some axis.
inline Box intersect(const Box& a, const Box& b) {
  return {{std::fmax(a.lo.x, b.lo.x), std::fmax(a.lo.y, b.lo.y)},
          {std::fmin(a.hi.x, b.hi.x), std::fmin(a.hi.y, b.hi.y)}};
}

inline bool is_empty(const Box& b) { return !(b.hi.x > b.lo.x && b.hi.y > b.lo.y); }

inline Box bounding_box(const Box& a, const Box& b) {
  return {{std::fmin(a.lo.x, b.lo.x), std::fmin(a.lo.y, b.lo.y)},
          {std::fmax(a.hi.x, b.hi.x), std::fmax(a.hi.y, b.hi.y)}};
}

}  // namespace obtk
