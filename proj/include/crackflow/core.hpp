#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace crackflow {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GeometryError : Error {
  using Error::Error;
};
struct TopologyError : Error {
  using Error::Error;
};
struct SolverError : Error {
  using Error::Error;
};
struct NotFoundError : Error {
  using Error::Error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
  Vec2 normalized() const {
    double n = norm();
    return n > 0 ? Vec2{x / n, y / n} : Vec2{0, 0};
  }
  Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

using Point = Vec2;

/// Signed twice-area of triangle (a,b,c); positive for counter-clockwise.
/// Uses a floating-point filter with a long double fallback so that signs
/// near zero are still decided consistently.
double orient2d(Point a, Point b, Point c);

/// Positive if d lies inside the circumcircle of ccw triangle (a,b,c).
double incircle(Point a, Point b, Point c, Point d);

/// Squared distance from p to segment [a,b].
double point_segment_dist2(Point p, Point a, Point b);

struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(Point p, double tol = 0.0) const {
    return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
  }
  bool contains(const Rect& r) const {
    return r.x0 >= x0 && r.x1 <= x1 && r.y0 >= y0 && r.y1 <= y1;
  }
};

/// Shoelace area of a closed polygon (positive for ccw orientation).
double polygon_area(const std::vector<Point>& poly);

/// Even-odd rule point-in-polygon test. Points on the boundary may land on
/// either side; callers needing exact boundary handling test separately.
bool point_in_polygon(Point p, const std::vector<Point>& poly);

/// True if any two non-adjacent edges of the closed polygon intersect.
bool polygon_self_intersects(const std::vector<Point>& poly,
                             std::vector<std::pair<int, int>>* offending = nullptr);

/// Proper + touching segment intersection test, with intersection point.
bool segments_intersect(Point a, Point b, Point c, Point d, Point* where = nullptr);

}  // namespace crackflow
