#include "crackflow/core.hpp"

#include <algorithm>

namespace crackflow {

namespace {

// Relative error bound of the 2x2 determinant; anything larger in magnitude
// is trusted, anything smaller is recomputed in extended precision.
constexpr double kOrientErrBound = 3.3306690738754716e-16;

}  // namespace

double orient2d(Point a, Point b, Point c) {
  double detleft = (a.x - c.x) * (b.y - c.y);
  double detright = (a.y - c.y) * (b.x - c.x);
  double det = detleft - detright;
  double detsum = std::abs(detleft) + std::abs(detright);
  if (std::abs(det) > kOrientErrBound * detsum) return det;
  long double dl = (static_cast<long double>(a.x) - c.x) * (static_cast<long double>(b.y) - c.y);
  long double dr = (static_cast<long double>(a.y) - c.y) * (static_cast<long double>(b.x) - c.x);
  return static_cast<double>(dl - dr);
}

double incircle(Point a, Point b, Point c, Point d) {
  double adx = a.x - d.x, ady = a.y - d.y;
  double bdx = b.x - d.x, bdy = b.y - d.y;
  double cdx = c.x - d.x, cdy = c.y - d.y;
  double ad2 = adx * adx + ady * ady;
  double bd2 = bdx * bdx + bdy * bdy;
  double cd2 = cdx * cdx + cdy * cdy;
  double det = ad2 * (bdx * cdy - bdy * cdx) + bd2 * (cdx * ady - cdy * adx) +
               cd2 * (adx * bdy - ady * bdx);
  double mag = ad2 * (std::abs(bdx * cdy) + std::abs(bdy * cdx)) +
               bd2 * (std::abs(cdx * ady) + std::abs(cdy * adx)) +
               cd2 * (std::abs(adx * bdy) + std::abs(ady * bdx));
  if (std::abs(det) > 1.0e-14 * mag) return det;
  long double ax = a.x, ay = a.y, bx = b.x, by = b.y, cx = c.x, cy = c.y, dx = d.x, dy = d.y;
  long double Adx = ax - dx, Ady = ay - dy;
  long double Bdx = bx - dx, Bdy = by - dy;
  long double Cdx = cx - dx, Cdy = cy - dy;
  long double Ad2 = Adx * Adx + Ady * Ady;
  long double Bd2 = Bdx * Bdx + Bdy * Bdy;
  long double Cd2 = Cdx * Cdx + Cdy * Cdy;
  long double ld = Ad2 * (Bdx * Cdy - Bdy * Cdx) + Bd2 * (Cdx * Ady - Cdy * Adx) +
                   Cd2 * (Adx * Bdy - Ady * Bdx);
  return static_cast<double>(ld);
}

double point_segment_dist2(Point p, Point a, Point b) {
  Vec2 ab = b - a;
  double len2 = ab.squared_norm();
  if (len2 == 0.0) return (p - a).squared_norm();
  double t = (p - a).dot(ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  Vec2 proj = a + t * ab;
  return (p - proj).squared_norm();
}

double polygon_area(const std::vector<Point>& poly) {
  double twice = 0.0;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

bool point_in_polygon(Point p, const std::vector<Point>& poly) {
  bool inside = false;
  size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    bool crosses = (a.y > p.y) != (b.y > p.y);
    if (crosses) {
      double x_int = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x_int) inside = !inside;
    }
  }
  return inside;
}

bool segments_intersect(Point a, Point b, Point c, Point d, Point* where) {
  double d1 = orient2d(c, d, a);
  double d2 = orient2d(c, d, b);
  double d3 = orient2d(a, b, c);
  double d4 = orient2d(a, b, d);
  auto on_segment = [](Point p, Point q, Point r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
  };
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    if (where) {
      double t = d1 / (d1 - d2);
      *where = a + t * (b - a);
    }
    return true;
  }
  if (d1 == 0 && on_segment(c, d, a)) {
    if (where) *where = a;
    return true;
  }
  if (d2 == 0 && on_segment(c, d, b)) {
    if (where) *where = b;
    return true;
  }
  if (d3 == 0 && on_segment(a, b, c)) {
    if (where) *where = c;
    return true;
  }
  if (d4 == 0 && on_segment(a, b, d)) {
    if (where) *where = d;
    return true;
  }
  return false;
}

bool polygon_self_intersects(const std::vector<Point>& poly,
                             std::vector<std::pair<int, int>>* offending) {
  int n = static_cast<int>(poly.size());
  bool found = false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // Skip adjacent edges (they share an endpoint).
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) {
        found = true;
        if (offending)
          offending->emplace_back(i, j);
        else
          return true;
      }
    }
  }
  return found;
}

}  // namespace crackflow
