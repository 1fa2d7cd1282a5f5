#include "crackflow/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "delaunay.hpp"

namespace crackflow {

namespace {

// Uniform grid over line segments for distance queries with a cutoff.
class SegmentGrid {
 public:
  SegmentGrid(std::vector<std::pair<Point, Point>> segments, const Rect& bounds, double cell)
      : segs_(std::move(segments)), bounds_(bounds), cell_(cell) {
    nx_ = std::max(1, static_cast<int>(std::ceil(bounds.width() / cell_)));
    ny_ = std::max(1, static_cast<int>(std::ceil(bounds.height() / cell_)));
    cells_.resize(static_cast<size_t>(nx_) * ny_);
    for (int s = 0; s < static_cast<int>(segs_.size()); ++s) {
      auto [a, b] = segs_[s];
      int i0 = clampi(static_cast<int>((std::min(a.x, b.x) - bounds_.x0) / cell_), 0, nx_ - 1);
      int i1 = clampi(static_cast<int>((std::max(a.x, b.x) - bounds_.x0) / cell_), 0, nx_ - 1);
      int j0 = clampi(static_cast<int>((std::min(a.y, b.y) - bounds_.y0) / cell_), 0, ny_ - 1);
      int j1 = clampi(static_cast<int>((std::max(a.y, b.y) - bounds_.y0) / cell_), 0, ny_ - 1);
      for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) cells_[j * nx_ + i].push_back(s);
    }
  }

  // Distance from p to the segment set, saturated at cutoff.
  double distance(Point p, double cutoff) const {
    int ci = clampi(static_cast<int>((p.x - bounds_.x0) / cell_), 0, nx_ - 1);
    int cj = clampi(static_cast<int>((p.y - bounds_.y0) / cell_), 0, ny_ - 1);
    double best2 = cutoff * cutoff;
    int max_ring = static_cast<int>(std::ceil(cutoff / cell_)) + 1;
    for (int ring = 0; ring <= max_ring; ++ring) {
      double ring_min = (ring - 1) * cell_;
      if (ring_min > 0 && ring_min * ring_min > best2) break;
      for (int j = cj - ring; j <= cj + ring; ++j) {
        if (j < 0 || j >= ny_) continue;
        for (int i = ci - ring; i <= ci + ring; ++i) {
          if (i < 0 || i >= nx_) continue;
          if (std::max(std::abs(i - ci), std::abs(j - cj)) != ring) continue;
          for (int s : cells_[j * nx_ + i]) {
            double d2 = point_segment_dist2(p, segs_[s].first, segs_[s].second);
            best2 = std::min(best2, d2);
          }
        }
      }
    }
    return std::sqrt(best2);
  }

 private:
  static int clampi(int v, int lo, int hi) { return std::min(std::max(v, lo), hi); }
  std::vector<std::pair<Point, Point>> segs_;
  Rect bounds_;
  double cell_;
  int nx_, ny_;
  std::vector<std::vector<int>> cells_;
};

// Split segments at their mutual intersection points so the result is a
// non-crossing set (endpoints may be shared).
std::vector<std::pair<Point, Point>> split_at_intersections(
    std::vector<std::pair<Point, Point>> segs) {
  std::vector<std::pair<Point, Point>> out;
  int n = static_cast<int>(segs.size());
  for (int i = 0; i < n; ++i) {
    auto [a, b] = segs[i];
    std::vector<double> cuts{0.0, 1.0};
    Vec2 ab = b - a;
    double len2 = ab.squared_norm();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Point x;
      if (segments_intersect(a, b, segs[j].first, segs[j].second, &x)) {
        double t = (x - a).dot(ab) / len2;
        if (t > 1e-12 && t < 1.0 - 1e-12) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (cuts[k + 1] - cuts[k] < 1e-12) continue;
      out.emplace_back(a + cuts[k] * ab, a + cuts[k + 1] * ab);
    }
  }
  return out;
}

std::vector<std::pair<Point, Point>> rect_segments(const Rect& r) {
  Point p0{r.x0, r.y0}, p1{r.x1, r.y0}, p2{r.x1, r.y1}, p3{r.x0, r.y1};
  return {{p0, p1}, {p1, p2}, {p2, p3}, {p3, p0}};
}

Mesh extract_mesh(const detail::Triangulation& tri) {
  Mesh m;
  m.vertices = tri.points();
  m.triangles = tri.extract_triangles();
  m.region.assign(m.triangles.size(), Region::SOLID);
  m.tri_size.resize(m.triangles.size());
  for (size_t t = 0; t < m.triangles.size(); ++t) {
    auto& tv = m.triangles[t];
    double s = 0;
    for (int i = 0; i < 3; ++i)
      s = std::max(s, (m.vertices[tv[(i + 1) % 3]] - m.vertices[tv[(i + 2) % 3]]).norm());
    m.tri_size[t] = s;
  }
  return m;
}

double flatten_quadratic(Point a, Point c, Point b, double tol, std::vector<Point>& out) {
  // Quadratic Bezier (a, c, b); appends interior samples + b (a assumed done).
  double sag = std::sqrt(point_segment_dist2(c, a, b)) * 0.5;
  if (sag <= tol || (a - b).squared_norm() < tol * tol) {
    out.push_back(b);
    return sag;
  }
  Point ac = (a + c) * 0.5, cb = (c + b) * 0.5;
  Point mid = (ac + cb) * 0.5;
  flatten_quadratic(a, ac, mid, tol, out);
  flatten_quadratic(mid, cb, b, tol, out);
  return sag;
}

}  // namespace

// --- BoundaryCurve -----------------------------------------------------------

void BoundaryCurve::validate() const {
  if (points.size() < (closed ? 3u : 2u)) throw GeometryError("boundary curve has too few points");
  size_t n = points.size();
  size_t n_seg = closed ? n : n - 1;
  for (size_t i = 0; i < n_seg; ++i)
    if ((points[i] - points[(i + 1) % n]).squared_norm() == 0.0)
      throw GeometryError("boundary curve has coincident consecutive points");
  if (closed) {
    std::vector<std::pair<int, int>> offending;
    if (polygon_self_intersects(points, &offending)) {
      std::ostringstream msg;
      msg << "boundary curve self-intersects; offending segment pairs:";
      for (auto [i, j] : offending) msg << " (" << i << "," << j << ")";
      throw GeometryError(msg.str());
    }
  }
}

Vec2 BoundaryCurve::tangent_at(int i) const {
  int n = static_cast<int>(points.size());
  Point prev, next;
  if (closed) {
    prev = points[(i + n - 1) % n];
    next = points[(i + 1) % n];
  } else {
    prev = points[std::max(i - 1, 0)];
    next = points[std::min(i + 1, n - 1)];
  }
  return (next - prev).normalized();
}

double BoundaryCurve::polyline_length() const {
  double len = 0;
  size_t n = points.size();
  size_t n_seg = closed ? n : n - 1;
  for (size_t i = 0; i < n_seg; ++i) len += (points[(i + 1) % n] - points[i]).norm();
  return len;
}

std::vector<Point> BoundaryCurve::sample(double tol) const {
  validate();
  int n = static_cast<int>(points.size());
  int n_seg = closed ? n : n - 1;
  std::vector<Point> out;
  out.push_back(points[0]);
  for (int i = 0; i < n_seg; ++i) {
    Point a = points[i], b = points[(i + 1) % n];
    if (kind == CurveKind::POLYLINE) {
      out.push_back(b);
      continue;
    }
    // Two quadratic Bezier pieces per segment, tangent-continuous at the
    // support points and at the interior junction.
    Vec2 ta = tangent_at(i), tb = tangent_at((i + 1) % n);
    double d = (b - a).norm() * 0.25;
    Point c1 = a + d * ta;
    Point c2 = b - d * tb;
    Point mid = (c1 + c2) * 0.5;
    flatten_quadratic(a, c1, mid, tol, out);
    flatten_quadratic(mid, c2, b, tol, out);
  }
  if (closed) out.pop_back();  // last point repeats points[0]
  // Drop near-duplicates introduced by flattening.
  std::vector<Point> dedup;
  for (const Point& p : out)
    if (dedup.empty() || (p - dedup.back()).norm() > 1e-12) dedup.push_back(p);
  if (closed && dedup.size() > 1 && (dedup.front() - dedup.back()).norm() <= 1e-12)
    dedup.pop_back();
  return dedup;
}

// --- SizeField ----------------------------------------------------------------

void SizeField::validate() const {
  if (h_crack <= 0 || h_far <= 0) throw GeometryError("size field: sizes must be positive");
  if (h_crack > h_far) throw GeometryError("size field: h_crack must not exceed h_far");
  if (grading <= 0) throw GeometryError("size field: grading must be positive");
}

// --- Mesh derived data --------------------------------------------------------

struct Mesh::LocatorGrid {
  Rect bbox;
  double cell = 0;
  int nx = 0, ny = 0;
  std::vector<std::vector<int>> cells;
};

void Mesh::finalize() {
  if (vertices.empty() || triangles.empty()) throw GeometryError("finalize: empty mesh");
  if (region.size() != triangles.size()) region.assign(triangles.size(), Region::SOLID);
  if (tri_size.size() != triangles.size()) {
    tri_size.resize(triangles.size());
    for (size_t t = 0; t < triangles.size(); ++t) {
      double s = 0;
      for (int i = 0; i < 3; ++i)
        s = std::max(s, (vertices[triangles[t][(i + 1) % 3]] -
                         vertices[triangles[t][(i + 2) % 3]])
                            .norm());
      tri_size[t] = s;
    }
  }
  bbox = {vertices[0].x, vertices[0].y, vertices[0].x, vertices[0].y};
  for (const Point& p : vertices) {
    bbox.x0 = std::min(bbox.x0, p.x);
    bbox.x1 = std::max(bbox.x1, p.x);
    bbox.y0 = std::min(bbox.y0, p.y);
    bbox.y1 = std::max(bbox.y1, p.y);
  }
  for (size_t t = 0; t < triangles.size(); ++t)
    if (triangle_area(static_cast<int>(t)) <= 0)
      throw GeometryError("finalize: non-positive triangle orientation");

  // Edge table.
  std::map<std::pair<int, int>, int> edge_id;
  edges.clear();
  tri_edges.assign(triangles.size(), {-1, -1, -1});
  for (size_t t = 0; t < triangles.size(); ++t) {
    for (int i = 0; i < 3; ++i) {
      int a = triangles[t][(i + 1) % 3], b = triangles[t][(i + 2) % 3];
      auto k = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
      auto it = edge_id.find(k);
      int id;
      if (it == edge_id.end()) {
        id = static_cast<int>(edges.size());
        edge_id.emplace(k, id);
        edges.push_back({k.first, k.second});
      } else {
        id = it->second;
      }
      tri_edges[t][i] = id;
    }
  }
  edge_tris.assign(edges.size(), {-1, -1});
  for (size_t t = 0; t < triangles.size(); ++t)
    for (int i = 0; i < 3; ++i) {
      auto& et = edge_tris[tri_edges[t][i]];
      if (et[0] < 0)
        et[0] = static_cast<int>(t);
      else if (et[1] < 0)
        et[1] = static_cast<int>(t);
      else
        throw GeometryError("finalize: non-conforming mesh (edge shared by >2 triangles)");
    }

  // Boundary edges: hull edges tagged by rectangle side, FLUID/SOLID interface
  // edges tagged INTERFACE.
  boundary_edges.clear();
  interface_edges.clear();
  double tol = 1e-9 * std::max(bbox.width(), bbox.height());
  for (size_t e = 0; e < edges.size(); ++e) {
    int t0 = edge_tris[e][0], t1 = edge_tris[e][1];
    Point a = vertices[edges[e][0]], b = vertices[edges[e][1]];
    if (t1 < 0) {
      BoundaryTag tag;
      if (std::abs(a.y - bbox.y0) < tol && std::abs(b.y - bbox.y0) < tol)
        tag = BoundaryTag::BOTTOM;
      else if (std::abs(a.x - bbox.x1) < tol && std::abs(b.x - bbox.x1) < tol)
        tag = BoundaryTag::RIGHT;
      else if (std::abs(a.y - bbox.y1) < tol && std::abs(b.y - bbox.y1) < tol)
        tag = BoundaryTag::TOP;
      else
        tag = BoundaryTag::LEFT;
      boundary_edges.push_back({edges[e][0], edges[e][1], tag});
    } else if (region[t0] != region[t1]) {
      boundary_edges.push_back({edges[e][0], edges[e][1], BoundaryTag::INTERFACE});
      interface_edges.push_back(static_cast<int>(e));
    }
  }

  // Locator grid.
  auto grid = std::make_shared<LocatorGrid>();
  grid->bbox = bbox;
  double avg_area = total_area() / static_cast<double>(triangles.size());
  grid->cell = std::max(std::sqrt(avg_area), 1e-9);
  grid->nx = std::max(1, static_cast<int>(std::ceil(bbox.width() / grid->cell)));
  grid->ny = std::max(1, static_cast<int>(std::ceil(bbox.height() / grid->cell)));
  grid->cells.resize(static_cast<size_t>(grid->nx) * grid->ny);
  auto cell_of = [&](double v, double lo, int n) {
    int c = static_cast<int>((v - lo) / grid->cell);
    return std::min(std::max(c, 0), n - 1);
  };
  for (size_t t = 0; t < triangles.size(); ++t) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (int i = 0; i < 3; ++i) {
      Point p = vertices[triangles[t][i]];
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    for (int j = cell_of(y0, bbox.y0, grid->ny); j <= cell_of(y1, bbox.y0, grid->ny); ++j)
      for (int i = cell_of(x0, bbox.x0, grid->nx); i <= cell_of(x1, bbox.x0, grid->nx); ++i)
        grid->cells[static_cast<size_t>(j) * grid->nx + i].push_back(static_cast<int>(t));
  }
  locator_ = grid;
}

double Mesh::min_angle(int t) const {
  double best = std::numeric_limits<double>::max();
  for (int i = 0; i < 3; ++i) {
    Vec2 e1 = vertices[triangles[t][(i + 1) % 3]] - vertices[triangles[t][i]];
    Vec2 e2 = vertices[triangles[t][(i + 2) % 3]] - vertices[triangles[t][i]];
    best = std::min(best, std::atan2(std::abs(e1.cross(e2)), e1.dot(e2)));
  }
  return best * 180.0 / M_PI;
}

double Mesh::area(Region r) const {
  double a = 0;
  for (int t = 0; t < num_triangles(); ++t)
    if (region[t] == r) a += triangle_area(t);
  return a;
}

double Mesh::total_area() const {
  double a = 0;
  for (int t = 0; t < num_triangles(); ++t) a += triangle_area(t);
  return a;
}

std::optional<Mesh::Location> Mesh::try_locate(Point p) const {
  if (!locator_) throw Error("mesh not finalized");
  const LocatorGrid& g = *locator_;
  if (!g.bbox.contains(p, 1e-9 * std::max(g.bbox.width(), g.bbox.height()))) return std::nullopt;
  auto cell_of = [&](double v, double lo, int n) {
    int c = static_cast<int>((v - lo) / g.cell);
    return std::min(std::max(c, 0), n - 1);
  };
  int ci = cell_of(p.x, g.bbox.x0, g.nx);
  int cj = cell_of(p.y, g.bbox.y0, g.ny);
  double tol = 1e-12 * std::max(g.bbox.width(), g.bbox.height());
  // Candidates are stored ascending, so the lowest containing triangle wins.
  for (int ring = 0; ring < std::max(g.nx, g.ny); ++ring) {
    int found = -1;
    std::array<double, 3> found_bary{};
    for (int j = cj - ring; j <= cj + ring; ++j) {
      if (j < 0 || j >= g.ny) continue;
      for (int i = ci - ring; i <= ci + ring; ++i) {
        if (i < 0 || i >= g.nx) continue;
        if (std::max(std::abs(i - ci), std::abs(j - cj)) != ring) continue;
        for (int t : g.cells[static_cast<size_t>(j) * g.nx + i]) {
          const auto& tv = triangles[t];
          double a0 = orient2d(vertices[tv[1]], vertices[tv[2]], p);
          double a1 = orient2d(vertices[tv[2]], vertices[tv[0]], p);
          double a2 = orient2d(vertices[tv[0]], vertices[tv[1]], p);
          double total = a0 + a1 + a2;
          if (total <= 0) continue;
          double b0 = a0 / total, b1 = a1 / total, b2 = a2 / total;
          double btol = tol / std::sqrt(total);
          btol = std::max(btol, 1e-12);
          if (b0 >= -btol && b1 >= -btol && b2 >= -btol) {
            if (found < 0 || t < found) {
              found = t;
              found_bary = {b0, b1, b2};
            }
          }
        }
      }
    }
    if (found >= 0) return Location{found, found_bary};
    if (ring > 1) break;  // points inside the mesh are found by ring 1
  }
  return std::nullopt;
}

Mesh::Location Mesh::locate(Point p) const {
  auto loc = try_locate(p);
  if (!loc) {
    std::ostringstream msg;
    msg << "point (" << p.x << ", " << p.y << ") not found in mesh";
    throw NotFoundError(msg.str());
  }
  return *loc;
}

// --- Generation ----------------------------------------------------------------

Mesh generate_graded_mesh(const Rect& domain, const std::vector<Rect>& slits,
                          const SizeField& size) {
  size.validate();
  for (const Rect& s : slits) {
    if (!domain.contains(s)) throw GeometryError("slit not contained in domain");
    if (std::min(s.width(), s.height()) < size.h_crack)
      throw GeometryError("slit thinner than representable by h_crack");
  }

  std::vector<std::pair<Point, Point>> feature;
  for (const Rect& s : slits) {
    auto rs = rect_segments(s);
    feature.insert(feature.end(), rs.begin(), rs.end());
  }
  // Overlapping slits (e.g. T configurations) are made conforming by splitting
  // segments at mutual intersections.
  feature = split_at_intersections(feature);

  detail::Triangulation tri(domain);
  for (auto& [a, b] : feature) {
    int va = tri.insert_point(a);
    int vb = tri.insert_point(b);
    if (va != vb) tri.add_segment(va, vb);
  }

  std::function<double(Point)> size_fn;
  if (slits.empty()) {
    size_fn = [&](Point) { return size.h_far; };
  } else {
    double cutoff = size.plateau + (size.h_far - size.h_crack) / size.grading + size.h_far;
    auto grid = std::make_shared<SegmentGrid>(feature, domain,
                                              std::max(cutoff / 64.0, size.h_crack));
    auto slits_copy = slits;
    size_fn = [&size, grid, slits_copy, cutoff](Point p) {
      for (const Rect& s : slits_copy)
        if (s.contains(p)) return size.at_distance(0.0);
      return size.at_distance(grid->distance(p, cutoff));
    };
  }
  tri.refine(size_fn, 24.0, 0.2 * size.h_crack);
  tri.smooth(2);

  Mesh m = extract_mesh(tri);
  m.finalize();
  return m;
}

Mesh remesh_fitted(const Rect& domain, const BoundaryCurve& crack_boundary,
                   const SizeField& size) {
  size.validate();
  if (!crack_boundary.closed) throw GeometryError("remesh_fitted requires a closed curve");
  crack_boundary.validate();
  for (const Point& p : crack_boundary.points)
    if (!domain.contains(p))
      throw GeometryError("crack boundary not strictly inside the domain");

  double h = size.h_crack;
  for (int attempt = 0; attempt < 5; ++attempt) {
    double tol_geo = h * h;
    std::vector<Point> poly = crack_boundary.sample(tol_geo);
    // Cap chord lengths at h so interface edges are near the target size.
    std::vector<Point> refined;
    int np = static_cast<int>(poly.size());
    for (int i = 0; i < np; ++i) {
      Point a = poly[i], b = poly[(i + 1) % np];
      refined.push_back(a);
      double len = (b - a).norm();
      int pieces = static_cast<int>(std::ceil(len / h));
      for (int k = 1; k < pieces; ++k)
        refined.push_back(a + (static_cast<double>(k) / pieces) * (b - a));
    }
    poly = refined;
    np = static_cast<int>(poly.size());

    std::vector<std::pair<Point, Point>> feature;
    for (int i = 0; i < np; ++i) feature.emplace_back(poly[i], poly[(i + 1) % np]);

    detail::Triangulation tri(domain);
    std::vector<int> ids(np);
    for (int i = 0; i < np; ++i) ids[i] = tri.insert_point(poly[i]);
    for (int i = 0; i < np; ++i) {
      int va = ids[i], vb = ids[(i + 1) % np];
      if (va != vb) tri.add_segment(va, vb);
    }

    SizeField local = size;
    local.h_crack = h;
    double cutoff = local.plateau + (local.h_far - local.h_crack) / local.grading + local.h_far;
    auto grid =
        std::make_shared<SegmentGrid>(feature, domain, std::max(cutoff / 64.0, h));
    auto size_fn = [&local, grid, cutoff](Point p) {
      return local.at_distance(grid->distance(p, cutoff));
    };
    tri.refine(size_fn, 24.0, 0.2 * h);
    tri.smooth(2);

    Mesh m = extract_mesh(tri);
    for (int t = 0; t < m.num_triangles(); ++t)
      m.region[t] = point_in_polygon(m.centroid(t), poly) ? Region::FLUID : Region::SOLID;

    double min_fluid_angle = 180.0;
    bool has_fluid = false;
    m.finalize();
    for (int t = 0; t < m.num_triangles(); ++t)
      if (m.region[t] == Region::FLUID) {
        has_fluid = true;
        min_fluid_angle = std::min(min_fluid_angle, m.min_angle(t));
      }
    if (!has_fluid) throw GeometryError("remesh_fitted: no FLUID triangles produced");
    if (min_fluid_angle > 10.0 || attempt == 4) {
      if (min_fluid_angle <= 10.0)
        std::cerr << "remesh_fitted: sliver warning, min FLUID angle " << min_fluid_angle
                  << " deg after local size reduction\n";
      return m;
    }
    std::cerr << "remesh_fitted: sliver warning (min FLUID angle " << min_fluid_angle
              << " deg), reducing local size to " << h / 2 << "\n";
    h *= 0.5;
  }
  throw GeometryError("remesh_fitted failed");  // unreachable
}

Mesh refine_uniform(const Mesh& m) {
  Mesh out;
  out.vertices = m.vertices;
  std::vector<int> edge_mid(m.edges.size());
  for (size_t e = 0; e < m.edges.size(); ++e) {
    edge_mid[e] = static_cast<int>(out.vertices.size());
    out.vertices.push_back((m.vertices[m.edges[e][0]] + m.vertices[m.edges[e][1]]) * 0.5);
  }
  for (int t = 0; t < m.num_triangles(); ++t) {
    auto [v0, v1, v2] = m.triangles[t];
    // tri_edges[t][i] is opposite local vertex i.
    int m0 = edge_mid[m.tri_edges[t][0]];  // midpoint of (v1,v2)
    int m1 = edge_mid[m.tri_edges[t][1]];  // midpoint of (v2,v0)
    int m2 = edge_mid[m.tri_edges[t][2]];  // midpoint of (v0,v1)
    out.triangles.push_back({v0, m2, m1});
    out.triangles.push_back({v1, m0, m2});
    out.triangles.push_back({v2, m1, m0});
    out.triangles.push_back({m0, m1, m2});
    for (int k = 0; k < 4; ++k) {
      out.region.push_back(m.region[t]);
      out.tri_size.push_back(m.tri_size[t] * 0.5);
    }
  }
  out.finalize();
  return out;
}

// --- IO -------------------------------------------------------------------------

void write_mesh_vtk(const Mesh& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open " + path + " for writing");
  f.precision(17);
  f << "# vtk DataFile Version 3.0\nmesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  f << "POINTS " << m.num_vertices() << " double\n";
  for (const Point& p : m.vertices) f << p.x << " " << p.y << " 0\n";
  f << "CELLS " << m.num_triangles() << " " << 4 * m.num_triangles() << "\n";
  for (const auto& t : m.triangles) f << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  f << "CELL_TYPES " << m.num_triangles() << "\n";
  for (int t = 0; t < m.num_triangles(); ++t) f << "5\n";
  f << "CELL_DATA " << m.num_triangles() << "\nSCALARS region int 1\nLOOKUP_TABLE default\n";
  for (int t = 0; t < m.num_triangles(); ++t) f << (m.region[t] == Region::FLUID ? 1 : 0) << "\n";
}

void write_mesh_native(const Mesh& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open " + path + " for writing");
  f.precision(17);
  f << "crackflow-mesh 1\n";
  f << "vertices " << m.num_vertices() << "\n";
  for (const Point& p : m.vertices) f << p.x << " " << p.y << "\n";
  f << "triangles " << m.num_triangles() << "\n";
  for (int t = 0; t < m.num_triangles(); ++t)
    f << m.triangles[t][0] << " " << m.triangles[t][1] << " " << m.triangles[t][2] << " "
      << (m.region[t] == Region::FLUID ? 1 : 0) << "\n";
}

Mesh read_mesh_native(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::string magic;
  int version;
  f >> magic >> version;
  if (magic != "crackflow-mesh" || version != 1) throw Error("bad mesh file header: " + path);
  std::string section;
  int n;
  Mesh m;
  f >> section >> n;
  if (section != "vertices") throw Error("bad mesh file: expected vertices");
  m.vertices.resize(n);
  for (auto& p : m.vertices) f >> p.x >> p.y;
  f >> section >> n;
  if (section != "triangles") throw Error("bad mesh file: expected triangles");
  m.triangles.resize(n);
  m.region.resize(n);
  for (int t = 0; t < n; ++t) {
    int r;
    f >> m.triangles[t][0] >> m.triangles[t][1] >> m.triangles[t][2] >> r;
    m.region[t] = r ? Region::FLUID : Region::SOLID;
  }
  if (!f) throw Error("truncated mesh file: " + path);
  m.finalize();
  return m;
}

Mesh read_mesh_vtk(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::string line;
  Mesh m;
  int n_cells = 0;
  while (std::getline(f, line)) {
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    if (word == "POINTS") {
      int n;
      ss >> n;
      m.vertices.resize(n);
      for (auto& p : m.vertices) {
        double z;
        f >> p.x >> p.y >> z;
      }
    } else if (word == "CELLS") {
      ss >> n_cells;
      m.triangles.reserve(n_cells);
      for (int c = 0; c < n_cells; ++c) {
        int k;
        f >> k;
        if (k != 3) throw Error("VTK reader supports triangles only");
        std::array<int, 3> t;
        f >> t[0] >> t[1] >> t[2];
        m.triangles.push_back(t);
      }
    } else if (word == "SCALARS") {
      std::string name;
      ss >> name;
      if (name == "region") {
        std::getline(f, line);  // LOOKUP_TABLE
        m.region.resize(m.triangles.size());
        for (auto& r : m.region) {
          int v;
          f >> v;
          r = v ? Region::FLUID : Region::SOLID;
        }
      }
    }
  }
  if (m.vertices.empty() || m.triangles.empty()) throw Error("no mesh in VTK file: " + path);
  m.finalize();
  return m;
}

}  // namespace crackflow
