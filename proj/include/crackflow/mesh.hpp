#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crackflow/core.hpp"

namespace crackflow {

enum class Region : std::uint8_t { SOLID = 0, FLUID = 1 };

enum class BoundaryTag : std::uint8_t { BOTTOM = 0, RIGHT = 1, TOP = 2, LEFT = 3, INTERFACE = 4 };

enum class CurveKind { POLYLINE, PIECEWISE_QUADRATIC };

/// Closed or open chain of control points. PIECEWISE_QUADRATIC interpolates
/// every control point with a tangent-continuous quadratic Bezier spline.
struct BoundaryCurve {
  std::vector<Point> points;
  CurveKind kind = CurveKind::POLYLINE;
  bool closed = true;

  /// Flatten to a polyline whose chords deviate from the curve by at most tol.
  /// Control points are always included in the output.
  std::vector<Point> sample(double tol) const;

  /// Curve tangent direction at control point i (unit vector).
  Vec2 tangent_at(int i) const;

  double polyline_length() const;
  void validate() const;
};

/// Target element size as a function of distance to the geometric feature
/// (slit or crack boundary). Sizes transition from h_crack at the feature to
/// h_far with slope `grading`; `plateau` keeps a band at h_crack.
struct SizeField {
  double h_crack = 0.0;
  double h_far = 0.0;
  double grading = 0.7;
  double plateau = 0.0;

  double at_distance(double d) const {
    double d_eff = d > plateau ? d - plateau : 0.0;
    double h = h_crack + grading * d_eff;
    return h < h_far ? h : h_far;
  }
  void validate() const;
};

struct BoundaryEdge {
  int a = -1;
  int b = -1;
  BoundaryTag tag = BoundaryTag::BOTTOM;
};

/// Conforming oriented triangle mesh. Immutable after finalize(); all derived
/// connectivity (edge table, adjacency, locator grid) is built there.
struct Mesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;  // ccw vertex indices
  std::vector<Region> region;                 // per triangle
  std::vector<double> tri_size;               // longest edge per triangle
  std::vector<BoundaryEdge> boundary_edges;   // outer boundary + INTERFACE

  // Derived (finalize()).
  std::vector<std::array<int, 2>> edges;      // unique edges, a < b
  std::vector<std::array<int, 3>> tri_edges;  // triangle -> edge ids, opposite local vertex
  std::vector<std::array<int, 2>> edge_tris;  // edge -> incident triangles (-1 none)
  std::vector<int> interface_edges;           // edge ids on the FLUID/SOLID interface
  Rect bbox;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  double triangle_area(int t) const {
    auto& tri = triangles[t];
    return 0.5 * orient2d(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
  }
  Point centroid(int t) const {
    auto& tri = triangles[t];
    return (vertices[tri[0]] + vertices[tri[1]] + vertices[tri[2]]) / 3.0;
  }
  double min_angle(int t) const;
  double area(Region r) const;
  double total_area() const;

  /// Checks orientation/conformity and builds the derived tables.
  void finalize();

  struct Location {
    int tri = -1;
    std::array<double, 3> bary{};
  };
  /// Containing triangle and barycentric coordinates; lowest triangle index
  /// wins on edges/vertices. Throws NotFoundError outside the mesh.
  Location locate(Point p) const;
  std::optional<Location> try_locate(Point p) const;

 private:
  struct LocatorGrid;
  std::shared_ptr<const LocatorGrid> locator_;
};

/// Graded unstructured mesh of an axis-aligned rectangle resolving the given
/// slit rectangles with mesh edges. Rejects slits thinner than h_crack.
Mesh generate_graded_mesh(const Rect& domain, const std::vector<Rect>& slits,
                          const SizeField& size);

/// Two-region mesh fitted to a closed crack boundary: FLUID inside the curve,
/// SOLID outside, the curve approximated by INTERFACE edges. Local sizes are
/// reduced near the curve until the minimum FLUID angle exceeds 10 degrees.
Mesh remesh_fitted(const Rect& domain, const BoundaryCurve& crack_boundary,
                   const SizeField& size);

/// Uniform refinement by edge bisection (1 triangle -> 4). Preserves region
/// tags, boundary tags and conformity.
Mesh refine_uniform(const Mesh& m);

void write_mesh_vtk(const Mesh& m, const std::string& path);
void write_mesh_native(const Mesh& m, const std::string& path);
Mesh read_mesh_native(const std::string& path);
Mesh read_mesh_vtk(const std::string& path);

}  // namespace crackflow
