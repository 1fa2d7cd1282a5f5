#pragma once

// Incremental Delaunay triangulation of an axis-aligned rectangle with
// conforming constraint segments and Ruppert-style size/quality refinement.
// Internal to the mesh module.

#include <array>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "crackflow/core.hpp"

namespace crackflow::detail {

struct PairHash {
  size_t operator()(const std::pair<int, int>& p) const {
    return std::hash<std::uint64_t>()((static_cast<std::uint64_t>(p.first) << 32) ^
                                      static_cast<std::uint64_t>(p.second));
  }
};

class Triangulation {
 public:
  explicit Triangulation(const Rect& domain);

  // Insert a point; returns its vertex index. Points must lie inside the
  // rectangle or on its boundary. Coincident points are merged.
  int insert_point(Point p);

  // Register [a,b] (vertex indices) as a constraint. The segment is made
  // conforming later, during refine(), by midpoint splitting.
  void add_segment(int a, int b);

  // Ruppert-style refinement: split encroached/missing subsegments, then
  // insert circumcenters of triangles that are too large for `size` or have
  // min angle below min_angle_deg.
  void refine(const std::function<double(Point)>& size, double min_angle_deg,
              double min_edge_floor);

  // Laplacian smoothing of unconstrained vertices (does not restore the
  // Delaunay property; used as a final uniformity pass).
  void smooth(int sweeps);

  int num_vertices() const { return static_cast<int>(points_.size()); }
  const std::vector<Point>& points() const { return points_; }

  // Alive triangles as ccw vertex triples.
  std::vector<std::array<int, 3>> extract_triangles() const;

  bool is_constrained(int a, int b) const {
    return segments_.count(key(a, b)) > 0;
  }
  const std::unordered_set<std::pair<int, int>, PairHash>& segments() const { return segments_; }

 private:
  struct Tri {
    std::array<int, 3> v;
    std::array<int, 3> nb;  // neighbor opposite v[i]; -1 on hull
    bool alive = true;
  };

  static std::pair<int, int> key(int a, int b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  }

  int locate(Point p, int hint) const;          // triangle containing p
  int insert_in_cavity(Point p, int seed_tri);  // Bowyer-Watson core
  bool edge_exists(int a, int b, int* tri_out = nullptr, int* edge_out = nullptr) const;
  bool encroached(int a, int b) const;
  void split_segment(int a, int b, std::vector<std::pair<int, int>>& seg_queue);
  int split_edge_exact(int t, int e);  // midpoint split of an existing edge
  void legalize(int t, int i, int depth);
  int find_neighbor_edge(int t, int nb) const;
  void queue_encroached_near(int v, std::vector<std::pair<int, int>>& seg_queue);
  double shortest_edge(const Tri& t) const;
  Point circumcenter(const Tri& t) const;
  double circumradius(const Tri& t) const;
  double min_angle_rad(const Tri& t) const;

  std::vector<Point> points_;
  std::vector<Tri> tris_;
  std::vector<int> vertex_tri_;  // some alive triangle per vertex
  std::unordered_set<std::pair<int, int>, PairHash> segments_;
  std::vector<bool> vertex_fixed_;  // segment endpoints; never smoothed
  Rect domain_;
  double merge_tol2_ = 0.0;
  mutable int last_tri_ = 0;
};

}  // namespace crackflow::detail
