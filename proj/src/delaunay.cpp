#include "delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace crackflow::detail {

namespace {
constexpr int kMaxWalkSteps = 200000;
constexpr int kMaxPoints = 4000000;
}  // namespace

Triangulation::Triangulation(const Rect& domain) : domain_(domain) {
  double diam = std::hypot(domain.width(), domain.height());
  merge_tol2_ = (1e-12 * diam) * (1e-12 * diam);
  points_ = {{domain.x0, domain.y0}, {domain.x1, domain.y0}, {domain.x1, domain.y1},
             {domain.x0, domain.y1}};
  tris_.push_back({{0, 1, 2}, {-1, 1, -1}, true});
  tris_.push_back({{0, 2, 3}, {-1, -1, 0}, true});
  vertex_tri_ = {0, 0, 1, 1};
  vertex_fixed_ = {true, true, true, true};
  add_segment(0, 1);
  add_segment(1, 2);
  add_segment(2, 3);
  add_segment(3, 0);
}

void Triangulation::add_segment(int a, int b) {
  if (a == b) throw GeometryError("degenerate constraint segment");
  segments_.insert(key(a, b));
  vertex_fixed_[a] = true;
  vertex_fixed_[b] = true;
}

int Triangulation::locate(Point p, int hint) const {
  int t = (hint >= 0 && hint < static_cast<int>(tris_.size()) && tris_[hint].alive)
              ? hint
              : last_tri_;
  if (t < 0 || t >= static_cast<int>(tris_.size()) || !tris_[t].alive) {
    t = -1;
    for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i)
      if (tris_[i].alive) {
        t = i;
        break;
      }
    if (t < 0) throw Error("locate: no alive triangles");
  }
  int steps = 0;
  int prev = -1;
  while (steps++ < kMaxWalkSteps) {
    const Tri& tri = tris_[t];
    int next = -1;
    int fallback = -1;
    for (int i = 0; i < 3; ++i) {
      int u = tri.v[(i + 1) % 3], w = tri.v[(i + 2) % 3];
      if (orient2d(points_[u], points_[w], p) < 0) {
        int nb = tri.nb[i];
        if (nb >= 0) {
          if (nb != prev) {
            next = nb;
            break;
          }
          fallback = nb;
        }
      }
    }
    if (next < 0 && fallback >= 0) next = fallback;
    if (next < 0) {
      last_tri_ = t;
      return t;
    }
    prev = t;
    t = next;
  }
  for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
    if (!tris_[i].alive) continue;
    const Tri& tri = tris_[i];
    bool inside = true;
    for (int k = 0; k < 3 && inside; ++k)
      inside = orient2d(points_[tri.v[(k + 1) % 3]], points_[tri.v[(k + 2) % 3]], p) >= 0;
    if (inside) {
      last_tri_ = i;
      return i;
    }
  }
  throw GeometryError("point location failed: point outside triangulation");
}

int Triangulation::insert_point(Point p) {
  if (!domain_.contains(p, 1e-12)) throw GeometryError("insert_point: point outside domain");
  int t = locate(p, last_tri_);
  for (int i = 0; i < 3; ++i) {
    int v = tris_[t].v[i];
    if ((points_[v] - p).squared_norm() <= merge_tol2_) return v;
  }
  if (static_cast<int>(points_.size()) >= kMaxPoints)
    throw Error("mesh generation exceeded the point budget");
  // A point landing exactly on a constrained edge replaces the constraint by
  // its two halves so the insertion cavity may open across it.
  int vnew = static_cast<int>(points_.size());
  {
    const Tri& tri = tris_[t];
    for (int i = 0; i < 3; ++i) {
      int u = tri.v[(i + 1) % 3], w = tri.v[(i + 2) % 3];
      if (is_constrained(u, w) && orient2d(points_[u], points_[w], p) == 0) {
        double s = (p - points_[u]).dot(points_[w] - points_[u]) /
                   (points_[w] - points_[u]).squared_norm();
        if (s > 0.0 && s < 1.0) {
          segments_.erase(key(u, w));
          segments_.insert(key(u, vnew));
          segments_.insert(key(vnew, w));
        }
      }
    }
  }
  points_.push_back(p);
  vertex_tri_.push_back(-1);
  vertex_fixed_.push_back(false);
  insert_in_cavity(p, t);
  return vnew;
}

int Triangulation::insert_in_cavity(Point p, int seed_tri) {
  int vnew = static_cast<int>(points_.size()) - 1;
  std::vector<int> cavity;
  std::vector<std::pair<int, int>> boundary;  // (tri, edge index), cavity on the left
  std::deque<int> work{seed_tri};
  std::unordered_map<int, bool> state;  // tri -> in cavity
  state[seed_tri] = true;
  while (!work.empty()) {
    int t = work.front();
    work.pop_front();
    cavity.push_back(t);
    const Tri& tri = tris_[t];
    for (int i = 0; i < 3; ++i) {
      int nb = tri.nb[i];
      int u = tri.v[(i + 1) % 3], w = tri.v[(i + 2) % 3];
      if (nb < 0 || is_constrained(u, w)) {
        boundary.emplace_back(t, i);
        continue;
      }
      auto it = state.find(nb);
      if (it != state.end()) {
        if (!it->second) boundary.emplace_back(t, i);
        continue;
      }
      const Tri& nt = tris_[nb];
      bool open = incircle(points_[nt.v[0]], points_[nt.v[1]], points_[nt.v[2]], p) > 0;
      state[nb] = open;
      if (open)
        work.push_back(nb);
      else
        boundary.emplace_back(t, i);
    }
  }
  // Fan p to all non-degenerate boundary edges. Directed boundary edges (u,w)
  // have the cavity on the left, so (u,w,p) is ccw.
  std::unordered_map<int, int> tri_of_start;  // u -> fresh triangle for edge (u,w)
  std::unordered_map<int, int> tri_of_end;    // w -> fresh triangle for edge (u,w)
  std::vector<int> fresh;
  for (auto [t, i] : boundary) {
    int u = tris_[t].v[(i + 1) % 3], w = tris_[t].v[(i + 2) % 3];
    if (orient2d(points_[u], points_[w], p) <= 0) continue;  // p lies on this edge
    int id = static_cast<int>(tris_.size());
    int outer = tris_[t].nb[i];
    tris_.push_back({{u, w, vnew}, {-1, -1, outer}, true});
    fresh.push_back(id);
    tri_of_start[u] = id;
    tri_of_end[w] = id;
    if (outer >= 0)
      for (int k = 0; k < 3; ++k)
        if (tris_[outer].nb[k] == t) tris_[outer].nb[k] = id;
  }
  if (fresh.empty()) throw Error("internal: empty insertion fan");
  for (int id : fresh) {
    Tri& tri = tris_[id];
    int u = tri.v[0], w = tri.v[1];
    // Edge opposite u is the spoke (w, vnew): neighbor is the fan triangle
    // whose boundary edge starts at w. Edge opposite w is (vnew, u).
    auto s = tri_of_start.find(w);
    if (s != tri_of_start.end()) tri.nb[0] = s->second;
    auto e = tri_of_end.find(u);
    if (e != tri_of_end.end()) tri.nb[1] = e->second;
    vertex_tri_[u] = id;
    vertex_tri_[w] = id;
  }
  vertex_tri_[vnew] = fresh.front();
  for (int t : cavity) tris_[t].alive = false;
  last_tri_ = fresh.front();
  return vnew;
}

bool Triangulation::edge_exists(int a, int b, int* tri_out, int* edge_out) const {
  int t0 = vertex_tri_[a];
  if (t0 < 0 || !tris_[t0].alive ||
      (tris_[t0].v[0] != a && tris_[t0].v[1] != a && tris_[t0].v[2] != a)) {
    t0 = -1;
    for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i)
      if (tris_[i].alive &&
          (tris_[i].v[0] == a || tris_[i].v[1] == a || tris_[i].v[2] == a)) {
        t0 = i;
        break;
      }
    if (t0 < 0) return false;
    const_cast<Triangulation*>(this)->vertex_tri_[a] = t0;
  }
  for (int dir = 0; dir < 2; ++dir) {
    int t = t0;
    int guard = 0;
    while (t >= 0 && guard++ < 1000000) {
      const Tri& tri = tris_[t];
      int li = -1;
      for (int i = 0; i < 3; ++i)
        if (tri.v[i] == a) li = i;
      if (li < 0) break;
      for (int i = 0; i < 3; ++i) {
        int u = tri.v[(i + 1) % 3], w = tri.v[(i + 2) % 3];
        if ((u == a && w == b) || (u == b && w == a)) {
          if (tri_out) *tri_out = t;
          if (edge_out) *edge_out = i;
          return true;
        }
      }
      t = tri.nb[(li + 1 + dir) % 3];
      if (t == t0) break;
    }
  }
  return false;
}

bool Triangulation::encroached(int a, int b) const {
  int t, e;
  if (!edge_exists(a, b, &t, &e)) return true;  // missing subsegment: split it
  Point m = (points_[a] + points_[b]) * 0.5;
  double r2 = (points_[a] - m).squared_norm();
  auto apex_inside = [&](int tri_id, int apex) {
    (void)tri_id;
    return (points_[apex] - m).squared_norm() < r2 * (1.0 - 1e-10);
  };
  if (apex_inside(t, tris_[t].v[e])) return true;
  int nb = tris_[t].nb[e];
  if (nb >= 0)
    for (int i = 0; i < 3; ++i) {
      int u = tris_[nb].v[(i + 1) % 3], w = tris_[nb].v[(i + 2) % 3];
      if ((u == a && w == b) || (u == b && w == a)) return apex_inside(nb, tris_[nb].v[i]);
    }
  return false;
}

// --- topological primitives -------------------------------------------------

namespace {
int local_index(const std::array<int, 3>& v, int vert) {
  for (int i = 0; i < 3; ++i)
    if (v[i] == vert) return i;
  return -1;
}
}  // namespace

int Triangulation::find_neighbor_edge(int t, int nb) const {
  for (int k = 0; k < 3; ++k)
    if (tris_[nb].nb[k] == t) return k;
  return -1;
}

void Triangulation::legalize(int t, int i, int depth) {
  if (depth > 256) return;
  Tri& tri = tris_[t];
  if (!tri.alive) return;
  int nb = tri.nb[i];
  if (nb < 0) return;
  int u = tri.v[(i + 1) % 3], w = tri.v[(i + 2) % 3];
  if (is_constrained(u, w)) return;
  int j = find_neighbor_edge(t, nb);
  if (j < 0) return;
  int p = tri.v[i];
  int q = tris_[nb].v[j];
  if (incircle(points_[tri.v[0]], points_[tri.v[1]], points_[tri.v[2]], points_[q]) <= 0)
    return;
  // Flip the shared edge (u,w) to (p,q). Quad p,u,q,w is ccw.
  if (orient2d(points_[p], points_[u], points_[q]) <= 0 ||
      orient2d(points_[p], points_[q], points_[w]) <= 0)
    return;  // non-convex quad; flip would invert a triangle
  int nb_pu = tri.nb[(i + 2) % 3];   // across (p,u)
  int nb_wp = tri.nb[(i + 1) % 3];   // across (w,p)
  int nb_uq = tris_[nb].nb[(j + 1) % 3];  // across (u,q)
  int nb_qw = tris_[nb].nb[(j + 2) % 3];  // across (q,w)
  tris_[t] = {{p, u, q}, {nb_uq, nb, nb_pu}, true};
  tris_[nb] = {{p, q, w}, {nb_qw, nb_wp, t}, true};
  auto repoint = [&](int outer, int from, int to) {
    if (outer < 0) return;
    for (int k = 0; k < 3; ++k)
      if (tris_[outer].nb[k] == from) tris_[outer].nb[k] = to;
  };
  repoint(nb_uq, nb, t);
  repoint(nb_wp, t, nb);
  vertex_tri_[p] = t;
  vertex_tri_[u] = t;
  vertex_tri_[q] = t;
  vertex_tri_[w] = nb;
  legalize(t, 0, depth + 1);   // new edge (u,q)
  legalize(nb, 0, depth + 1);  // new edge (q,w)
}

int Triangulation::split_edge_exact(int t, int e) {
  int u = tris_[t].v[(e + 1) % 3], w = tris_[t].v[(e + 2) % 3];
  int a1 = tris_[t].v[e];
  Point m = (points_[u] + points_[w]) * 0.5;
  if (static_cast<int>(points_.size()) >= kMaxPoints)
    throw Error("mesh generation exceeded the point budget");
  int vm = static_cast<int>(points_.size());
  points_.push_back(m);
  vertex_tri_.push_back(-1);
  vertex_fixed_.push_back(false);

  int t2 = tris_[t].nb[e];
  int nb_a1u = tris_[t].nb[(e + 2) % 3];  // across (a1,u)
  int nb_wa1 = tris_[t].nb[(e + 1) % 3];  // across (w,a1)

  int T1 = static_cast<int>(tris_.size());
  int T2 = T1 + 1;
  // (a1,u,m) and (a1,m,w); both ccw since (a1,u,w) is.
  tris_.push_back({{a1, u, m}, {-1, T2, nb_a1u}, true});
  tris_.push_back({{a1, m, w}, {-1, nb_wa1, T1}, true});
  auto repoint = [&](int outer, int from, int to) {
    if (outer < 0) return;
    for (int k = 0; k < 3; ++k)
      if (tris_[outer].nb[k] == from) tris_[outer].nb[k] = to;
  };
  repoint(nb_a1u, t, T1);
  repoint(nb_wa1, t, T2);

  int T3 = -1, T4 = -1;
  if (t2 >= 0) {
    int j = find_neighbor_edge(t, t2);
    int a2 = tris_[t2].v[j];
    int nb_a2w = tris_[t2].nb[(j + 2) % 3];  // across (a2,w)
    int nb_ua2 = tris_[t2].nb[(j + 1) % 3];  // across (u,a2)
    T3 = static_cast<int>(tris_.size());
    T4 = T3 + 1;
    tris_.push_back({{a2, w, m}, {T2, T4, nb_a2w}, true});
    tris_.push_back({{a2, m, u}, {T1, nb_ua2, T3}, true});
    repoint(nb_a2w, t2, T3);
    repoint(nb_ua2, t2, T4);
    tris_[T1].nb[0] = T4;  // across (u,m)
    tris_[T2].nb[0] = T3;  // across (m,w)
    tris_[t2].alive = false;
    vertex_tri_[a2] = T3;
  }
  tris_[t].alive = false;
  vertex_tri_[a1] = T1;
  vertex_tri_[u] = T1;
  vertex_tri_[w] = T2;
  vertex_tri_[vm] = T1;
  // Restore the Delaunay property around the split.
  legalize(T1, 2, 0);
  legalize(T2, 1, 0);
  if (T3 >= 0) {
    legalize(T3, 2, 0);
    legalize(T4, 1, 0);
  }
  last_tri_ = T1;
  return vm;
}

void Triangulation::split_segment(int a, int b, std::vector<std::pair<int, int>>& seg_queue) {
  segments_.erase(key(a, b));
  int vm;
  int t, e;
  if (edge_exists(a, b, &t, &e)) {
    vm = split_edge_exact(t, e);
  } else {
    vm = insert_point((points_[a] + points_[b]) * 0.5);
  }
  vertex_fixed_[vm] = true;
  if (vm != a && vm != b) {
    segments_.insert(key(a, vm));
    segments_.insert(key(vm, b));
    seg_queue.emplace_back(a, vm);
    seg_queue.emplace_back(vm, b);
  } else {
    segments_.insert(key(a, b));
  }
}

double Triangulation::shortest_edge(const Tri& t) const {
  double s = std::numeric_limits<double>::max();
  for (int i = 0; i < 3; ++i)
    s = std::min(s, (points_[t.v[(i + 1) % 3]] - points_[t.v[(i + 2) % 3]]).norm());
  return s;
}

Point Triangulation::circumcenter(const Tri& t) const {
  Point a = points_[t.v[0]], b = points_[t.v[1]], c = points_[t.v[2]];
  double d = 2.0 * orient2d(a, b, c);
  if (d == 0.0) return (a + b + c) / 3.0;
  double a2 = a.squared_norm(), b2 = b.squared_norm(), c2 = c.squared_norm();
  double ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
  double uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
  return {ux, uy};
}

double Triangulation::circumradius(const Tri& t) const {
  return (circumcenter(t) - points_[t.v[0]]).norm();
}

double Triangulation::min_angle_rad(const Tri& t) const {
  double best = std::numeric_limits<double>::max();
  for (int i = 0; i < 3; ++i) {
    Vec2 e1 = points_[t.v[(i + 1) % 3]] - points_[t.v[i]];
    Vec2 e2 = points_[t.v[(i + 2) % 3]] - points_[t.v[i]];
    double ang = std::atan2(std::abs(e1.cross(e2)), e1.dot(e2));
    best = std::min(best, ang);
  }
  return best;
}

void Triangulation::queue_encroached_near(int v, std::vector<std::pair<int, int>>& seg_queue) {
  // Check constrained edges in the 2-ring of v for encroachment by v.
  Point pv = points_[v];
  std::unordered_set<int> visited;
  std::deque<int> work;
  int t0 = vertex_tri_[v];
  if (t0 < 0 || !tris_[t0].alive) return;
  work.push_back(t0);
  visited.insert(t0);
  int depth_budget = 64;
  while (!work.empty() && depth_budget-- > 0) {
    int t = work.front();
    work.pop_front();
    const Tri& tri = tris_[t];
    for (int i = 0; i < 3; ++i) {
      int u = tri.v[(i + 1) % 3], w = tri.v[(i + 2) % 3];
      if (is_constrained(u, w)) {
        Point m = (points_[u] + points_[w]) * 0.5;
        double r2 = (points_[u] - m).squared_norm();
        if ((pv - m).squared_norm() < r2 * (1.0 - 1e-10)) seg_queue.emplace_back(u, w);
      }
      int nb = tri.nb[i];
      if (nb >= 0 && !visited.count(nb) &&
          (local_index(tris_[nb].v, v) >= 0 || local_index(tri.v, v) >= 0)) {
        visited.insert(nb);
        work.push_back(nb);
      }
    }
  }
}

void Triangulation::refine(const std::function<double(Point)>& size, double min_angle_deg,
                           double min_edge_floor) {
  const double min_angle = min_angle_deg * M_PI / 180.0;
  std::vector<std::pair<int, int>> seg_queue(segments_.begin(), segments_.end());

  auto settle_segments = [&]() {
    while (!seg_queue.empty()) {
      auto [a, b] = seg_queue.back();
      seg_queue.pop_back();
      if (!segments_.count(key(a, b))) continue;
      if ((points_[a] - points_[b]).norm() <= min_edge_floor) continue;
      if (encroached(a, b)) split_segment(a, b, seg_queue);
    }
  };

  auto tip_wedge = [&](const Tri& t) {
    int n_constrained = 0;
    for (int i = 0; i < 3; ++i)
      if (is_constrained(t.v[(i + 1) % 3], t.v[(i + 2) % 3])) ++n_constrained;
    return n_constrained >= 2;
  };

  settle_segments();
  for (int pass = 0; pass < 200; ++pass) {
    int n_split = 0;
    int n_tris = static_cast<int>(tris_.size());
    for (int t = 0; t < n_tris; ++t) {
      if (!tris_[t].alive) continue;
      Point c = (points_[tris_[t].v[0]] + points_[tris_[t].v[1]] + points_[tris_[t].v[2]]) / 3.0;
      double r = circumradius(tris_[t]);
      bool too_big = r > 0.62 * size(c) && 2.0 * r > min_edge_floor;
      bool bad_angle = !too_big && min_angle_rad(tris_[t]) < min_angle &&
                       !tip_wedge(tris_[t]) && shortest_edge(tris_[t]) > min_edge_floor;
      if (!too_big && !bad_angle) continue;
      Point cc = circumcenter(tris_[t]);
      cc.x = std::clamp(cc.x, domain_.x0, domain_.x1);
      cc.y = std::clamp(cc.y, domain_.y0, domain_.y1);
      // Ruppert: a circumcenter encroaching a subsegment splits the segment
      // instead of being inserted.
      bool blocked = false;
      for (int i = 0; i < 3; ++i) {
        int u = tris_[t].v[(i + 1) % 3], w = tris_[t].v[(i + 2) % 3];
        if (!is_constrained(u, w)) continue;
        Point m = (points_[u] + points_[w]) * 0.5;
        double r2 = (points_[u] - m).squared_norm();
        if ((cc - m).squared_norm() < r2 && (points_[u] - points_[w]).norm() > min_edge_floor) {
          seg_queue.emplace_back(u, w);
          blocked = true;
        }
      }
      if (blocked) {
        settle_segments();
        ++n_split;
        continue;
      }
      int before = num_vertices();
      int v;
      try {
        v = insert_point(cc);
      } catch (const GeometryError&) {
        continue;  // clamped circumcenter landed outside; skip
      }
      if (v < before) continue;  // merged with an existing vertex
      queue_encroached_near(v, seg_queue);
      settle_segments();
      ++n_split;
    }
    if (n_split == 0) break;
  }
}

void Triangulation::smooth(int sweeps) {
  for (int s = 0; s < sweeps; ++s) {
    std::vector<std::vector<int>> star(points_.size());
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (!tris_[t].alive) continue;
      for (int i = 0; i < 3; ++i) star[tris_[t].v[i]].push_back(t);
    }
    for (int v = 0; v < static_cast<int>(points_.size()); ++v) {
      if (vertex_fixed_[v] || star[v].empty()) continue;
      Vec2 sum{0, 0};
      int count = 0;
      std::unordered_set<int> seen;
      for (int t : star[v])
        for (int i = 0; i < 3; ++i) {
          int u = tris_[t].v[i];
          if (u != v && seen.insert(u).second) {
            sum += points_[u];
            ++count;
          }
        }
      if (count == 0) continue;
      Point candidate = sum / static_cast<double>(count);
      Point old = points_[v];
      points_[v] = candidate;
      for (int t : star[v]) {
        const Tri& tri = tris_[t];
        if (orient2d(points_[tri.v[0]], points_[tri.v[1]], points_[tri.v[2]]) <= 0) {
          points_[v] = old;
          break;
        }
      }
    }
  }
}

std::vector<std::array<int, 3>> Triangulation::extract_triangles() const {
  std::vector<std::array<int, 3>> out;
  out.reserve(tris_.size());
  for (const Tri& t : tris_)
    if (t.alive) out.push_back(t.v);
  return out;
}

}  // namespace crackflow::detail
