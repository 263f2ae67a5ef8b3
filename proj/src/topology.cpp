#include "npc/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace npc {

namespace {

using rational = boost::multiprecision::cpp_rational;

// Static filter constants from Shewchuk's robust predicates: if the double
// determinant clears the error bound its sign is certain, otherwise the
// computation is repeated in exact rational arithmetic.
constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
constexpr double kCcwErrBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIccErrBound = (10.0 + 96.0 * kEps) * kEps;

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

int orient_exact(double ax, double ay, double bx, double by, double cx,
                 double cy) {
  const rational det = (rational(ax) - rational(cx)) * (rational(by) - rational(cy)) -
                       (rational(ay) - rational(cy)) * (rational(bx) - rational(cx));
  return det.sign();
}

int incircle_exact(double ax, double ay, double bx, double by, double cx,
                   double cy, double dx, double dy) {
  const rational adx = rational(ax) - rational(dx), ady = rational(ay) - rational(dy);
  const rational bdx = rational(bx) - rational(dx), bdy = rational(by) - rational(dy);
  const rational cdx = rational(cx) - rational(dx), cdy = rational(cy) - rational(dy);
  const rational det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) +
                       (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy) +
                       (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
  return det.sign();
}

}  // namespace

int orient_sign(double ax, double ay, double bx, double by, double cx,
                double cy) {
  const double detleft = (ax - cx) * (by - cy);
  const double detright = (ay - cy) * (bx - cx);
  const double det = detleft - detright;
  double detsum = 0.0;
  if (detleft > 0.0) {
    if (detright <= 0.0) return sign_of(det);
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return sign_of(det);
    detsum = -detleft - detright;
  } else {
    return sign_of(det);
  }
  if (std::fabs(det) > kCcwErrBound * detsum) return sign_of(det);
  return orient_exact(ax, ay, bx, by, cx, cy);
}

int incircle_sign(double ax, double ay, double bx, double by, double cx,
                  double cy, double dx, double dy) {
  const double adx = ax - dx, ady = ay - dy;
  const double bdx = bx - dx, bdy = by - dy;
  const double cdx = cx - dx, cdy = cy - dy;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                     clift * (adxbdy - bdxady);
  const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                           (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                           (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
  if (std::fabs(det) > kIccErrBound * permanent) return sign_of(det);
  return incircle_exact(ax, ay, bx, by, cx, cy, dx, dy);
}

namespace {

constexpr int kGhost = -1;
constexpr int kNone = -1;

struct Tri {
  std::array<int, 3> v;  // vertex ids; at most one kGhost
  std::array<int, 3> n;  // neighbor opposite v[i]
  bool alive = true;

  int index_of_ghost() const {
    for (int i = 0; i < 3; ++i)
      if (v[i] == kGhost) return i;
    return kNone;
  }
  int index_of_neighbor(int t) const {
    for (int i = 0; i < 3; ++i)
      if (n[i] == t) return i;
    return kNone;
  }
};

class Triangulator {
 public:
  explicit Triangulator(std::vector<std::array<double, 2>> pts)
      : pts_(std::move(pts)) {}

  void run() {
    const std::size_t u = pts_.size();
    std::vector<std::size_t> order(u);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(0x2545F4914F6CDD1Dull);  // fixed: runs are reproducible
    std::shuffle(order.begin(), order.end(), rng);

    // Seed triangle: first two points plus the first non-collinear third.
    const std::size_t a = order[0], b = order[1];
    std::size_t c = u;
    std::size_t c_pos = 0;
    for (std::size_t k = 2; k < u; ++k) {
      if (orient(order[k], a, b) != 0) {
        c = order[k];
        c_pos = k;
        break;
      }
    }
    if (c == u) throw DataError("delaunay: all points are collinear");
    std::swap(order[2], order[c_pos]);

    make_seed(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c));
    for (std::size_t k = 3; k < u; ++k) insert(static_cast<int>(order[k]));
  }

  std::vector<std::array<std::size_t, 3>> real_triangles() const {
    std::vector<std::array<std::size_t, 3>> out;
    for (const Tri& t : tris_) {
      if (!t.alive || t.index_of_ghost() != kNone) continue;
      out.push_back({static_cast<std::size_t>(t.v[0]),
                     static_cast<std::size_t>(t.v[1]),
                     static_cast<std::size_t>(t.v[2])});
    }
    return out;
  }

 private:
  int orient(int p, int q, int r) const {
    return orient_sign(pts_[p][0], pts_[p][1], pts_[q][0], pts_[q][1],
                       pts_[r][0], pts_[r][1]);
  }

  // Open-circumdisk membership. For a ghost triangle the disk is the open
  // half plane left of its real edge, plus the open edge segment itself.
  bool in_disk(const Tri& t, int p) const {
    const int g = t.index_of_ghost();
    if (g == kNone) {
      return incircle_sign(pts_[t.v[0]][0], pts_[t.v[0]][1], pts_[t.v[1]][0],
                           pts_[t.v[1]][1], pts_[t.v[2]][0], pts_[t.v[2]][1],
                           pts_[p][0], pts_[p][1]) > 0;
    }
    const int x = t.v[(g + 1) % 3], y = t.v[(g + 2) % 3];
    const int o = orient(x, y, p);
    if (o > 0) return true;
    if (o < 0) return false;
    // Collinear: inside iff strictly between x and y on the dominant axis.
    const int axis =
        std::fabs(pts_[y][0] - pts_[x][0]) >= std::fabs(pts_[y][1] - pts_[x][1])
            ? 0
            : 1;
    const double lo = std::min(pts_[x][axis], pts_[y][axis]);
    const double hi = std::max(pts_[x][axis], pts_[y][axis]);
    return lo < pts_[p][axis] && pts_[p][axis] < hi;
  }

  void make_seed(int a, int b, int c) {
    if (orient(a, b, c) < 0) std::swap(b, c);
    // Real seed 0 plus one ghost per hull edge, exterior left of the
    // ghost's real edge.
    tris_.push_back({{a, b, c}, {kNone, kNone, kNone}, true});  // 0
    tris_.push_back({{b, a, kGhost}, {kNone, kNone, kNone}, true});
    tris_.push_back({{c, b, kGhost}, {kNone, kNone, kNone}, true});
    tris_.push_back({{a, c, kGhost}, {kNone, kNone, kNone}, true});
    tris_[0].n = {2, 3, 1};
    tris_[1].n = {3, 2, 0};  // opposite b -> ghost(a,c), opposite a -> ghost(c,b)
    tris_[2].n = {1, 3, 0};
    tris_[3].n = {2, 1, 0};
    recent_ = 0;
  }

  int locate(int p) {
    int t = recent_;
    std::size_t steps = 0;
    const std::size_t cap = 4 * tris_.size() + 64;
    std::uint64_t walk_state = 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(p);
    while (steps++ < cap) {
      const Tri& tri = tris_[t];
      if (in_disk(tri, p)) return t;
      const int g = tri.index_of_ghost();
      if (g != kNone) {
        t = tri.n[g];  // step back to the real side
        continue;
      }
      // Visibility walk: cross an edge that has p strictly on its far side.
      // The probe order is pseudo-random to avoid degenerate cycles.
      walk_state = walk_state * 6364136223846793005ull + 1442695040888963407ull;
      const int start = static_cast<int>(walk_state >> 61) % 3;
      int next = kNone;
      for (int k = 0; k < 3; ++k) {
        const int e = (start + k) % 3;
        const int x = tri.v[(e + 1) % 3], y = tri.v[(e + 2) % 3];
        if (orient(x, y, p) < 0) {
          next = tri.n[e];
          break;
        }
      }
      if (next == kNone) break;  // should be unreachable; fall back to a scan
      t = next;
    }
    // Safety net: exhaustive scan (never expected on valid input).
    for (std::size_t i = 0; i < tris_.size(); ++i)
      if (tris_[i].alive && in_disk(tris_[i], p)) return static_cast<int>(i);
    throw NumericError("delaunay: point location failed");
  }

  void insert(int p) {
    const int seed = locate(p);
    // Grow the cavity of triangles whose open circumdisk contains p.
    std::vector<int> cavity;
    std::vector<char> in_cavity(tris_.size(), 0);
    std::queue<int> frontier;
    frontier.push(seed);
    in_cavity[seed] = 1;
    while (!frontier.empty()) {
      const int t = frontier.front();
      frontier.pop();
      cavity.push_back(t);
      for (int e = 0; e < 3; ++e) {
        const int nb = tris_[t].n[e];
        if (nb == kNone || in_cavity[nb]) continue;
        if (in_disk(tris_[nb], p)) {
          in_cavity[nb] = 1;
          frontier.push(nb);
        }
      }
    }

    // Boundary fan: one new triangle (x, y, p) per directed boundary edge.
    struct BoundaryEdge {
      int x, y, outside, outside_edge;
    };
    std::vector<BoundaryEdge> boundary;
    for (const int t : cavity) {
      for (int e = 0; e < 3; ++e) {
        const int nb = tris_[t].n[e];
        if (nb != kNone && in_cavity[nb]) continue;
        const int x = tris_[t].v[(e + 1) % 3];
        const int y = tris_[t].v[(e + 2) % 3];
        const int back = nb == kNone ? kNone : tris_[nb].index_of_neighbor(t);
        boundary.push_back({x, y, nb, back});
      }
    }
    for (const int t : cavity) tris_[t].alive = false;

    std::map<int, int> tri_starting_at;  // boundary vertex x -> new triangle
    std::vector<int> created;
    created.reserve(boundary.size());
    for (const BoundaryEdge& be : boundary) {
      const int idx = static_cast<int>(tris_.size());
      tris_.push_back({{be.x, be.y, p}, {kNone, kNone, be.outside}, true});
      if (be.outside != kNone) tris_[be.outside].n[be.outside_edge] = idx;
      tri_starting_at[be.x] = idx;
      created.push_back(idx);
    }
    for (const int idx : created) {
      const int y = tris_[idx].v[1];
      const int succ = tri_starting_at.at(y);  // shares edge (y, p)
      tris_[idx].n[0] = succ;
      tris_[succ].n[1] = idx;
    }
    for (const int idx : created) {
      if (tris_[idx].index_of_ghost() == kNone) {
        recent_ = idx;
        return;
      }
    }
    recent_ = created.front();
  }

  std::vector<std::array<double, 2>> pts_;
  std::vector<Tri> tris_;
  int recent_ = 0;
};

}  // namespace

TriangulationGraph delaunay(const PointMatrix& points) {
  if (points.cols() != 2) throw DataError("delaunay: points must be n x 2");
  const std::size_t n = points.rows();
  if (n < 3) throw DataError("delaunay: need n >= 3 points");
  if (!points.all_finite()) throw DataError("delaunay: non-finite coordinate");

  TriangulationGraph g;
  g.vertex_count = n;
  g.unique_id.assign(n, -1);
  std::map<std::pair<double, double>, int> seen;
  std::vector<std::array<double, 2>> unique_pts;
  for (std::size_t i = 0; i < n; ++i) {
    const std::pair<double, double> key{points(i, 0), points(i, 1)};
    auto [it, fresh] = seen.emplace(key, static_cast<int>(unique_pts.size()));
    if (fresh) {
      unique_pts.push_back({key.first, key.second});
      g.representative.push_back(i);
      g.members.emplace_back();
    }
    g.unique_id[i] = it->second;
    g.members[it->second].push_back(i);
  }
  if (unique_pts.size() < 3)
    throw DataError("delaunay: need at least 3 distinct points");

  Triangulator tri(unique_pts);
  tri.run();
  g.triangles = tri.real_triangles();

  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  for (const auto& t : g.triangles)
    for (int e = 0; e < 3; ++e) {
      const std::size_t a = t[e], b = t[(e + 1) % 3];
      edge_set.emplace(std::min(a, b), std::max(a, b));
    }
  g.edges.assign(edge_set.begin(), edge_set.end());
  g.adjacency.assign(unique_pts.size(), {});
  for (const auto& [a, b] : g.edges) {
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

ComponentLabeling connected_components(const TriangulationGraph& graph,
                                       const std::vector<std::size_t>& subset) {
  ComponentLabeling out;
  out.member_indices = subset;
  out.labels.assign(subset.size(), -1);
  if (subset.empty()) return out;

  std::vector<char> active(graph.unique_count(), 0);
  for (std::size_t idx : subset) {
    if (idx >= graph.vertex_count)
      throw DataError("connected_components: subset index out of range");
    active[graph.unique_id[idx]] = 1;
  }

  std::vector<int> comp(graph.unique_count(), -1);
  int next_label = 0;
  for (std::size_t v = 0; v < graph.unique_count(); ++v) {
    if (!active[v] || comp[v] != -1) continue;
    std::queue<std::size_t> bfs;
    bfs.push(v);
    comp[v] = next_label;
    while (!bfs.empty()) {
      const std::size_t cur = bfs.front();
      bfs.pop();
      for (std::size_t nb : graph.adjacency[cur]) {
        if (active[nb] && comp[nb] == -1) {
          comp[nb] = next_label;
          bfs.push(nb);
        }
      }
    }
    ++next_label;
  }
  for (std::size_t k = 0; k < subset.size(); ++k)
    out.labels[k] = comp[graph.unique_id[subset[k]]];
  out.component_count = next_label;
  return out;
}

}  // namespace npc
