#pragma once

// Shared generators and independent oracles for the test suites. Oracles are
// deliberately written against the naive definitions (double loops, flood
// fill, exhaustive enumeration) and never reuse the library's optimized
// paths.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "npc/agreement.hpp"
#include "npc/common.hpp"
#include "npc/topology.hpp"

namespace testsupport {

struct Blobs {
  npc::PointMatrix points;
  std::vector<int> labels;  // 1-based blob id per row
};

/// Zigzag centers with adjacent spacing separation * sqrt(2) / sqrt(2)...
/// concretely: steps of (step, step * (odd ? +1 : -1)) so every pair of
/// centers is at least `separation` apart when step = separation / sqrt(2).
inline std::vector<std::array<double, 2>> spread_centers(int k, double separation) {
  const double step = separation / std::sqrt(2.0);
  std::vector<std::array<double, 2>> centers(k);
  for (int i = 0; i < k; ++i)
    centers[i] = {step * static_cast<double>(i), (i % 2) ? step : 0.0};
  return centers;
}

inline Blobs make_blobs(const std::vector<std::array<double, 2>>& centers,
                        double sigma, std::size_t per_blob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  Blobs out;
  out.points = npc::PointMatrix(per_blob * centers.size(), 2);
  std::size_t row = 0;
  for (std::size_t b = 0; b < centers.size(); ++b) {
    for (std::size_t i = 0; i < per_blob; ++i, ++row) {
      out.points(row, 0) = centers[b][0] + normal(rng);
      out.points(row, 1) = centers[b][1] + normal(rng);
      out.labels.push_back(static_cast<int>(b) + 1);
    }
  }
  return out;
}

/// Brute-force Gaussian product-kernel density, the oracle for kde_evaluate.
inline double kde_naive(const npc::PointMatrix& sample,
                        const std::vector<double>& h,
                        const std::vector<double>& query) {
  const double inv_sqrt_2pi = 0.3989422804014327;
  double sum = 0.0;
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    double k = 1.0;
    for (std::size_t j = 0; j < sample.cols(); ++j) {
      const double z = (query[j] - sample(i, j)) / h[j];
      k *= std::exp(-0.5 * z * z) * inv_sqrt_2pi / h[j];
    }
    sum += k;
  }
  return sum / static_cast<double>(sample.rows());
}

/// Flood-fill component count over the subgraph induced by `subset`,
/// rebuilt from the triangle list alone.
inline int flood_fill_components(const npc::TriangulationGraph& graph,
                                 const std::vector<std::size_t>& subset,
                                 std::vector<int>* labels_out = nullptr) {
  std::set<std::size_t> active;
  for (std::size_t i : subset) active.insert(graph.unique_id[i]);
  std::map<std::size_t, std::vector<std::size_t>> adj;
  for (const auto& tri : graph.triangles)
    for (int e = 0; e < 3; ++e) {
      const std::size_t a = tri[e], b = tri[(e + 1) % 3];
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  std::map<std::size_t, int> comp;
  int count = 0;
  for (std::size_t v : active) {
    if (comp.count(v)) continue;
    std::vector<std::size_t> stack{v};
    comp[v] = count;
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      for (std::size_t nb : adj[cur])
        if (active.count(nb) && !comp.count(nb)) {
          comp[nb] = count;
          stack.push_back(nb);
        }
    }
    ++count;
  }
  if (labels_out) {
    labels_out->clear();
    for (std::size_t i : subset)
      labels_out->push_back(comp.at(graph.unique_id[i]));
  }
  return count;
}

struct Circle {
  double cx, cy, r;
};

/// Circumcircle through three points; degenerate triangles return r = inf.
inline Circle circumcircle(double ax, double ay, double bx, double by,
                           double cx, double cy) {
  const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  if (d == 0.0) return {0, 0, std::numeric_limits<double>::infinity()};
  const double a2 = ax * ax + ay * ay;
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
  const double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
  return {ux, uy, std::hypot(ax - ux, ay - uy)};
}

/// Every edge must belong to at least one triangle whose circumcircle holds
/// no other vertex more than `tol` inside.
inline bool edges_pass_circumcircle_oracle(const npc::PointMatrix& points,
                                           const npc::TriangulationGraph& graph,
                                           double tol = 1e-9) {
  const std::size_t u = graph.unique_count();
  std::vector<std::array<double, 2>> coords(u);
  for (std::size_t v = 0; v < u; ++v)
    coords[v] = {points(graph.representative[v], 0),
                 points(graph.representative[v], 1)};

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> tris_of;
  for (std::size_t t = 0; t < graph.triangles.size(); ++t)
    for (int e = 0; e < 3; ++e) {
      std::size_t a = graph.triangles[t][e], b = graph.triangles[t][(e + 1) % 3];
      if (a > b) std::swap(a, b);
      tris_of[{a, b}].push_back(t);
    }

  for (const auto& edge : graph.edges) {
    const auto it = tris_of.find(edge);
    if (it == tris_of.end()) return false;
    bool edge_ok = false;
    for (const std::size_t t : it->second) {
      const auto& tri = graph.triangles[t];
      const Circle c = circumcircle(coords[tri[0]][0], coords[tri[0]][1],
                                    coords[tri[1]][0], coords[tri[1]][1],
                                    coords[tri[2]][0], coords[tri[2]][1]);
      bool empty = true;
      for (std::size_t v = 0; v < u && empty; ++v) {
        if (v == tri[0] || v == tri[1] || v == tri[2]) continue;
        if (std::hypot(coords[v][0] - c.cx, coords[v][1] - c.cy) < c.r - tol)
          empty = false;
      }
      if (empty) {
        edge_ok = true;
        break;
      }
    }
    if (!edge_ok) return false;
  }
  return true;
}

/// Adjusted Rand between two labelings via the library's table path.
inline double ari(const std::vector<int>& a, const std::vector<int>& b) {
  return npc::adjusted_rand(npc::contingency(a, b),
                            npc::RandExpectation::Standard);
}

}  // namespace testsupport
