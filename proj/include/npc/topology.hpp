#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "npc/common.hpp"

namespace npc {

/// Delaunay triangulation of the sample, built once per catalog and queried
/// for connectivity at every density level.
///
/// Exactly duplicated coordinates are collapsed to one triangulation vertex;
/// all events sharing the coordinate inherit that vertex's connectivity and
/// are treated as mutually connected. Triangles, edges, and adjacency are
/// expressed over the deduplicated vertex ids; `unique_id` maps each original
/// point to its vertex and `representative` picks the first original index
/// per vertex (so coordinates can be recovered from the input matrix).
struct TriangulationGraph {
  std::size_t vertex_count = 0;                   // original point count n
  std::vector<int> unique_id;                     // original -> vertex
  std::vector<std::size_t> representative;        // vertex -> original index
  std::vector<std::vector<std::size_t>> members;  // vertex -> original indices
  std::vector<std::array<std::size_t, 3>> triangles;       // vertex ids, CCW
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // vertex ids, a < b
  std::vector<std::vector<std::size_t>> adjacency;         // vertex -> sorted neighbors

  std::size_t unique_count() const { return representative.size(); }
};

/// Labeling of a point subset into connected components of the induced
/// subgraph. Labels are 0-based and assigned in order of discovery over
/// ascending vertex id, so the result is deterministic.
struct ComponentLabeling {
  std::vector<std::size_t> member_indices;  // the queried subset, as given
  std::vector<int> labels;                  // parallel to member_indices
  int component_count = 0;
};

/// Bowyer-Watson incremental triangulation with ghost triangles standing in
/// for the hull exterior. Orientation and in-circle tests run a floating
/// point filter first (Shewchuk's static error bounds) and fall back to
/// exact rational arithmetic when the filter cannot certify a sign, so
/// near-degenerate inputs cannot corrupt the structure.
///
/// Requires n >= 3 points spanning at least three distinct, non-collinear
/// locations.
TriangulationGraph delaunay(const PointMatrix& points);

/// Components of the subgraph induced by `subset`: two members share a label
/// iff a triangulation path joins them using only edges with both endpoints
/// in the subset.
ComponentLabeling connected_components(const TriangulationGraph& graph,
                                       const std::vector<std::size_t>& subset);

/// Exact predicate signs, exposed for the brute-force oracles in the tests.
/// orient_sign: +1 if (a,b,c) turn counterclockwise. incircle_sign: +1 if d
/// lies strictly inside the circumcircle of the CCW triangle (a,b,c).
int orient_sign(double ax, double ay, double bx, double by, double cx, double cy);
int incircle_sign(double ax, double ay, double bx, double by, double cx,
                  double cy, double dx, double dy);

}  // namespace npc
