#pragma once

#include <cstddef>
#include <vector>

#include "npc/catalog.hpp"
#include "npc/kde.hpp"
#include "npc/topology.hpp"

namespace npc {

/// Ordered density thresholds spanning [0, max_i f(x_i)].
struct AlphaGrid {
  std::vector<double> levels;  // strictly increasing

  /// Default grid: quantiles of the sample densities at k/(count+1),
  /// k = 1..count (count = 99 gives the 1%..99% quantiles). Quantiles are
  /// linearly interpolated; duplicate levels are collapsed.
  static AlphaGrid density_quantiles(const std::vector<double>& densities,
                                     int count = 99);
  void validate() const;
};

/// The step function m(p): component count m at each level, with p the
/// fraction of the sample at or above the level. Stored in ascending alpha
/// order (descending p).
struct ModeFunction {
  struct Level {
    double alpha;
    double p;  // |S_alpha| / n
    int m;     // connected components of S_alpha
  };
  std::vector<Level> levels;
  std::size_t clamped_levels = 0;  // grid entries above max density, dropped

  /// Total positive increments of m(p) over increasing p with the
  /// conventions m(0) = m(1) = 0; equals the number of detected modes.
  int total_positive_increments() const;
};

/// One node per branch of the level-set hierarchy: a maximal run of levels
/// over which a connected component shrinks without splitting. Children are
/// the sub-branches it splits into; leaves are the modes. `members` is the
/// component at the branch's first level, its maximal membership.
struct ClusterTreeNode {
  int id = 0;
  int parent = -1;
  int start_level = 0;
  int end_level = -1;
  double start_alpha = 0.0;
  std::vector<std::size_t> members;
  std::vector<int> children;

  bool leaf() const { return children.empty(); }
};

struct ClusterTree {
  std::vector<ClusterTreeNode> nodes;

  std::vector<int> leaves() const;
};

/// Sweeps the alpha grid over the sample densities, labeling S_alpha through
/// the triangulation at every level and linking components across adjacent
/// levels by membership containment.
std::pair<ModeFunction, ClusterTree> build_mode_function(
    const std::vector<double>& densities, const TriangulationGraph& graph,
    const AlphaGrid& grid);

/// Cluster cores: the maximal-membership component of each leaf branch.
/// Leaves with fewer than min_core_size members are pruned (their points are
/// left for likelihood-ratio allocation). Cores are pairwise disjoint.
std::vector<std::vector<std::size_t>> extract_cores(const ClusterTree& tree,
                                                    std::size_t min_core_size = 3);

enum class AllocationPolicy {
  Static,           // per-core densities frozen at the initial cores
  SequentialUpdate, // re-estimated after every single allocation
  BatchByDensity,   // updated after each density-decile batch (default)
};

struct Partition {
  std::vector<int> labels;     // cluster id in 1..M per event
  std::vector<bool> core_flag; // event belonged to a cluster core
  int cluster_count = 0;
  std::vector<std::size_t> tie_events;  // allocations decided by the tie rule

  void validate() const;
};

/// Assigns every non-core point to the cluster maximizing the likelihood
/// ratio f_j(x0) / max_{k != j} f_k(x0), where f_j is the kernel estimate
/// over cluster j's current members (shared bandwidths). Points are
/// processed in decreasing full-sample density order; ties break toward the
/// lower cluster id and are recorded.
Partition allocate(const std::vector<std::vector<std::size_t>>& cores,
                   const PointMatrix& points, const Bandwidths& bandwidths,
                   AllocationPolicy policy);

struct ClusterOptions {
  int alpha_levels = 99;
  double bandwidth_scale = 1.0;
  AllocationPolicy policy = AllocationPolicy::BatchByDensity;
  std::size_t min_core_size = 3;
};

struct ClusterResult {
  DensityModel model;
  std::vector<double> sample_density;
  TriangulationGraph graph;
  ModeFunction mode_function;
  ClusterTree tree;
  Partition partition;
};

/// The full pipeline on an n x 2 point set: bandwidth selection, density
/// estimation, triangulation, level sweep, core extraction, allocation.
/// Deterministic given points and options.
ClusterResult pdf_cluster(const PointMatrix& points, const ClusterOptions& options);
ClusterResult pdf_cluster(const EventCatalog& catalog, const ClusterOptions& options);

}  // namespace npc
