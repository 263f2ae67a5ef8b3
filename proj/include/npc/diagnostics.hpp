#pragma once

#include <vector>

#include "npc/cluster.hpp"
#include "npc/kde.hpp"

namespace npc {

/// Density-based silhouette report. dbs values lie in [-1, 1]; the sign
/// says whether the event sits in its allocated cluster's density basin.
struct DbsReport {
  struct Row {
    int allocated = 0;               // j0, the partition label
    int runner_up = 0;               // j1 = argmax_{j != j0} posterior
    double log_posterior_allocated = 0.0;
    double log_posterior_runner = 0.0;
    double dbs = 0.0;
  };
  std::vector<Row> rows;
  std::vector<double> cluster_mean;  // indexed by cluster id - 1
  double global_mean = 0.0;
};

/// Per-cluster kernel estimates used by the silhouette: built from the final
/// cluster members by default, or from the cores only.
std::vector<DensityModel> cluster_models(const Partition& partition,
                                         const PointMatrix& points,
                                         const Bandwidths& bandwidths,
                                         bool cores_only = false);

/// Posterior probabilities p_j(x) proportional to pi_j f_j(x), with
/// pi_j = |C_j| / n; dbs(x_i) is the log posterior ratio of the allocated
/// cluster over the runner-up, normalized by the largest absolute ratio.
/// All arithmetic stays in log space. M = 1 is an error: the silhouette is
/// undefined without an alternative cluster.
DbsReport dbs(const Partition& partition,
              const std::vector<DensityModel>& models,
              const PointMatrix& points);

}  // namespace npc
