#pragma once

#include <vector>

#include "npc/common.hpp"

namespace npc {

/// One positive Gaussian smoothing parameter per coordinate.
struct Bandwidths {
  std::vector<double> h;

  std::size_t dims() const { return h.size(); }
  void validate() const;
};

/// A kernel density estimate: the sample it averages over plus its
/// per-dimension bandwidths. Immutable after construction; evaluation is a
/// pure function, safe to share across workers.
struct DensityModel {
  PointMatrix sample;  // n x d
  Bandwidths bandwidths;

  std::size_t size() const { return sample.rows(); }
  std::size_t dims() const { return sample.cols(); }
  void validate() const;
};

struct DensitySurface {
  PointMatrix query_points;        // m x d
  std::vector<double> values;      // >= 0
  std::vector<double> log_values;  // log(values), -inf when values == 0
};

/// d-dimensional normal-reference rule: h_j = s_j * (4 / ((d+2) n))^(1/(d+4))
/// with s_j the sample standard deviation of coordinate j.
Bandwidths normal_reference_bandwidth(const PointMatrix& sample);

/// Gaussian product-kernel density, f(x) = (1/n) sum_i prod_j
/// phi((x_j - x_ij)/h_j)/h_j. Log values go through log-sum-exp; linear
/// values are exp() of them. Per-query kernel terms are summed in sorted
/// order, so the result is bit-identical under any permutation of the
/// sample rows.
DensitySurface kde_evaluate(const DensityModel& model, const PointMatrix& queries);

/// Densities of the model evaluated at its own sample points.
std::vector<double> kde_at_sample(const DensityModel& model);

/// Log density at a single query point, restricted to a subset of sample
/// rows (the cluster-core estimates in the allocation step). An empty
/// subset view means "all rows".
double kde_log_at(const PointMatrix& sample, const std::vector<std::size_t>* subset,
                  const Bandwidths& bw, std::span<const double> query);

}  // namespace npc
