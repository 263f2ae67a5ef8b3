#include "npc/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace npc {

std::vector<DensityModel> cluster_models(const Partition& partition,
                                         const PointMatrix& points,
                                         const Bandwidths& bandwidths,
                                         bool cores_only) {
  partition.validate();
  if (partition.labels.size() != points.rows())
    throw DataError("cluster_models: partition/points size mismatch");
  const int m = partition.cluster_count;
  std::vector<std::vector<std::size_t>> members(m);
  for (std::size_t i = 0; i < partition.labels.size(); ++i) {
    if (cores_only && !partition.core_flag[i]) continue;
    members[partition.labels[i] - 1].push_back(i);
  }
  std::vector<DensityModel> models;
  models.reserve(m);
  for (int j = 0; j < m; ++j) {
    if (members[j].empty())
      throw NumericError("cluster_models: cluster " + std::to_string(j + 1) +
                         " has no " + (cores_only ? "core " : "") + "members");
    PointMatrix sample(members[j].size(), points.cols());
    for (std::size_t k = 0; k < members[j].size(); ++k)
      for (std::size_t c = 0; c < points.cols(); ++c)
        sample(k, c) = points(members[j][k], c);
    models.push_back(DensityModel{std::move(sample), bandwidths});
    models.back().validate();
  }
  return models;
}

DbsReport dbs(const Partition& partition,
              const std::vector<DensityModel>& models,
              const PointMatrix& points) {
  partition.validate();
  const std::size_t n = points.rows();
  const int m = partition.cluster_count;
  if (m < 2)
    throw NumericError("dbs: undefined for M = 1 (no alternative cluster)");
  if (models.size() != static_cast<std::size_t>(m))
    throw DataError("dbs: need one density model per cluster");
  if (partition.labels.size() != n)
    throw DataError("dbs: partition/points size mismatch");

  std::vector<double> log_prior(m);
  std::vector<long long> counts(m, 0);
  for (int label : partition.labels) ++counts[label - 1];
  for (int j = 0; j < m; ++j) {
    if (counts[j] == 0)
      throw NumericError("dbs: cluster " + std::to_string(j + 1) +
                         " has prior zero");
    log_prior[j] = std::log(static_cast<double>(counts[j]) /
                            static_cast<double>(n));
  }

  DbsReport report;
  report.rows.resize(n);
  std::vector<double> raw(n, 0.0);
  std::vector<double> lp(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j)
      lp[j] = log_prior[j] + kde_log_at(models[j].sample, nullptr,
                                        models[j].bandwidths, points.row(i));
    // Normalize for reporting; the dbs ratio itself cancels the constant.
    double mx = *std::max_element(lp.begin(), lp.end());
    double sum = 0.0;
    for (int j = 0; j < m; ++j) sum += std::exp(lp[j] - mx);
    const double log_norm = mx + std::log(sum);

    const int j0 = partition.labels[i] - 1;
    int j1 = -1;
    for (int j = 0; j < m; ++j) {
      if (j == j0) continue;
      if (j1 == -1 || lp[j] > lp[j1]) j1 = j;
    }
    raw[i] = lp[j0] - lp[j1];
    report.rows[i].allocated = j0 + 1;
    report.rows[i].runner_up = j1 + 1;
    report.rows[i].log_posterior_allocated = lp[j0] - log_norm;
    report.rows[i].log_posterior_runner = lp[j1] - log_norm;
  }

  double denom = 0.0;
  for (double r : raw) denom = std::max(denom, std::fabs(r));
  report.cluster_mean.assign(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    report.rows[i].dbs = denom > 0.0 ? raw[i] / denom : 0.0;
    report.cluster_mean[report.rows[i].allocated - 1] += report.rows[i].dbs;
    report.global_mean += report.rows[i].dbs;
  }
  for (int j = 0; j < m; ++j)
    report.cluster_mean[j] /= static_cast<double>(counts[j]);
  report.global_mean /= static_cast<double>(n);
  return report;
}

}  // namespace npc
