#include "npc/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "npc/parallel.hpp"

namespace npc {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

// log-sum-exp with the terms sorted ascending first. Sorting fixes the
// summation order by value, which makes the result independent of the
// original row order of the sample.
double log_sum_exp_sorted(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  const double m = terms.back();
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

}  // namespace

void Bandwidths::validate() const {
  if (h.empty()) throw DataError("bandwidths: empty");
  for (std::size_t j = 0; j < h.size(); ++j)
    if (!(h[j] > 0.0) || !std::isfinite(h[j]))
      throw DataError("bandwidths: h[" + std::to_string(j) +
                      "] must be positive and finite");
}

void DensityModel::validate() const {
  if (sample.rows() < 1 || sample.cols() < 1)
    throw DataError("density model: need n >= 1 and d >= 1");
  if (!sample.all_finite())
    throw DataError("density model: non-finite sample entry");
  bandwidths.validate();
  if (bandwidths.dims() != sample.cols())
    throw DataError("density model: bandwidth dimension mismatch");
}

Bandwidths normal_reference_bandwidth(const PointMatrix& sample) {
  const std::size_t n = sample.rows(), d = sample.cols();
  if (n < 2) throw DataError("normal_reference_bandwidth: need n >= 2");
  if (!sample.all_finite())
    throw DataError("normal_reference_bandwidth: non-finite sample entry");

  const double factor =
      std::pow(4.0 / (static_cast<double>(d + 2) * static_cast<double>(n)),
               1.0 / (static_cast<double>(d) + 4.0));
  Bandwidths bw;
  bw.h.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += sample(i, j);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dv = sample(i, j) - mean;
      ss += dv * dv;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0))
      throw NumericError("normal_reference_bandwidth: coordinate " +
                         std::to_string(j) + " has zero variance");
    bw.h[j] = sd * factor;
  }
  return bw;
}

double kde_log_at(const PointMatrix& sample, const std::vector<std::size_t>* subset,
                  const Bandwidths& bw, std::span<const double> query) {
  const std::size_t d = sample.cols();
  if (query.size() != d) throw DataError("kde: query dimension mismatch");
  double log_norm = 0.0;
  for (std::size_t j = 0; j < d; ++j) log_norm += std::log(bw.h[j]);
  log_norm += 0.5 * static_cast<double>(d) * kLogTwoPi;

  const std::size_t n = subset ? subset->size() : sample.rows();
  if (n == 0) throw DataError("kde: empty sample subset");
  std::vector<double> terms(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = subset ? (*subset)[k] : k;
    double u = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double z = (query[j] - sample(i, j)) / bw.h[j];
      u += z * z;
    }
    terms[k] = -0.5 * u;
  }
  return log_sum_exp_sorted(terms) - log_norm - std::log(static_cast<double>(n));
}

DensitySurface kde_evaluate(const DensityModel& model, const PointMatrix& queries) {
  model.validate();
  if (queries.cols() != model.dims())
    throw DataError("kde_evaluate: query dimension mismatch");

  DensitySurface out;
  out.query_points = queries;
  out.values.resize(queries.rows());
  out.log_values.resize(queries.rows());

  parallel_for_chunks(0, queries.rows(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t q = lo; q < hi; ++q) {
      const double lf =
          kde_log_at(model.sample, nullptr, model.bandwidths, queries.row(q));
      out.log_values[q] = lf;
      out.values[q] = std::exp(lf);
    }
  });
  return out;
}

std::vector<double> kde_at_sample(const DensityModel& model) {
  return kde_evaluate(model, model.sample).values;
}

}  // namespace npc
