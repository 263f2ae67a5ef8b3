#include "npc/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace npc {

long long ContingencyTable::row_sum(std::size_t i) const {
  long long s = 0;
  for (long long v : counts[i]) s += v;
  return s;
}

long long ContingencyTable::col_sum(std::size_t j) const {
  long long s = 0;
  for (const auto& row : counts) s += row[j];
  return s;
}

long long ContingencyTable::total() const {
  long long s = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) s += row_sum(i);
  return s;
}

void ContingencyTable::validate() const {
  if (counts.empty()) throw DataError("contingency table: empty");
  for (const auto& row : counts) {
    if (row.size() != counts[0].size())
      throw DataError("contingency table: ragged rows");
    for (long long v : row)
      if (v < 0) throw DataError("contingency table: negative count");
  }
}

ContingencyTable contingency(const std::vector<int>& forecast_labels,
                             const std::vector<int>& observed_labels) {
  if (forecast_labels.size() != observed_labels.size())
    throw DataError("contingency: label lists have different lengths");
  if (forecast_labels.empty()) throw DataError("contingency: empty label lists");
  int k = 0;
  for (std::size_t i = 0; i < forecast_labels.size(); ++i) {
    if (forecast_labels[i] < 1 || observed_labels[i] < 1)
      throw DataError("contingency: labels must be in 1..K");
    k = std::max({k, forecast_labels[i], observed_labels[i]});
  }
  ContingencyTable t;
  t.counts.assign(k, std::vector<long long>(k, 0));
  for (std::size_t i = 0; i < forecast_labels.size(); ++i)
    ++t.counts[forecast_labels[i] - 1][observed_labels[i] - 1];
  return t;
}

SkillScores skill_scores(const ContingencyTable& table) {
  table.validate();
  const std::size_t k = table.size();
  const double n = static_cast<double>(table.total());
  if (n <= 0.0) throw DataError("skill_scores: empty table");

  double diag = 0.0, fo = 0.0, oo = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    diag += static_cast<double>(table.counts[i][i]);
    const double fi = static_cast<double>(table.row_sum(i));
    const double oi = static_cast<double>(table.col_sum(i));
    fo += fi * oi;
    oo += oi * oi;
  }

  SkillScores s;
  s.nss = diag / n;
  const double chance = fo / (n * n);
  if (chance >= 1.0)
    throw NumericError("skill_scores: degenerate single-category table, HSS undefined");
  s.hss = (s.nss - chance) / (1.0 - chance);
  if (oo >= n * n)
    throw NumericError("skill_scores: single observed category, HK undefined");
  s.hk = s.hss * (n * n - fo) / (n * n - oo);
  return s;
}

double adjusted_rand(const ContingencyTable& table, RandExpectation mode) {
  table.validate();
  const std::size_t k = table.size();
  const double n = static_cast<double>(table.total());
  if (n < 2.0) throw DataError("adjusted_rand: need N >= 2");

  auto pairs = [](double c) { return c * (c - 1.0) / 2.0; };
  double r = 0.0, observed_pairs = 0.0, forecast_pairs = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      r += pairs(static_cast<double>(table.counts[i][j]));
    observed_pairs += pairs(static_cast<double>(table.col_sum(i)));
    forecast_pairs += pairs(static_cast<double>(table.row_sum(i)));
  }
  const double max_r = 0.5 * (observed_pairs + forecast_pairs);
  double expected = observed_pairs * forecast_pairs / (n * (n - 1.0));
  if (mode == RandExpectation::Standard)
    expected *= 2.0;  // |N(O)||N(F)| / C(N,2)
  else
    expected *= 0.5;  // the printed 1/2 * |N(O)||N(F)| / (N(N-1))
  if (max_r == expected)
    throw NumericError("adjusted_rand: max(r) equals E(r), both partitions trivial");
  return (r - expected) / (max_r - expected);
}

namespace {

// Maximum-diagonal assignment via shortest augmenting paths on the negated
// counts. Deterministic; used only for K > 8 where K! search is off the table.
std::vector<std::size_t> assignment_max(const std::vector<std::vector<long long>>& c) {
  const std::size_t k = c.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> cost(k + 1, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      cost[i + 1][j + 1] = -static_cast<double>(c[i][j]);

  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<std::size_t> p(k + 1, 0), way(k + 1, 0);
  for (std::size_t i = 1; i <= k; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(k + 1, inf);
    std::vector<bool> used(k + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0][j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> sigma(k, 0);
  for (std::size_t j = 1; j <= k; ++j) sigma[p[j] - 1] = j - 1;
  return sigma;
}

}  // namespace

std::vector<std::size_t> match_labels(const ContingencyTable& table) {
  table.validate();
  const std::size_t k = table.size();
  if (k == 0 || table.counts[0].size() != k)
    throw DataError("match_labels: square table required");

  if (k <= 8) {
    std::vector<std::size_t> perm(k), best(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    best = perm;
    long long best_sum = std::numeric_limits<long long>::min();
    do {
      long long s = 0;
      for (std::size_t i = 0; i < k; ++i) s += table.counts[i][perm[i]];
      if (s > best_sum) {  // strict: first lexicographic maximizer kept
        best_sum = s;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  return assignment_max(table.counts);
}

}  // namespace npc
