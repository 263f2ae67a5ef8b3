#include "npc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "npc/io.hpp"

namespace npc {

namespace {

// Regularized upper incomplete gamma Q(a, x): series for the lower tail when
// x < a+1, modified-Lentz continued fraction otherwise.
double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0)
    throw std::invalid_argument("gamma_q: a > 0 and x >= 0 required");
  if (x == 0.0) return 1.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - lg);
    return std::max(0.0, 1.0 - p);
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - lg) * h;
}

// Sum of (t^3 - t) over tie groups of the pooled sorted values.
double tie_cubic_sum(std::vector<double> pooled, bool* any_ties) {
  std::sort(pooled.begin(), pooled.end());
  double s = 0.0;
  *any_ties = false;
  std::size_t i = 0;
  while (i < pooled.size()) {
    std::size_t j = i + 1;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    const double t = static_cast<double>(j - i);
    if (t > 1.0) {
      *any_ties = true;
      s += t * t * t - t;
    }
    i = j;
  }
  return s;
}

struct ExactTail {
  double p_leq;
  double p_geq;
};

// Exact permutation tail probabilities of the rank-sum of a k-subset of the
// pooled midranks (doubled so they are integers), by subset-count dynamic
// programming. Counts stay below 2^53 for N <= 200, k <= 7, so doubles hold
// them exactly.
ExactTail exact_rank_sum_tails(const std::vector<double>& pooled_ranks,
                               std::size_t k, double observed_sum) {
  const std::size_t n = pooled_ranks.size();
  std::vector<long long> r2(n);
  long long total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    r2[i] = std::llround(2.0 * pooled_ranks[i]);
    total2 += r2[i];
  }
  // count[j][s] = number of j-subsets with doubled rank-sum s
  const std::size_t smax = static_cast<std::size_t>(total2);
  std::vector<std::vector<double>> count(
      k + 1, std::vector<double>(smax + 1, 0.0));
  count[0][0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = static_cast<std::size_t>(r2[i]);
    const std::size_t jhi = std::min(k, i + 1);
    for (std::size_t j = jhi; j >= 1; --j) {
      for (std::size_t s = smax; s >= r; --s) {
        if (count[j - 1][s - r] != 0.0) count[j][s] += count[j - 1][s - r];
      }
      if (j == 1) break;
    }
  }
  const long long w2 = std::llround(2.0 * observed_sum);
  double below = 0.0, above = 0.0, totalc = 0.0;
  for (std::size_t s = 0; s <= smax; ++s) {
    const double c = count[k][s];
    if (c == 0.0) continue;
    totalc += c;
    if (static_cast<long long>(s) <= w2) below += c;
    if (static_cast<long long>(s) >= w2) above += c;
  }
  return {below / totalc, above / totalc};
}

}  // namespace

std::size_t GroupedSamples::total_size() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.size();
  return n;
}

void GroupedSamples::validate() const {
  if (groups.size() < 2) throw DataError("grouped samples: need M >= 2 groups");
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty())
      throw DataError("grouped samples: group " + std::to_string(g + 1) +
                      " is empty");
    for (double v : groups[g])
      if (!std::isfinite(v))
        throw DataError("grouped samples: non-finite value in group " +
                        std::to_string(g + 1));
  }
}

std::vector<double> midranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

TestResult kruskal_wallis(const GroupedSamples& samples) {
  samples.validate();
  const std::size_t m = samples.group_count();
  const std::size_t n = samples.total_size();
  if (n < m + 1)
    throw DataError("kruskal_wallis: need total N >= M + 1 observations");

  std::vector<double> pooled;
  pooled.reserve(n);
  std::vector<std::size_t> group_of;
  group_of.reserve(n);
  for (std::size_t g = 0; g < m; ++g)
    for (double v : samples.groups[g]) {
      pooled.push_back(v);
      group_of.push_back(g);
    }

  const std::vector<double> ranks = midranks(pooled);
  std::vector<double> rank_sum(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) rank_sum[group_of[i]] += ranks[i];

  const double nd = static_cast<double>(n);
  double h = 0.0;
  for (std::size_t g = 0; g < m; ++g)
    h += rank_sum[g] * rank_sum[g] / static_cast<double>(samples.groups[g].size());
  h = 12.0 / (nd * (nd + 1.0)) * h - 3.0 * (nd + 1.0);

  bool any_ties = false;
  const double ties = tie_cubic_sum(pooled, &any_ties);
  const double correction = 1.0 - ties / (nd * nd * nd - nd);
  if (correction <= 0.0)
    throw NumericError("kruskal_wallis: all pooled values are tied");
  h /= correction;

  TestResult r;
  r.statistic = h;
  r.df = static_cast<double>(m - 1);
  r.tie_correction_applied = any_ties;
  r.p_value = chi_squared_upper_tail(h, r.df);
  return r;
}

TestResult wilcoxon_rank_sum(const std::vector<double>& a,
                             const std::vector<double>& b,
                             WilcoxonMethod method) {
  if (a.empty() || b.empty())
    throw DataError("wilcoxon_rank_sum: both groups must be nonempty");
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;
  std::vector<double> pooled;
  pooled.reserve(n);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  for (double v : pooled)
    if (!std::isfinite(v))
      throw DataError("wilcoxon_rank_sum: non-finite value");

  const std::vector<double> ranks = midranks(pooled);
  double w = 0.0;
  for (std::size_t i = 0; i < na; ++i) w += ranks[i];

  bool any_ties = false;
  const double ties = tie_cubic_sum(pooled, &any_ties);

  TestResult r;
  r.statistic = w;
  r.tie_correction_applied = any_ties;

  const double nd = static_cast<double>(n);
  const double var =
      static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
      ((nd + 1.0) - ties / (nd * (nd - 1.0)));
  if (var <= 0.0) {
    // All pooled values identical: no information, flagged p = 1.
    r.p_value = 1.0;
    return r;
  }

  bool use_exact = method == WilcoxonMethod::Exact;
  if (method == WilcoxonMethod::Auto)
    use_exact = std::min(na, nb) < 8 && n <= 200;

  if (use_exact) {
    if (n > 500)
      throw NumericError("wilcoxon_rank_sum: exact enumeration limited to N <= 500");
    // Enumerate the smaller side; the tails mirror through the pooled total.
    ExactTail tail{};
    if (na <= nb) {
      tail = exact_rank_sum_tails(ranks, na, w);
    } else {
      const double total = std::accumulate(ranks.begin(), ranks.end(), 0.0);
      const ExactTail t = exact_rank_sum_tails(ranks, nb, total - w);
      tail = {t.p_geq, t.p_leq};
    }
    r.exact = true;
    r.p_value = std::min(1.0, 2.0 * std::min(tail.p_leq, tail.p_geq));
    return r;
  }

  const double mean = static_cast<double>(na) * (nd + 1.0) / 2.0;
  double z = w - mean;
  // Continuity correction toward the mean.
  if (z > 0.5)
    z -= 0.5;
  else if (z < -0.5)
    z += 0.5;
  else
    z = 0.0;
  z /= std::sqrt(var);
  r.p_value = std::min(1.0, std::erfc(std::fabs(z) / std::sqrt(2.0)));
  return r;
}

BonferroniResult bonferroni(const std::vector<double>& p_values, double alpha) {
  if (p_values.empty()) throw DataError("bonferroni: empty p-value list");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DataError("bonferroni: alpha must be in (0,1)");
  BonferroniResult r;
  r.threshold = alpha / static_cast<double>(p_values.size());
  r.significant.reserve(p_values.size());
  for (double p : p_values) r.significant.push_back(p < r.threshold);
  return r;
}

std::vector<std::vector<double>> pairwise_wilcoxon_matrix(
    const GroupedSamples& samples) {
  samples.validate();
  const std::size_t m = samples.group_count();
  std::vector<std::vector<double>> mat(
      m, std::vector<double>(m, std::numeric_limits<double>::quiet_NaN()));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double p =
          wilcoxon_rank_sum(samples.groups[i], samples.groups[j]).p_value;
      mat[i][j] = p;
      mat[j][i] = p;
    }
  return mat;
}

double chi_squared_upper_tail(double x, double df) {
  if (df <= 0.0) throw std::invalid_argument("chi_squared_upper_tail: df > 0");
  if (x <= 0.0) return 1.0;
  return gamma_q(df / 2.0, x / 2.0);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DataError("spearman: need two equal-length vectors, n >= 2");
  const std::vector<double> rx = midranks(x);
  const std::vector<double> ry = midranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = rx[i] - mx, dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw NumericError("spearman: constant ranks in one input");
  return sxy / std::sqrt(sxx * syy);
}

std::string format_p_value(double p) {
  if (p < 1e-15) return "<1e-15";
  return format_double(p);
}

}  // namespace npc
