#pragma once

#include <string>
#include <vector>

#include "npc/common.hpp"

namespace npc {

/// Values grouped by cluster label (or any factor); M >= 2 nonempty groups.
struct GroupedSamples {
  std::vector<std::vector<double>> groups;

  std::size_t group_count() const { return groups.size(); }
  std::size_t total_size() const;
  void validate() const;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double df = 0.0;                      // chi-square df (KW) or 0
  bool tie_correction_applied = false;  // ties were present in the pooled data
  bool exact = false;                   // p-value from exact enumeration
};

enum class WilcoxonMethod { Auto, Exact, Normal };

/// Midranks of the pooled vector: tied values share the average of the ranks
/// they occupy. Ranks start at 1.
std::vector<double> midranks(const std::vector<double>& values);

/// Kruskal-Wallis one-way analysis of variance by ranks, tie-corrected,
/// with a chi-square upper-tail p-value on M-1 degrees of freedom.
TestResult kruskal_wallis(const GroupedSamples& samples);

/// Two-sided Wilcoxon rank-sum test. Statistic is the rank-sum of `a`.
/// Auto: exact enumeration when min(|a|,|b|) < 8 and |a|+|b| <= 200,
/// otherwise normal approximation with tie-corrected variance and
/// continuity correction.
TestResult wilcoxon_rank_sum(const std::vector<double>& a,
                             const std::vector<double>& b,
                             WilcoxonMethod method = WilcoxonMethod::Auto);

struct BonferroniResult {
  double threshold = 0.0;
  std::vector<bool> significant;
};

BonferroniResult bonferroni(const std::vector<double>& p_values, double alpha);

/// Symmetric M x M matrix of pairwise two-sided Wilcoxon p-values.
/// Diagonal entries are NaN (marked absent).
std::vector<std::vector<double>> pairwise_wilcoxon_matrix(
    const GroupedSamples& samples);

/// Upper tail of the chi-square distribution, P(X >= x) with df degrees of
/// freedom, via the regularized incomplete gamma function.
double chi_squared_upper_tail(double x, double df);

/// Spearman rank correlation (Pearson correlation of midranks).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Renders p with the "never exactly zero" convention: values below 1e-15
/// print as "<1e-15".
std::string format_p_value(double p);

}  // namespace npc
