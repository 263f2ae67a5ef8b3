#pragma once

#include <vector>

#include "npc/common.hpp"

namespace npc {

/// Cross-counts n(F_i, O_j) between a forecast and an observed labeling of
/// the same events. Indices are 0-based internally; labels 1..K externally.
struct ContingencyTable {
  std::vector<std::vector<long long>> counts;  // [forecast][observed]

  std::size_t size() const { return counts.size(); }
  long long row_sum(std::size_t i) const;  // N(F_i)
  long long col_sum(std::size_t j) const;  // N(O_j)
  long long total() const;                 // N
  void validate() const;
};

/// Tally labels (values 1..K) into a K x K table; K is the largest label
/// seen in either list.
ContingencyTable contingency(const std::vector<int>& forecast_labels,
                             const std::vector<int>& observed_labels);

struct SkillScores {
  double nss = 0.0;  // proportion correct, [0,1]
  double hss = 0.0;  // Heidke, (-inf,1]
  double hk = 0.0;   // Hanssen-Kuipers, [-1,1]
};

SkillScores skill_scores(const ContingencyTable& table);

/// Hubert-Arabie expectation (standard) versus the variant with the extra
/// 1/2 factor (paper). Both normalize identical partitions to HA = 1.
enum class RandExpectation { Standard, Paper };

double adjusted_rand(const ContingencyTable& table,
                     RandExpectation mode = RandExpectation::Standard);

/// Permutation sigma over 0..K-1 renaming forecast labels so the diagonal
/// sum of counts[i][sigma[i]] is maximal. Exhaustive in lexicographic order
/// for K <= 8 (first maximizer wins); Jonker-Volgenant style assignment
/// beyond that.
std::vector<std::size_t> match_labels(const ContingencyTable& table);

}  // namespace npc
