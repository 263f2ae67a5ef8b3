#include "npc/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace npc {

AlphaGrid AlphaGrid::density_quantiles(const std::vector<double>& densities,
                                       int count) {
  if (densities.empty()) throw DataError("alpha grid: no densities");
  if (count < 1) throw DataError("alpha grid: need at least one level");
  std::vector<double> sorted = densities;
  std::sort(sorted.begin(), sorted.end());

  AlphaGrid grid;
  grid.levels.reserve(count);
  const double n1 = static_cast<double>(sorted.size() - 1);
  for (int k = 1; k <= count; ++k) {
    const double q = static_cast<double>(k) / static_cast<double>(count + 1);
    const double pos = n1 * q;
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    const double value = lo + 1 < sorted.size()
                             ? sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
                             : sorted[lo];
    if (grid.levels.empty() || value > grid.levels.back())
      grid.levels.push_back(value);
  }
  grid.validate();
  return grid;
}

void AlphaGrid::validate() const {
  if (levels.empty()) throw DataError("alpha grid: empty");
  if (levels.front() < 0.0) throw DataError("alpha grid: negative level");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (!(levels[i] > levels[i - 1]))
      throw DataError("alpha grid: levels must be strictly increasing");
}

int ModeFunction::total_positive_increments() const {
  // Walk in increasing p (reverse of storage order), starting from the
  // conventional m = 0 at p = 0.
  int total = 0;
  int prev = 0;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    if (it->m > prev) total += it->m - prev;
    prev = it->m;
  }
  return total;
}

std::vector<int> ClusterTree::leaves() const {
  std::vector<int> out;
  for (const auto& node : nodes)
    if (node.leaf()) out.push_back(node.id);
  return out;
}

std::pair<ModeFunction, ClusterTree> build_mode_function(
    const std::vector<double>& densities, const TriangulationGraph& graph,
    const AlphaGrid& grid) {
  grid.validate();
  const std::size_t n = densities.size();
  if (n != graph.vertex_count)
    throw DataError("build_mode_function: densities/graph size mismatch");
  const double max_density = *std::max_element(densities.begin(), densities.end());

  ModeFunction mode;
  ClusterTree tree;
  std::vector<int> node_of(n, -1);  // current branch per point; -1 = unborn/dead
  std::vector<int> alive;           // branches present at the previous level

  for (std::size_t level = 0; level < grid.levels.size(); ++level) {
    const double alpha = grid.levels[level];
    if (alpha > max_density) {
      mode.clamped_levels = grid.levels.size() - level;
      break;
    }
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (densities[i] >= alpha) subset.push_back(i);

    const ComponentLabeling labeling = connected_components(graph, subset);
    mode.levels.push_back({alpha, static_cast<double>(subset.size()) /
                                      static_cast<double>(n),
                           labeling.component_count});

    std::vector<std::vector<std::size_t>> comps(labeling.component_count);
    for (std::size_t k = 0; k < subset.size(); ++k)
      comps[labeling.labels[k]].push_back(subset[k]);

    // Components nest level-over-level, so each component's previous branch
    // is shared by all its members.
    std::map<int, std::vector<std::size_t>> by_parent;  // branch -> comp ids
    for (std::size_t c = 0; c < comps.size(); ++c)
      by_parent[node_of[comps[c].front()]].push_back(c);

    std::vector<int> next_alive;
    for (const auto& [parent, comp_ids] : by_parent) {
      const bool chain = parent != -1 && comp_ids.size() == 1;
      for (const std::size_t c : comp_ids) {
        int node_id;
        if (chain) {
          node_id = parent;  // same branch, membership shrinking
        } else {
          node_id = static_cast<int>(tree.nodes.size());
          ClusterTreeNode node;
          node.id = node_id;
          node.parent = parent;
          node.start_level = static_cast<int>(level);
          node.start_alpha = alpha;
          node.members = comps[c];
          tree.nodes.push_back(std::move(node));
          if (parent != -1) tree.nodes[parent].children.push_back(node_id);
        }
        next_alive.push_back(node_id);
        for (const std::size_t i : comps[c]) node_of[i] = node_id;
      }
      if (parent != -1 && !chain)
        tree.nodes[parent].end_level = static_cast<int>(level) - 1;
    }
    // Branches with no surviving component die here and stay leaves.
    for (const int node : alive)
      if (!by_parent.count(node) && tree.nodes[node].end_level == -1)
        tree.nodes[node].end_level = static_cast<int>(level) - 1;
    for (std::size_t i = 0; i < n; ++i)
      if (node_of[i] != -1 && densities[i] < alpha) node_of[i] = -1;
    alive = std::move(next_alive);
  }

  const int last = static_cast<int>(mode.levels.size()) - 1;
  for (auto& node : tree.nodes)
    if (node.end_level == -1) node.end_level = last;
  return {std::move(mode), std::move(tree)};
}

std::vector<std::vector<std::size_t>> extract_cores(const ClusterTree& tree,
                                                    std::size_t min_core_size) {
  std::vector<std::vector<std::size_t>> cores;
  for (const auto& node : tree.nodes)
    if (node.leaf() && node.members.size() >= min_core_size)
      cores.push_back(node.members);
  if (cores.empty())
    throw NumericError(
        "extract_cores: no cluster core reaches the minimum size; lower --min-core");
  return cores;
}

void Partition::validate() const {
  if (labels.empty()) throw DataError("partition: empty");
  if (labels.size() != core_flag.size())
    throw DataError("partition: labels/core_flag size mismatch");
  for (int l : labels)
    if (l < 1 || l > cluster_count)
      throw DataError("partition: label outside 1..M");
}

Partition allocate(const std::vector<std::vector<std::size_t>>& cores,
                   const PointMatrix& points, const Bandwidths& bandwidths,
                   AllocationPolicy policy) {
  const std::size_t n = points.rows();
  const std::size_t m = cores.size();
  if (m == 0) throw DataError("allocate: no cores");
  bandwidths.validate();

  Partition part;
  part.labels.assign(n, 0);
  part.core_flag.assign(n, false);
  part.cluster_count = static_cast<int>(m);

  std::vector<std::vector<std::size_t>> members = cores;
  for (std::size_t j = 0; j < m; ++j) {
    if (cores[j].empty()) throw DataError("allocate: empty core");
    for (const std::size_t i : cores[j]) {
      if (part.labels[i] != 0) throw DataError("allocate: cores overlap");
      part.labels[i] = static_cast<int>(j) + 1;
      part.core_flag[i] = true;
    }
  }

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < n; ++i)
    if (part.labels[i] == 0) pending.push_back(i);
  if (pending.empty()) return part;

  if (m == 1) {
    for (const std::size_t i : pending) part.labels[i] = 1;
    return part;
  }

  // Decreasing full-sample density order; index breaks exact ties.
  DensityModel full{points, bandwidths};
  std::vector<double> density(n, 0.0);
  {
    const std::vector<double> all = kde_at_sample(full);
    density = all;
  }
  std::sort(pending.begin(), pending.end(), [&](std::size_t a, std::size_t b) {
    if (density[a] != density[b]) return density[a] > density[b];
    return a < b;
  });

  std::size_t batch_count;
  switch (policy) {
    case AllocationPolicy::Static:
      batch_count = 1;
      break;
    case AllocationPolicy::SequentialUpdate:
      batch_count = pending.size();
      break;
    case AllocationPolicy::BatchByDensity:
      batch_count = std::min<std::size_t>(10, pending.size());
      break;
    default:
      throw DataError("allocate: unknown policy");
  }

  std::size_t done = 0;
  for (std::size_t b = 0; b < batch_count; ++b) {
    const std::size_t hi = pending.size() * (b + 1) / batch_count;
    std::vector<std::pair<std::size_t, int>> staged;
    for (; done < hi; ++done) {
      const std::size_t i = pending[done];
      int best = -1;
      double best_log = -std::numeric_limits<double>::infinity();
      bool tie = false;
      for (std::size_t j = 0; j < m; ++j) {
        const double lf =
            kde_log_at(points, &members[j], bandwidths, points.row(i));
        if (lf > best_log) {
          best_log = lf;
          best = static_cast<int>(j);
          tie = false;
        } else if (lf == best_log) {
          tie = true;  // lower cluster id already held
        }
      }
      part.labels[i] = best + 1;
      if (tie) part.tie_events.push_back(i);
      staged.emplace_back(i, best);
    }
    for (const auto& [i, j] : staged) members[j].push_back(i);
  }
  return part;
}

ClusterResult pdf_cluster(const PointMatrix& points, const ClusterOptions& options) {
  if (points.cols() != 2) throw DataError("pdf_cluster: points must be n x 2");
  if (points.rows() < 3) throw DataError("pdf_cluster: need >= 3 events");
  if (!(options.bandwidth_scale > 0.0))
    throw DataError("pdf_cluster: bandwidth scale must be positive");

  ClusterResult result;
  Bandwidths bw = normal_reference_bandwidth(points);
  for (double& h : bw.h) h *= options.bandwidth_scale;
  result.model = DensityModel{points, std::move(bw)};
  result.model.validate();
  result.sample_density = kde_at_sample(result.model);
  result.graph = delaunay(points);

  const AlphaGrid grid =
      AlphaGrid::density_quantiles(result.sample_density, options.alpha_levels);
  std::tie(result.mode_function, result.tree) =
      build_mode_function(result.sample_density, result.graph, grid);

  const auto cores = extract_cores(result.tree, options.min_core_size);
  result.partition =
      allocate(cores, points, result.model.bandwidths, options.policy);
  return result;
}

ClusterResult pdf_cluster(const EventCatalog& catalog, const ClusterOptions& options) {
  return pdf_cluster(catalog_points(catalog), options);
}

}  // namespace npc
