#include "npc/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace npc {

namespace {

constexpr long long kUsPerDay = 86400LL * 1000000LL;

EventCatalog cumulative_through(const EventCatalog& catalog, long long cutoff_us) {
  EventCatalog out;
  out.provenance = catalog.provenance;
  for (const Event& e : catalog.events)
    if (e.time_us < cutoff_us) out.events.push_back(e);
  return out;
}

}  // namespace

std::vector<TemporalRow> temporal_consistency(const EventCatalog& catalog,
                                              const TemporalOptions& options) {
  if (catalog.size() < 2) throw DataError("temporal: catalog too small");
  if (options.start_day < 2)
    throw DataError("temporal: start day must be >= 2 (needs a previous day)");

  long long t_min = catalog.events.front().time_us;
  long long t_max = t_min;
  for (const Event& e : catalog.events) {
    t_min = std::min(t_min, e.time_us);
    t_max = std::max(t_max, e.time_us);
  }
  long long day0 = t_min / kUsPerDay;
  if (t_min < 0 && t_min % kUsPerDay != 0) --day0;  // floor toward past
  const long long origin_us = day0 * kUsPerDay;
  const int last_day = static_cast<int>((t_max - origin_us) / kUsPerDay) + 1;
  if (last_day < 2) throw DataError("temporal: catalog spans less than 2 days");

  int end_day = options.days < 0
                    ? last_day
                    : std::min(last_day, options.start_day + options.days - 1);

  std::vector<TemporalRow> rows;
  ClusterResult previous =
      pdf_cluster(cumulative_through(
                      catalog, origin_us + static_cast<long long>(
                                               options.start_day - 1) * kUsPerDay),
                  options.cluster);
  EventCatalog previous_catalog = cumulative_through(
      catalog,
      origin_us + static_cast<long long>(options.start_day - 1) * kUsPerDay);

  for (int day = options.start_day; day <= end_day; ++day) {
    const EventCatalog today_catalog = cumulative_through(
        catalog, origin_us + static_cast<long long>(day) * kUsPerDay);
    const ClusterResult today = pdf_cluster(today_catalog, options.cluster);

    TemporalRow row;
    row.day = day;
    row.n_common = previous_catalog.size();
    row.k_previous = previous.partition.cluster_count;
    row.k_today = today.partition.cluster_count;

    if (row.k_previous != row.k_today) {
      row.skipped = true;
      row.nss = row.hss = row.hk = row.ha =
          std::numeric_limits<double>::quiet_NaN();
    } else {
      // Common events are exactly the previous cumulative set; align by id.
      std::map<long long, int> today_label;
      for (std::size_t i = 0; i < today_catalog.size(); ++i)
        today_label[today_catalog.events[i].id] = today.partition.labels[i];
      std::vector<int> forecast, observed;
      forecast.reserve(previous_catalog.size());
      observed.reserve(previous_catalog.size());
      for (std::size_t i = 0; i < previous_catalog.size(); ++i) {
        forecast.push_back(previous.partition.labels[i]);
        observed.push_back(today_label.at(previous_catalog.events[i].id));
      }
      ContingencyTable table = contingency(forecast, observed);
      const std::vector<std::size_t> sigma = match_labels(table);
      std::vector<int> matched(forecast.size());
      for (std::size_t i = 0; i < forecast.size(); ++i)
        matched[i] = static_cast<int>(sigma[forecast[i] - 1]) + 1;
      table = contingency(matched, observed);
      const SkillScores scores = skill_scores(table);
      row.nss = scores.nss;
      row.hss = scores.hss;
      row.hk = scores.hk;
      row.ha = adjusted_rand(table, options.ha_mode);
    }
    rows.push_back(row);
    previous = today;
    previous_catalog = today_catalog;
  }
  if (rows.empty()) throw DataError("temporal: no comparison days");
  return rows;
}

}  // namespace npc
