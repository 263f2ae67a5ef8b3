#pragma once

#include <vector>

#include "npc/agreement.hpp"
#include "npc/catalog.hpp"
#include "npc/cluster.hpp"

namespace npc {

struct TemporalOptions {
  int start_day = 2;  // first comparison day; day 1 is the first UTC day
  int days = -1;      // number of comparison days; -1 = through the last event
  ClusterOptions cluster;
  RandExpectation ha_mode = RandExpectation::Standard;
};

struct TemporalRow {
  int day = 0;
  std::size_t n_common = 0;
  int k_today = 0;
  int k_previous = 0;
  bool skipped = false;  // cluster counts differ, indexes not comparable
  double nss = 0, hss = 0, hk = 0, ha = 0;
};

/// Day-over-day consistency: for each day t, cluster the cumulative catalog
/// through day t and through day t-1, restrict to the common (previous-day)
/// events, align labels by maximal-diagonal matching, and report the four
/// agreement indexes. Days whose cluster counts differ are recorded as
/// skipped. Day boundaries are UTC midnights; day 1 is the calendar day of
/// the earliest event.
std::vector<TemporalRow> temporal_consistency(const EventCatalog& catalog,
                                              const TemporalOptions& options);

}  // namespace npc
