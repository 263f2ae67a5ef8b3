#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "npc/common.hpp"

namespace npc {

/// One catalog row: a timestamped, magnitude-tagged 2-D location.
/// Times are UTC microseconds since the Unix epoch, which round-trips
/// exactly through the ISO-8601 text form.
struct Event {
  long long id = 0;
  double lon = 0.0;  // degrees east, negative west
  double lat = 0.0;  // degrees north, negative south
  std::optional<double> depth;  // km; unused by the 2-D method
  double mag = 0.0;             // local magnitude
  long long time_us = 0;

  bool operator==(const Event&) const = default;
};

struct EventCatalog {
  std::vector<Event> events;
  std::string provenance;

  std::size_t size() const { return events.size(); }
};

/// Geographic / magnitude / time selection. Defaults pass everything;
/// mag_min stays finite per the type contract.
struct SelectionWindow {
  double lon_min = -180.0, lon_max = 180.0;
  double lat_min = -90.0, lat_max = 90.0;
  double mag_min = std::numeric_limits<double>::lowest();
  std::optional<long long> t_start, t_end;  // microseconds, inclusive

  void validate() const;
  bool contains(const Event& e) const;
};

/// Names (or 0-based indices, when the token parses as an integer) of the
/// catalog columns. Parsed from "lon=<col>,lat=<col>,mag=<col>,time=<col>"
/// with optional id= and depth= entries.
struct ColumnMap {
  std::string lon = "lon";
  std::string lat = "lat";
  std::string mag = "mag";
  std::string time = "time";
  std::optional<std::string> id;
  std::optional<std::string> depth;

  static ColumnMap parse(const std::string& spec);
};

enum class RowPolicy { Fail, Skip };

/// Loads a delimited catalog with a header row. Invalid rows either abort
/// with the row number (Fail) or are skipped and reported (Skip). Without an
/// id column, ids are assigned sequentially from 1.
EventCatalog load_catalog(const std::string& path, const ColumnMap& map,
                          RowPolicy policy = RowPolicy::Fail,
                          std::vector<std::string>* skipped_rows = nullptr);

void save_catalog(const EventCatalog& catalog, const std::string& path);

/// Keeps the events satisfying every window bound, preserving order and ids.
EventCatalog filter_catalog(const EventCatalog& catalog,
                            const SelectionWindow& window);

/// n x 2 (lon, lat) matrix of the event locations.
PointMatrix catalog_points(const EventCatalog& catalog);

/// "YYYY-MM-DD[T ]HH:MM:SS[.ffffff][Z]", UTC -> microseconds since epoch.
long long parse_time_utc(const std::string& text);
std::string format_time_utc(long long time_us);

}  // namespace npc
