#include "npc/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "npc/io.hpp"

namespace npc {

namespace {

constexpr long long kUsPerSecond = 1000000LL;
constexpr long long kUsPerDay = 86400LL * kUsPerSecond;

// Civil-calendar day count since 1970-01-01 (proleptic Gregorian).
long long days_from_civil(long long y, unsigned m, unsigned d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, long long* y, unsigned* m, unsigned* d) {
  z += 719468;
  const long long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long long yr = static_cast<long long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  *d = doy - (153 * mp + 2) / 5 + 1;
  *m = mp + (mp < 10 ? 3 : -9);
  *y = yr + (*m <= 2);
}

bool is_leap(long long y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(long long y, unsigned m) {
  static const unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return kDays[m - 1];
}

int column_index(const DelimitedFile& file, const std::string& token,
                 const std::string& role) {
  if (!token.empty() &&
      std::all_of(token.begin(), token.end(),
                  [](unsigned char c) { return std::isdigit(c); })) {
    const int idx = static_cast<int>(parse_int(token, "column index"));
    if (idx < 0 || static_cast<std::size_t>(idx) >= file.header.size())
      throw DataError("column index " + token + " for '" + role +
                      "' out of range");
    return idx;
  }
  const int idx = file.column(token);
  if (idx < 0)
    throw DataError("column '" + token + "' for '" + role + "' not found in header");
  return idx;
}

}  // namespace

long long parse_time_utc(const std::string& text) {
  const std::string s = trim(text);
  // YYYY-MM-DD[T ]HH:MM:SS[.ffffff][Z]
  auto fail = [&]() -> long long {
    throw DataError("cannot parse time '" + s + "' (expected ISO-8601 UTC)");
  };
  if (s.size() < 19) fail();
  auto digits = [&](std::size_t pos, std::size_t len) -> long long {
    long long v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
      v = v * 10 + (s[i] - '0');
    }
    return v;
  };
  if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') ||
      s[13] != ':' || s[16] != ':')
    fail();
  const long long year = digits(0, 4);
  const unsigned month = static_cast<unsigned>(digits(5, 2));
  const unsigned day = static_cast<unsigned>(digits(8, 2));
  const long long hh = digits(11, 2), mm = digits(14, 2), ss = digits(17, 2);
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month))
    fail();
  if (hh > 23 || mm > 59 || ss > 59) fail();

  long long frac_us = 0;
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t digits_read = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      if (digits_read < 6) frac_us = frac_us * 10 + (s[pos] - '0');
      ++digits_read;
      ++pos;
    }
    if (digits_read == 0) fail();
    for (std::size_t k = digits_read; k < 6; ++k) frac_us *= 10;
    if (digits_read > 6) fail();  // sub-microsecond precision unsupported
  }
  if (pos < s.size() && (s[pos] == 'Z' || s[pos] == 'z')) ++pos;
  if (pos != s.size()) fail();

  const long long days = days_from_civil(year, month, day);
  return days * kUsPerDay + ((hh * 60 + mm) * 60 + ss) * kUsPerSecond + frac_us;
}

std::string format_time_utc(long long time_us) {
  long long days = time_us / kUsPerDay;
  long long rem = time_us % kUsPerDay;
  if (rem < 0) {
    rem += kUsPerDay;
    --days;
  }
  long long y;
  unsigned m, d;
  civil_from_days(days, &y, &m, &d);
  const long long sec = rem / kUsPerSecond;
  const long long us = rem % kUsPerSecond;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lld", y, m,
                d, sec / 3600, (sec / 60) % 60, sec % 60);
  std::string out(buf);
  if (us != 0) {
    std::snprintf(buf, sizeof(buf), ".%06lld", us);
    std::string frac(buf);
    while (frac.back() == '0') frac.pop_back();
    out += frac;
  }
  out += 'Z';
  return out;
}

void SelectionWindow::validate() const {
  if (!(lon_min < lon_max)) throw DataError("selection window: lon_min >= lon_max");
  if (!(lat_min < lat_max)) throw DataError("selection window: lat_min >= lat_max");
  if (!std::isfinite(mag_min)) throw DataError("selection window: mag_min not finite");
  if (t_start && t_end && !(*t_start < *t_end))
    throw DataError("selection window: t_start >= t_end");
}

bool SelectionWindow::contains(const Event& e) const {
  if (e.lon < lon_min || e.lon > lon_max) return false;
  if (e.lat < lat_min || e.lat > lat_max) return false;
  if (e.mag < mag_min) return false;
  if (t_start && e.time_us < *t_start) return false;
  if (t_end && e.time_us > *t_end) return false;
  return true;
}

ColumnMap ColumnMap::parse(const std::string& spec) {
  ColumnMap map;
  for (const std::string& entry : split(spec, ',')) {
    const std::string t = trim(entry);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw DataError("column map: expected key=column in '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (value.empty()) throw DataError("column map: empty column for '" + key + "'");
    if (key == "lon")
      map.lon = value;
    else if (key == "lat")
      map.lat = value;
    else if (key == "mag")
      map.mag = value;
    else if (key == "time")
      map.time = value;
    else if (key == "id")
      map.id = value;
    else if (key == "depth")
      map.depth = value;
    else
      throw DataError("column map: unknown key '" + key + "'");
  }
  return map;
}

EventCatalog load_catalog(const std::string& path, const ColumnMap& map,
                          RowPolicy policy,
                          std::vector<std::string>* skipped_rows) {
  const DelimitedFile file = read_delimited(path);
  const int c_lon = column_index(file, map.lon, "lon");
  const int c_lat = column_index(file, map.lat, "lat");
  const int c_mag = column_index(file, map.mag, "mag");
  const int c_time = column_index(file, map.time, "time");
  const int c_id = map.id ? column_index(file, *map.id, "id") : -1;
  const int c_depth = map.depth ? column_index(file, *map.depth, "depth") : -1;

  EventCatalog catalog;
  catalog.provenance = path;
  std::set<long long> seen_ids;
  long long next_id = 1;
  for (std::size_t r = 0; r < file.rows.size(); ++r) {
    const auto& row = file.rows[r];
    const std::string where = "row " + std::to_string(r + 2);  // 1-based + header
    try {
      const int max_col = std::max({c_lon, c_lat, c_mag, c_time, c_id, c_depth});
      if (static_cast<std::size_t>(max_col) >= row.size())
        throw DataError(where + ": too few columns");
      Event e;
      e.lon = parse_double(row[c_lon], where + " lon");
      e.lat = parse_double(row[c_lat], where + " lat");
      e.mag = parse_double(row[c_mag], where + " mag");
      e.time_us = parse_time_utc(row[c_time]);
      if (!(e.lon >= -180.0 && e.lon <= 180.0))
        throw DataError(where + ": lon " + row[c_lon] + " outside [-180, 180]");
      if (!(e.lat >= -90.0 && e.lat <= 90.0))
        throw DataError(where + ": lat " + row[c_lat] + " outside [-90, 90]");
      if (!std::isfinite(e.mag))
        throw DataError(where + ": magnitude not finite");
      if (c_depth >= 0 && !trim(row[c_depth]).empty())
        e.depth = parse_double(row[c_depth], where + " depth");
      e.id = c_id >= 0 ? parse_int(row[c_id], where + " id") : next_id;
      if (!seen_ids.insert(e.id).second)
        throw DataError(where + ": duplicate event id " + std::to_string(e.id));
      ++next_id;
      catalog.events.push_back(e);
    } catch (const DataError& err) {
      if (policy == RowPolicy::Fail) throw;
      if (skipped_rows) skipped_rows->push_back(err.what());
    }
  }
  return catalog;
}

void save_catalog(const EventCatalog& catalog, const std::string& path) {
  std::ostringstream out;
  out << "id,lon,lat,depth,mag,time\n";
  for (const Event& e : catalog.events) {
    out << e.id << ',' << format_double(e.lon) << ',' << format_double(e.lat)
        << ',' << (e.depth ? format_double(*e.depth) : std::string{}) << ','
        << format_double(e.mag) << ',' << format_time_utc(e.time_us) << '\n';
  }
  write_text_file(path, out.str());
}

EventCatalog filter_catalog(const EventCatalog& catalog,
                            const SelectionWindow& window) {
  window.validate();
  EventCatalog out;
  out.provenance = catalog.provenance;
  for (const Event& e : catalog.events)
    if (window.contains(e)) out.events.push_back(e);
  return out;
}

PointMatrix catalog_points(const EventCatalog& catalog) {
  PointMatrix pts(catalog.size(), 2);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    pts(i, 0) = catalog.events[i].lon;
    pts(i, 1) = catalog.events[i].lat;
  }
  return pts;
}

}  // namespace npc
