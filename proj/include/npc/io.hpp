#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "npc/common.hpp"

namespace npc {

/// Shortest round-trip decimal representation (std::to_chars). Re-parsing the
/// string recovers the exact double, which is what the catalog round-trip and
/// byte-identical-rerun contracts rely on.
std::string format_double(double v);

/// Parses a full string as a double; rejects trailing garbage and empty input.
double parse_double(const std::string& s, const std::string& what);
long long parse_int(const std::string& s, const std::string& what);

std::vector<std::string> split(const std::string& line, char delim);
std::string trim(const std::string& s);

struct DelimitedFile {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by header name; -1 when absent.
  int column(const std::string& name) const;
};

DelimitedFile read_delimited(const std::string& path, char delim = ',');

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Vertex lists: one "lon,lat" (or whitespace-separated) pair per line,
/// '#' comments ignored, polygons/polylines separated by blank lines.
std::vector<std::vector<std::array<double, 2>>> read_vertex_groups(
    const std::string& path);

}  // namespace npc
