#include "npc/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace npc {

std::string format_double(double v) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

double parse_double(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  if (t.empty()) throw DataError(what + ": empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE)
    throw DataError(what + ": cannot parse '" + t + "' as a number");
  return v;
}

long long parse_int(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  if (t.empty()) throw DataError(what + ": empty integer field");
  long long v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw DataError(what + ": cannot parse '" + t + "' as an integer");
  return v;
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == delim) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

int DelimitedFile::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

DelimitedFile read_delimited(const std::string& path, char delim) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  DelimitedFile out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      for (auto& f : split(line, delim)) out.header.push_back(trim(f));
      first = false;
      continue;
    }
    if (trim(line).empty()) continue;
    auto fields = split(line, delim);
    for (auto& f : fields) f = trim(f);
    out.rows.push_back(std::move(fields));
  }
  if (first) throw DataError("empty file: " + path);
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << content;
  if (!out) throw DataError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::array<double, 2>>> read_vertex_groups(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<std::vector<std::array<double, 2>>> groups;
  std::vector<std::array<double, 2>> cur;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty()) {
      if (!cur.empty()) groups.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    if (t[0] == '#') continue;
    std::string norm = t;
    for (char& c : norm)
      if (c == ',' || c == '\t') c = ' ';
    std::istringstream ss(norm);
    double lon = 0, lat = 0;
    if (!(ss >> lon >> lat))
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected 'lon lat' vertex");
    cur.push_back({lon, lat});
  }
  if (!cur.empty()) groups.push_back(std::move(cur));
  if (groups.empty()) throw DataError(path + ": no vertices found");
  return groups;
}

}  // namespace npc
