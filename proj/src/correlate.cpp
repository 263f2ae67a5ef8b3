#include "npc/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "npc/io.hpp"

namespace npc {

namespace {

constexpr double kEarthRadiusKm = 6371.0;
constexpr double kDegToRad = std::numbers::pi / 180.0;

double haversine_km(double lon1, double lat1, double lon2, double lat2) {
  const double p1 = lat1 * kDegToRad, p2 = lat2 * kDegToRad;
  const double dp = (lat2 - lat1) * kDegToRad;
  const double dl = (lon2 - lon1) * kDegToRad;
  const double a = std::sin(dp / 2) * std::sin(dp / 2) +
                   std::cos(p1) * std::cos(p2) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

bool point_in_polygon(double x, double y, const Polygon& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = poly[i][0], yi = poly[i][1];
    const double xj = poly[j][0], yj = poly[j][1];
    if ((yi > y) != (yj > y) &&
        x < (xj - xi) * (y - yi) / (yj - yi) + xi)
      inside = !inside;
  }
  return inside;
}

}  // namespace

void SlipField::validate() const {
  if (lon_nodes.size() < 2 || lat_nodes.size() < 2)
    throw DataError("slip field: need at least a 2 x 2 lattice");
  for (std::size_t i = 1; i < lon_nodes.size(); ++i)
    if (!(lon_nodes[i] > lon_nodes[i - 1]))
      throw DataError("slip field: lon axis not strictly increasing");
  for (std::size_t i = 1; i < lat_nodes.size(); ++i)
    if (!(lat_nodes[i] > lat_nodes[i - 1]))
      throw DataError("slip field: lat axis not strictly increasing");
  if (values.size() != nx() * ny())
    throw DataError("slip field: value count does not match lattice");
  for (double v : values)
    if (!std::isnan(v) && v < 0.0)
      throw DataError("slip field: negative slip value");
}

SlipField load_slip(const std::string& path) {
  const DelimitedFile file = read_delimited(path);
  const int c_lon = file.column("lon");
  const int c_lat = file.column("lat");
  const int c_slip = file.column("slip");
  if (c_lon < 0 || c_lat < 0 || c_slip < 0)
    throw DataError(path + ": slip file needs lon, lat, slip columns");

  struct Node {
    double lon, lat, slip;
  };
  std::vector<Node> nodes;
  std::vector<double> lons, lats;
  for (std::size_t r = 0; r < file.rows.size(); ++r) {
    const auto& row = file.rows[r];
    const std::string where = path + " row " + std::to_string(r + 2);
    if (row.size() <= static_cast<std::size_t>(std::max({c_lon, c_lat, c_slip})))
      throw DataError(where + ": too few columns");
    Node nd;
    nd.lon = parse_double(row[c_lon], where + " lon");
    nd.lat = parse_double(row[c_lat], where + " lat");
    const std::string sv = row[c_slip];
    nd.slip = (sv == "nan" || sv == "NaN" || sv.empty())
                  ? std::numeric_limits<double>::quiet_NaN()
                  : parse_double(sv, where + " slip");
    if (!std::isnan(nd.slip) && nd.slip < 0.0)
      throw DataError(where + ": negative slip " + sv);
    nodes.push_back(nd);
    lons.push_back(nd.lon);
    lats.push_back(nd.lat);
  }
  auto uniq = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(lons);
  uniq(lats);

  SlipField field;
  field.lon_nodes = lons;
  field.lat_nodes = lats;
  field.values.assign(lons.size() * lats.size(),
                      std::numeric_limits<double>::infinity());
  std::map<double, std::size_t> lon_idx, lat_idx;
  for (std::size_t i = 0; i < lons.size(); ++i) lon_idx[lons[i]] = i;
  for (std::size_t i = 0; i < lats.size(); ++i) lat_idx[lats[i]] = i;
  for (const Node& nd : nodes) {
    const std::size_t k = lat_idx[nd.lat] * lons.size() + lon_idx[nd.lon];
    if (!std::isinf(field.values[k]))
      throw DataError(path + ": duplicate lattice node (" +
                      format_double(nd.lon) + ", " + format_double(nd.lat) + ")");
    field.values[k] = nd.slip;
  }
  for (double v : field.values)
    if (std::isinf(v))
      throw DataError(path + ": incomplete lattice (missing nodes)");
  field.validate();
  return field;
}

void save_slip(const SlipField& field, const std::string& path) {
  std::ostringstream out;
  out << "lon,lat,slip\n";
  for (std::size_t iy = 0; iy < field.ny(); ++iy)
    for (std::size_t ix = 0; ix < field.nx(); ++ix)
      out << format_double(field.lon_nodes[ix]) << ','
          << format_double(field.lat_nodes[iy]) << ','
          << format_double(field.at(ix, iy)) << '\n';
  write_text_file(path, out.str());
}

std::vector<SlipSample> interpolate_slip(const SlipField& field,
                                         const PointMatrix& points) {
  field.validate();
  if (points.cols() != 2) throw DataError("interpolate_slip: points must be n x 2");
  std::vector<SlipSample> out(points.rows());
  const auto& xs = field.lon_nodes;
  const auto& ys = field.lat_nodes;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    const double x = points(i, 0), y = points(i, 1);
    if (x < xs.front() || x > xs.back() || y < ys.front() || y > ys.back()) {
      out[i] = {0.0, false};
      continue;
    }
    std::size_t ix = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
    std::size_t iy = std::upper_bound(ys.begin(), ys.end(), y) - ys.begin();
    ix = std::clamp<std::size_t>(ix, 1, xs.size() - 1) - 1;
    iy = std::clamp<std::size_t>(iy, 1, ys.size() - 1) - 1;
    const double v00 = field.at(ix, iy), v10 = field.at(ix + 1, iy);
    const double v01 = field.at(ix, iy + 1), v11 = field.at(ix + 1, iy + 1);
    if (std::isnan(v00) || std::isnan(v10) || std::isnan(v01) || std::isnan(v11)) {
      out[i] = {0.0, false};  // nodata cell
      continue;
    }
    const double tx = (x - xs[ix]) / (xs[ix + 1] - xs[ix]);
    const double ty = (y - ys[iy]) / (ys[iy + 1] - ys[iy]);
    const double v = (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 +
                     (1 - tx) * ty * v01 + tx * ty * v11;
    out[i] = {v, true};
  }
  return out;
}

double log_slip(double slip, double k) {
  if (slip < 0.0) throw DataError("log_slip: negative slip");
  if (!(k > 0.0)) throw DataError("log_slip: offset k must be positive");
  return std::log(k + slip);
}

MaskedGrid build_masked_grid(double lon_min, double lon_max, double lat_min,
                             double lat_max, std::size_t nx, std::size_t ny,
                             const std::vector<Polygon>& mask_polygons) {
  if (nx < 2 || ny < 2) throw DataError("masked grid: need nx, ny >= 2");
  if (!(lon_min < lon_max) || !(lat_min < lat_max))
    throw DataError("masked grid: degenerate bounding box");
  for (const Polygon& poly : mask_polygons) {
    if (poly.size() < 3) throw DataError("masked grid: polygon with < 3 vertices");
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto& a = poly[i];
      const auto& b = poly[(i + 1) % poly.size()];
      if (a[0] == b[0] && a[1] == b[1])
        throw DataError("masked grid: repeated consecutive polygon vertex");
    }
  }

  MaskedGrid grid;
  grid.nx = nx;
  grid.ny = ny;
  grid.lon_min = lon_min;
  grid.lon_max = lon_max;
  grid.lat_min = lat_min;
  grid.lat_max = lat_max;
  grid.retained = PointMatrix(0, 2);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const double y = lat_min + (lat_max - lat_min) * static_cast<double>(iy) /
                                   static_cast<double>(ny - 1);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double x = lon_min + (lon_max - lon_min) * static_cast<double>(ix) /
                                     static_cast<double>(nx - 1);
      bool keep = mask_polygons.empty();
      for (const Polygon& poly : mask_polygons)
        if (point_in_polygon(x, y, poly)) {
          keep = true;
          break;
        }
      if (keep) {
        const double row[2] = {x, y};
        grid.retained.push_row(row);
      }
    }
  }
  return grid;
}

void TrenchLine::validate() const {
  if (vertices.size() < 2) throw DataError("trench: need at least 2 vertices");
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i] == vertices[i - 1])
      throw DataError("trench: repeated consecutive vertex");
}

TrenchLine load_trench(const std::string& path) {
  const auto groups = read_vertex_groups(path);
  TrenchLine trench{groups.front()};
  trench.validate();
  return trench;
}

std::vector<double> trench_distance(const PointMatrix& points,
                                    const TrenchLine& trench) {
  trench.validate();
  if (points.cols() != 2) throw DataError("trench_distance: points must be n x 2");
  std::vector<double> out(points.rows(), 0.0);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    const double lon0 = points(i, 0), lat0 = points(i, 1);
    const double c = std::cos(lat0 * kDegToRad);
    const double kx = kEarthRadiusKm * kDegToRad * c;
    const double ky = kEarthRadiusKm * kDegToRad;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s + 1 < trench.vertices.size(); ++s) {
      const auto& a = trench.vertices[s];
      const auto& b = trench.vertices[s + 1];
      const double ax = (a[0] - lon0) * kx, ay = (a[1] - lat0) * ky;
      const double bx = (b[0] - lon0) * kx, by = (b[1] - lat0) * ky;
      const double dx = bx - ax, dy = by - ay;
      const double len2 = dx * dx + dy * dy;
      double t = len2 > 0.0 ? -(ax * dx + ay * dy) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double clon = a[0] + t * (b[0] - a[0]);
      const double clat = a[1] + t * (b[1] - a[1]);
      best = std::min(best, haversine_km(lon0, lat0, clon, clat));
    }
    out[i] = best;
  }
  return out;
}

std::vector<ScatterRow> scatter_table(const PointMatrix& points,
                                      const SlipField& field,
                                      const DensityModel& density,
                                      const std::vector<int>* labels,
                                      double k) {
  if (labels && labels->size() != points.rows())
    throw DataError("scatter_table: labels/points size mismatch");
  const std::vector<SlipSample> slip = interpolate_slip(field, points);
  const DensitySurface surface = kde_evaluate(density, points);
  std::vector<ScatterRow> rows(points.rows());
  for (std::size_t i = 0; i < points.rows(); ++i) {
    rows[i].lon = points(i, 0);
    rows[i].lat = points(i, 1);
    rows[i].log_slip = log_slip(slip[i].value, k);
    rows[i].log_density = surface.log_values[i];
    rows[i].cluster = labels ? (*labels)[i] : 0;
    rows[i].slip_in_domain = slip[i].in_domain;
  }
  return rows;
}

std::vector<ClusterSlipSummary> cluster_slip_summary(
    const Partition& partition, const std::vector<double>& slip_at_events,
    const std::vector<double>& trench_dist) {
  partition.validate();
  const std::size_t n = partition.labels.size();
  if (slip_at_events.size() != n || trench_dist.size() != n)
    throw DataError("cluster_slip_summary: input lengths differ");

  std::vector<ClusterSlipSummary> out;
  for (int cluster = 1; cluster <= partition.cluster_count; ++cluster) {
    ClusterSlipSummary s;
    s.cluster = cluster;
    double sum = 0.0, dist_sum = 0.0;
    s.slip_min = std::numeric_limits<double>::infinity();
    s.slip_max = -std::numeric_limits<double>::infinity();
    s.dist_min = std::numeric_limits<double>::infinity();
    s.dist_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (partition.labels[i] != cluster) continue;
      ++s.n;
      sum += slip_at_events[i];
      s.slip_min = std::min(s.slip_min, slip_at_events[i]);
      s.slip_max = std::max(s.slip_max, slip_at_events[i]);
      dist_sum += trench_dist[i];
      s.dist_min = std::min(s.dist_min, trench_dist[i]);
      s.dist_max = std::max(s.dist_max, trench_dist[i]);
    }
    if (s.n == 0) continue;
    s.slip_mean = sum / static_cast<double>(s.n);
    s.dist_mean = dist_sum / static_cast<double>(s.n);
    if (s.n >= 2) {
      double ss = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (partition.labels[i] != cluster) continue;
        const double d = slip_at_events[i] - s.slip_mean;
        ss += d * d;
      }
      s.slip_sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace npc
