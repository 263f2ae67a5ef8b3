#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "npc/cluster.hpp"
#include "npc/kde.hpp"

namespace npc {

/// Gridded coseismic slip (meters) on a rectilinear lon/lat lattice.
/// Values are >= 0; NaN nodes mark missing data and interpolate as
/// out-of-domain zeros.
struct SlipField {
  std::vector<double> lon_nodes;  // strictly increasing
  std::vector<double> lat_nodes;  // strictly increasing
  std::vector<double> values;     // [iy * nx + ix]

  std::size_t nx() const { return lon_nodes.size(); }
  std::size_t ny() const { return lat_nodes.size(); }
  double at(std::size_t ix, std::size_t iy) const {
    return values[iy * nx() + ix];
  }
  void validate() const;
};

/// Reads a complete (lon, lat, slip) lattice from delimited text with a
/// header. Row order is free; every lattice cell must appear exactly once.
SlipField load_slip(const std::string& path);
void save_slip(const SlipField& field, const std::string& path);

struct SlipSample {
  double value = 0.0;
  bool in_domain = true;  // false: outside the grid (or a nodata cell), value 0
};

/// Bilinear interpolation, exact at nodes. Points outside the bounding box
/// come back as 0 with in_domain = false (the rupture model vanishes off
/// its grid).
std::vector<SlipSample> interpolate_slip(const SlipField& field,
                                         const PointMatrix& points);

/// Natural log of (k + slip); k = 0.01 m by default so zero-slip points map
/// to log(0.01) ~ -4.605.
double log_slip(double slip, double k = 0.01);

using Polygon = std::vector<std::array<double, 2>>;

struct MaskedGrid {
  std::size_t nx = 0, ny = 0;
  double lon_min = 0, lon_max = 0, lat_min = 0, lat_max = 0;
  PointMatrix retained;  // lattice points inside at least one mask polygon
};

/// Regular nx x ny lattice over the box (endpoints included), retaining the
/// points inside any polygon by the even-odd rule.
MaskedGrid build_masked_grid(double lon_min, double lon_max, double lat_min,
                             double lat_max, std::size_t nx, std::size_t ny,
                             const std::vector<Polygon>& mask_polygons);

struct TrenchLine {
  std::vector<std::array<double, 2>> vertices;  // (lon, lat)

  void validate() const;
};

TrenchLine load_trench(const std::string& path);

/// Distance in km from each point to the polyline: the query-centered local
/// tangent (equirectangular) plane picks the closest point of each segment,
/// and the final distance is the haversine arc to it, Earth radius 6371 km.
/// Good to well under the stated tolerances at sub-500 km scales.
std::vector<double> trench_distance(const PointMatrix& points,
                                    const TrenchLine& trench);

struct ScatterRow {
  double lon = 0, lat = 0;
  double log_slip = 0;
  double log_density = 0;
  int cluster = 0;  // 0 when no labels supplied
  bool slip_in_domain = true;
};

/// One row per point pairing log-slip with log-density, plus the cluster
/// label in event mode.
std::vector<ScatterRow> scatter_table(const PointMatrix& points,
                                      const SlipField& field,
                                      const DensityModel& density,
                                      const std::vector<int>* labels,
                                      double k = 0.01);

struct ClusterSlipSummary {
  int cluster = 0;
  std::size_t n = 0;
  double slip_mean = 0, slip_min = 0, slip_max = 0;
  std::optional<double> slip_sd;  // absent for singleton clusters
  double dist_min = 0, dist_max = 0, dist_mean = 0;
};

std::vector<ClusterSlipSummary> cluster_slip_summary(
    const Partition& partition, const std::vector<double>& slip_at_events,
    const std::vector<double>& trench_dist);

}  // namespace npc
