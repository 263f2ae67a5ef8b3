#include "npc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace npc {

namespace {

constexpr long long kUsPerDay = 86400LL * 1000000LL;

std::vector<std::array<double, 2>> blob_layout(int blobs) {
  // Zigzag line running south along a Chile-like margin; adjacent centers
  // sit ~1.9 degrees apart, far beyond 10 sigma for the default sigma.
  std::vector<std::array<double, 2>> centers(blobs);
  for (int b = 0; b < blobs; ++b) {
    centers[b][0] = -71.8 - 1.6 * (b % 2);
    centers[b][1] = -33.8 - 1.1 * b;
  }
  return centers;
}

}  // namespace

void SynthOptions::validate() const {
  if (blobs < 1) throw DataError("synth: need at least 1 blob");
  if (days < 1) throw DataError("synth: need at least 1 day");
  if (!(sigma > 0.0)) throw DataError("synth: sigma must be positive");
  if (slip_patch_blobs.size() != slip_peaks.size())
    throw DataError("synth: one peak per slip patch required");
  for (int b : slip_patch_blobs)
    if (b < 1 || b > blobs)
      throw DataError("synth: slip patch blob id out of range");
  for (double p : slip_peaks)
    if (!(p > 0.0)) throw DataError("synth: slip peaks must be positive");
  if (slip_nx < 2 || slip_ny < 2) throw DataError("synth: slip grid too small");
}

SynthData synth(const SynthOptions& options) {
  options.validate();
  SynthData data;
  data.blob_centers = blob_layout(options.blobs);

  std::mt19937_64 rng(options.seed);
  const double lambda = static_cast<double>(options.expected_events) /
                        (static_cast<double>(options.blobs) *
                         static_cast<double>(options.days));
  std::poisson_distribution<int> arrivals(lambda);
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  std::uniform_real_distribution<double> in_day(0.0, 1.0);
  std::exponential_distribution<double> mag_excess(std::log(10.0));
  std::uniform_real_distribution<double> depth_km(5.0, 50.0);

  const long long t0 = parse_time_utc("2010-03-01T00:00:00Z");

  struct Draft {
    Event event;
    int blob;
  };
  std::vector<Draft> drafts;
  for (int day = 0; day < options.days; ++day) {
    for (int b = 0; b < options.blobs; ++b) {
      const int count = arrivals(rng);
      for (int k = 0; k < count; ++k) {
        Draft d;
        d.blob = b + 1;
        d.event.lon = data.blob_centers[b][0] + options.sigma * unit_normal(rng);
        d.event.lat = data.blob_centers[b][1] + options.sigma * unit_normal(rng);
        d.event.time_us =
            t0 + day * kUsPerDay +
            static_cast<long long>(in_day(rng) * static_cast<double>(kUsPerDay));
        d.event.mag = 2.0 + mag_excess(rng);
        d.event.depth = depth_km(rng);
        drafts.push_back(d);
      }
    }
  }
  std::stable_sort(drafts.begin(), drafts.end(),
                   [](const Draft& a, const Draft& b) {
                     return a.event.time_us < b.event.time_us;
                   });
  data.catalog.provenance = "synthetic";
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    drafts[i].event.id = static_cast<long long>(i) + 1;
    data.catalog.events.push_back(drafts[i].event);
    data.labels.push_back(drafts[i].blob);
  }

  // Slip raster: compact Gaussian patches on the chosen blobs, exactly zero
  // beyond 3 patch widths so control blobs see true zero slip. Patch centers
  // are inserted into the axes, putting each peak on a lattice node.
  double lon_lo = data.blob_centers[0][0], lon_hi = lon_lo;
  double lat_lo = data.blob_centers[0][1], lat_hi = lat_lo;
  for (const auto& c : data.blob_centers) {
    lon_lo = std::min(lon_lo, c[0]);
    lon_hi = std::max(lon_hi, c[0]);
    lat_lo = std::min(lat_lo, c[1]);
    lat_hi = std::max(lat_hi, c[1]);
  }
  lon_lo -= 1.2;
  lon_hi += 1.2;
  lat_lo -= 1.2;
  lat_hi += 1.2;

  auto make_axis = [](double lo, double hi, std::size_t n,
                      const std::vector<double>& extra) {
    std::vector<double> axis(n);
    for (std::size_t i = 0; i < n; ++i)
      axis[i] = lo + (hi - lo) * static_cast<double>(i) /
                         static_cast<double>(n - 1);
    axis.insert(axis.end(), extra.begin(), extra.end());
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    return axis;
  };
  std::vector<double> patch_lons, patch_lats;
  for (int b : options.slip_patch_blobs) {
    patch_lons.push_back(data.blob_centers[b - 1][0]);
    patch_lats.push_back(data.blob_centers[b - 1][1]);
  }
  data.slip.lon_nodes = make_axis(lon_lo, lon_hi, options.slip_nx, patch_lons);
  data.slip.lat_nodes = make_axis(lat_lo, lat_hi, options.slip_ny, patch_lats);

  const double rho = 3.0 * options.sigma;
  const double floor = std::exp(-4.5);  // bump value at r = 3 rho
  data.slip.values.assign(data.slip.nx() * data.slip.ny(), 0.0);
  for (std::size_t iy = 0; iy < data.slip.ny(); ++iy) {
    for (std::size_t ix = 0; ix < data.slip.nx(); ++ix) {
      double v = 0.0;
      for (std::size_t p = 0; p < options.slip_patch_blobs.size(); ++p) {
        const auto& c = data.blob_centers[options.slip_patch_blobs[p] - 1];
        const double dx = data.slip.lon_nodes[ix] - c[0];
        const double dy = data.slip.lat_nodes[iy] - c[1];
        const double bump =
            std::exp(-(dx * dx + dy * dy) / (2.0 * rho * rho)) - floor;
        if (bump > 0.0) v += options.slip_peaks[p] * bump / (1.0 - floor);
      }
      data.slip.values[iy * data.slip.nx() + ix] = v;
    }
  }
  data.slip.validate();

  const double trench_lon = lon_lo - 1.8;
  data.trench.vertices = {{trench_lon, lat_hi + 1.0},
                          {trench_lon, (lat_lo + lat_hi) / 2.0},
                          {trench_lon, lat_lo - 1.0}};
  data.trench.validate();
  return data;
}

}  // namespace npc
