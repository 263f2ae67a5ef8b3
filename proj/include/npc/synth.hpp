#pragma once

#include <cstdint>
#include <vector>

#include "npc/catalog.hpp"
#include "npc/correlate.hpp"

namespace npc {

/// Desk-scale stand-in for a real catalog plus slip model: a Gaussian-mixture
/// event cloud with per-blob daily Poisson arrivals, compact slip patches
/// centered on chosen blobs, and a straight trench west of everything.
struct SynthOptions {
  int blobs = 5;
  std::size_t expected_events = 1000;  // expected total over all days
  int days = 1;
  std::uint64_t seed = 1;
  double sigma = 0.1;                      // blob standard deviation, degrees
  std::vector<int> slip_patch_blobs = {1, 4};  // 1-based blob ids
  std::vector<double> slip_peaks = {16.6, 11.9};  // meters, one per patch
  std::size_t slip_nx = 96, slip_ny = 128;

  void validate() const;
};

struct SynthData {
  EventCatalog catalog;     // time-sorted, ids 1..n
  std::vector<int> labels;  // ground-truth blob per event, aligned to catalog
  SlipField slip;
  TrenchLine trench;
  std::vector<std::array<double, 2>> blob_centers;
};

/// Deterministic for a fixed option set: same seed, same files.
SynthData synth(const SynthOptions& options);

}  // namespace npc
