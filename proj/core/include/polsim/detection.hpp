#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polsim/collapse.hpp"
#include "polsim/mcwf.hpp"

namespace polsim {

// Measurement chain behind the cavity: waveplate + polarizing beamsplitter
// routing into a short or a long (delay) fiber, 50:50 beamsplitter, two
// detectors with finite efficiency and dark counts.
struct DetectionConfig {
  enum class WaveplateMode {
    Polarizing,  // sigma+ -> short fiber, sigma- -> long fiber
    Balanced,    // 50:50 per polarization
  };

  WaveplateMode waveplate_mode = WaveplateMode::Balanced;
  double delay_long = 1.42e-6;  // s
  bool long_fiber_open = true;  // closed = photons routed long are discarded
  double bs_overlap = 0.98994949366116653;  // spatial mode-match amplitude
  double detector_efficiency = 0.05;
  double dark_rate = 0.0;  // counts/s per detector
  double bin_width = 150e-9;

  void validate() const;
};

enum class Detector { D1, D2 };

struct Click {
  double time = 0.0;
  Detector detector = Detector::D1;
};

struct ClickRecord {
  std::vector<Click> clicks;  // sorted by time after detect()
};

struct MirrorPhoton {
  double time = 0.0;
  Polarization pol = Polarization::SigmaPlus;
};

// Output-mirror photons of one emission record, in time order.
std::vector<MirrorPhoton> extract_mirror_photons(const EmissionRecord& record,
                                                 const std::vector<CollapseChannel>& channels);

// Photons routed through the chain and thinned by the detector efficiency,
// merged with Poisson dark counts over [window_begin, window_end].
ClickRecord detect(std::span<const MirrorPhoton> photons, const DetectionConfig& config,
                   double window_begin, double window_end, std::uint64_t seed);

// Full click-level simulation of an atom stream: `n_transits` atoms arrive
// as a Poisson process at transit.arrival_rate, each runs one quantum-jump
// trajectory against the continuously repeating pulse program, and the
// merged mirror photons pass through the detection chain.
struct StreamResult {
  std::vector<MirrorPhoton> photons;  // merged, global time axis
  ClickRecord clicks;
  double window_begin = 0.0;
  double window_end = 0.0;
  long n_transits = 0;
};

struct StreamOptions {
  int n_transits = 200;
  McwfOptions mcwf;
  int n_threads = 0;
};

StreamResult simulate_click_stream(const LevelScheme& scheme, const CavityConfig& cavity,
                                   const PulseProgram& program, const TransitModel& transit,
                                   double gamma, const DetectionConfig& detection,
                                   std::uint64_t seed, const StreamOptions& opts = {});

}  // namespace polsim
