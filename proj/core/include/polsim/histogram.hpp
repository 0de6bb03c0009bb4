#pragma once

#include <string>
#include <vector>

#include "polsim/detection.hpp"

namespace polsim {

// Coincidence counts versus detection-time difference tau = t(D2) - t(D1),
// on bins of width `bin_width` centered so that tau = 0 is a bin center.
struct CoincidenceHistogram {
  double bin_width = 0.0;
  std::vector<long> counts;
  std::string tag;  // "hbt", "parallel", "perpendicular"

  int n_bins() const { return static_cast<int>(counts.size()); }
  double bin_center(int i) const { return (i - (n_bins() - 1) / 2) * bin_width; }
  double bin_left(int i) const { return bin_center(i) - 0.5 * bin_width; }
  long total() const;
};

// All D1-D2 pairs with |tau| <= tau_max.
CoincidenceHistogram hbt_histogram(const ClickRecord& clicks, double bin_width, double tau_max);

// Counts inside |tau - k*period| < period/2 (k-th comb peak, both signs
// summed for k > 0).
std::vector<long> peak_window_counts(const CoincidenceHistogram& hist, double period);

// Counts around tau = 0 relative to the mean side-peak counts; the paper's
// multi-photon suppression figure of merit.
double center_peak_ratio(const CoincidenceHistogram& hist, double period);

}  // namespace polsim
