#include "polsim/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polsim {

long CoincidenceHistogram::total() const {
  long sum = 0;
  for (long c : counts) sum += c;
  return sum;
}

CoincidenceHistogram hbt_histogram(const ClickRecord& clicks, double bin_width, double tau_max) {
  if (bin_width <= 0.0) throw std::invalid_argument("bin width must be positive");
  if (tau_max <= 0.0) throw std::invalid_argument("tau_max must be positive");

  CoincidenceHistogram hist;
  hist.bin_width = bin_width;
  hist.tag = "hbt";
  const int half = static_cast<int>(std::ceil(tau_max / bin_width - 0.5));
  const int n_bins = 2 * half + 1;
  hist.counts.assign(n_bins, 0);

  std::vector<double> d1, d2;
  for (const auto& c : clicks.clicks)
    (c.detector == Detector::D1 ? d1 : d2).push_back(c.time);

  // Two-pointer sweep over the sorted streams.
  std::size_t lo = 0;
  for (const double t1 : d1) {
    while (lo < d2.size() && d2[lo] < t1 - tau_max) ++lo;
    for (std::size_t j = lo; j < d2.size() && d2[j] <= t1 + tau_max; ++j) {
      const double tau = d2[j] - t1;
      const int bin = half + static_cast<int>(std::lround(tau / bin_width));
      if (bin >= 0 && bin < n_bins) ++hist.counts[bin];
    }
  }
  return hist;
}

std::vector<long> peak_window_counts(const CoincidenceHistogram& hist, double period) {
  if (period <= 0.0) throw std::invalid_argument("period must be positive");
  const double tau_span = hist.bin_center(hist.n_bins() - 1);
  const int k_max = static_cast<int>(std::floor((tau_span + 0.5 * period) / period));
  std::vector<long> windows(std::max(0, k_max + 1), 0);
  for (int i = 0; i < hist.n_bins(); ++i) {
    const double tau = hist.bin_center(i);
    const int k = static_cast<int>(std::lround(std::abs(tau) / period));
    if (k < static_cast<int>(windows.size()) && std::abs(std::abs(tau) - k * period) < 0.5 * period)
      windows[k] += hist.counts[i];
  }
  return windows;
}

double center_peak_ratio(const CoincidenceHistogram& hist, double period) {
  const auto windows = peak_window_counts(hist, period);
  if (windows.size() < 2) throw std::invalid_argument("histogram narrower than one period");
  double side_sum = 0.0;
  for (std::size_t k = 1; k < windows.size(); ++k) side_sum += windows[k];
  // Side windows for k > 0 cover both signs of tau; the center window covers
  // one period around zero. Compare per-window averages.
  const double side_mean = side_sum / (2.0 * (windows.size() - 1));
  if (side_mean <= 0.0) return windows[0] > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  return windows[0] / side_mean;
}

}  // namespace polsim
