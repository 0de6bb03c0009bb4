#include "polsim/detection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "polsim/hamiltonian.hpp"
#include "polsim/sequence.hpp"
#include "polsim/transit.hpp"

namespace polsim {

namespace {
// Reserved stream indices so auxiliary draws never collide with the
// per-transit trajectory streams.
constexpr std::uint64_t kArrivalStream = 0xA221F00DULL << 32;
constexpr std::uint64_t kDetectorStream = 0xDE7EC7ULL << 40;
}  // namespace

void DetectionConfig::validate() const {
  if (detector_efficiency < 0.0 || detector_efficiency > 1.0)
    throw std::invalid_argument("detector efficiency must lie in [0,1]");
  if (bs_overlap < 0.0 || bs_overlap > 1.0)
    throw std::invalid_argument("bs_overlap must lie in [0,1]");
  if (dark_rate < 0.0) throw std::invalid_argument("dark rate must be nonnegative");
  if (bin_width <= 0.0) throw std::invalid_argument("bin width must be positive");
  if (delay_long < 0.0) throw std::invalid_argument("fiber delay must be nonnegative");
}

std::vector<MirrorPhoton> extract_mirror_photons(const EmissionRecord& record,
                                                 const std::vector<CollapseChannel>& channels) {
  std::vector<MirrorPhoton> photons;
  for (const auto& ev : record.events) {
    const auto& ch = channels[ev.channel];
    if (ch.kind == ChannelKind::MirrorOutput)
      photons.push_back({ev.time, ch.pol});
  }
  return photons;
}

ClickRecord detect(std::span<const MirrorPhoton> photons, const DetectionConfig& config,
                   double window_begin, double window_end, std::uint64_t seed) {
  config.validate();
  if (window_end < window_begin) throw std::invalid_argument("empty detection window");
  Rng rng = Rng::for_stream(seed, kDetectorStream);

  ClickRecord record;
  for (const auto& photon : photons) {
    bool long_path = false;
    if (config.waveplate_mode == DetectionConfig::WaveplateMode::Polarizing) {
      long_path = photon.pol == Polarization::SigmaMinus;
    } else {
      long_path = rng.bernoulli(0.5);
    }
    if (long_path && !config.long_fiber_open) continue;
    if (!rng.bernoulli(config.detector_efficiency)) continue;
    const double t = photon.time + (long_path ? config.delay_long : 0.0);
    const Detector det = rng.bernoulli(0.5) ? Detector::D2 : Detector::D1;
    record.clicks.push_back({t, det});
  }

  const double window = window_end - window_begin;
  if (config.dark_rate > 0.0 && window > 0.0) {
    for (Detector det : {Detector::D1, Detector::D2}) {
      const int n = rng.poisson(config.dark_rate * window);
      for (int i = 0; i < n; ++i)
        record.clicks.push_back({window_begin + window * rng.uniform(), det});
    }
  }

  std::sort(record.clicks.begin(), record.clicks.end(), [](const Click& a, const Click& b) {
    if (a.time != b.time) return a.time < b.time;
    return static_cast<int>(a.detector) < static_cast<int>(b.detector);
  });
  return record;
}

StreamResult simulate_click_stream(const LevelScheme& scheme, const CavityConfig& cavity,
                                   const PulseProgram& program, const TransitModel& transit,
                                   double gamma, const DetectionConfig& detection,
                                   std::uint64_t seed, const StreamOptions& opts) {
  program.validate();
  transit.validate();
  if (opts.n_transits < 1) throw std::invalid_argument("need at least one transit");
  if (transit.arrival_rate <= 0.0)
    throw std::invalid_argument("stream simulation needs a positive arrival rate");

  const CompositeSpace space = build_space(scheme, cavity);
  const auto channels = collapse_operators(space, scheme, cavity, gamma);
  const InitialStateFn sampler = initial_sampler(space, scheme, InitialAtomState::MixedEdges);

  // The lab pulse sequence runs continuously; each transit interacts with a
  // window of slots around its arrival time.
  const double t_window = transit.mode == TransitModel::Mode::Gaussian
                              ? transit.transit_duration
                              : program.total_duration();
  const int base = static_cast<int>(program.pulses.size());

  Rng arrivals = Rng::for_stream(seed, kArrivalStream);
  std::vector<double> centers(opts.n_transits);
  double t = t_window;  // start clear of the window edge
  for (int k = 0; k < opts.n_transits; ++k) {
    t += arrivals.exponential(transit.arrival_rate);
    centers[k] = t;
  }

  std::vector<std::vector<MirrorPhoton>> per_transit(opts.n_transits);

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int k = next.fetch_add(1);
      if (k >= opts.n_transits) return;
      const double center = centers[k];
      const long j0 = static_cast<long>(std::floor((center - 0.5 * t_window) / program.period));
      const double start = j0 * program.period;
      const int n_slots =
          static_cast<int>(std::ceil((center + 0.5 * t_window - start) / program.period));

      // Local program whose first slot matches the global pulse phase.
      PulseProgram local;
      local.period = program.period;
      local.repetitions = 1;
      local.pulses.reserve(n_slots);
      for (int s = 0; s < n_slots; ++s)
        local.pulses.push_back(program.pulse(static_cast<int>((j0 + s) % base + base) % base));

      TransitModel tm = transit;
      const double local_center = center - start;
      TimeDependentHamiltonian h = make_program_hamiltonian(
          space, scheme, cavity, local,
          [tm, local_center](double tl) { return tm.coupling_scale(tl - local_center); });

      std::vector<double> grid(n_slots + 1);
      for (int s = 0; s <= n_slots; ++s) grid[s] = s * program.period;

      QuantumJumpIntegrator integrator(h, channels, opts.mcwf);
      Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(k));
      Vector psi0 = sampler(rng);
      McwfResult res = integrator.run(psi0, grid, rng);
      auto photons = extract_mirror_photons(res.record, channels);
      for (auto& p : photons) p.time += start;
      per_transit[k] = std::move(photons);
    }
  };

  int n_threads = opts.n_threads > 0 ? opts.n_threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min(n_threads, opts.n_transits));
  std::vector<std::thread> pool;
  for (int i = 0; i + 1 < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  StreamResult result;
  result.n_transits = opts.n_transits;
  for (auto& v : per_transit)
    result.photons.insert(result.photons.end(), v.begin(), v.end());
  std::sort(result.photons.begin(), result.photons.end(),
            [](const MirrorPhoton& a, const MirrorPhoton& b) {
              if (a.time != b.time) return a.time < b.time;
              return polarization_q(a.pol) > polarization_q(b.pol);
            });
  result.window_begin = 0.0;
  result.window_end = centers.back() + t_window;
  result.clicks = detect(result.photons, detection, result.window_begin, result.window_end, seed);
  return result;
}

}  // namespace polsim
