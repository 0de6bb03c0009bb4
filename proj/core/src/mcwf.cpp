#include "polsim/mcwf.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace polsim {

QuantumJumpIntegrator::QuantumJumpIntegrator(const TimeDependentHamiltonian& h,
                                             const std::vector<CollapseChannel>& channels,
                                             const McwfOptions& opts)
    : h_(h), channels_(channels), opts_(opts) {
  const int dim = h.dimension();
  rate_sum_ = channels_.empty() ? SparseOp(dim, dim) : collapse_rate_sum(channels_);
  k1_ = k2_ = k3_ = k4_ = stage_ = saved_ = candidate_ = Vector::Zero(dim);
}

void QuantumJumpIntegrator::rhs(double t, const Vector& x, Vector& out) const {
  h_.apply(t, x, out);
  out *= Complex(0.0, -1.0);
  if (!channels_.empty()) out.noalias() -= 0.5 * (rate_sum_ * x);
}

void QuantumJumpIntegrator::rk4_step(Vector& psi, double t, double dt) const {
  rhs(t, psi, k1_);
  stage_ = psi + (0.5 * dt) * k1_;
  rhs(t + 0.5 * dt, stage_, k2_);
  stage_ = psi + (0.5 * dt) * k2_;
  rhs(t + 0.5 * dt, stage_, k3_);
  stage_ = psi + dt * k3_;
  rhs(t + dt, stage_, k4_);
  psi += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
}

McwfResult QuantumJumpIntegrator::run(const Vector& psi0, std::span<const double> t_grid,
                                      Rng& rng,
                                      const std::function<void(int, const Vector&)>& observe) const {
  if (t_grid.empty()) throw std::invalid_argument("empty time grid");
  if (std::abs(psi0.squaredNorm() - 1.0) > 1e-6)
    throw std::invalid_argument("initial state must be normalized");

  McwfResult result;
  Vector psi = psi0;
  psi.normalize();
  double threshold = rng.uniform_positive();

  if (observe) observe(0, psi);

  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double tb = t_grid[i];
    double t = t_grid[i - 1];
    while (t < tb - 1e-18) {
      const double h = std::min(opts_.dt, tb - t);
      saved_ = psi;
      rk4_step(psi, t, h);
      if (psi.squaredNorm() >= threshold) {
        t += h;
        continue;
      }
      // The norm crossed the jump threshold inside (t, t+h]; bisect for the
      // crossing time so that histogram bins never inherit the step size.
      double lo = 0.0, hi = h;
      candidate_ = psi;
      while (hi - lo > opts_.jump_time_tol) {
        const double mid = 0.5 * (lo + hi);
        Vector trial = saved_;
        rk4_step(trial, t, mid);
        if (trial.squaredNorm() < threshold) {
          hi = mid;
          candidate_ = trial;
        } else {
          lo = mid;
        }
      }
      const double t_jump = t + hi;
      if (candidate_.squaredNorm() < opts_.norm_floor)
        throw IntegrationError("state norm underflow in quantum-jump evolution", t_jump);

      // Channel choice proportional to ||C_k psi||^2.
      std::vector<double> weights(channels_.size());
      double total = 0.0;
      for (std::size_t k = 0; k < channels_.size(); ++k) {
        weights[k] = (channels_[k].op * candidate_).squaredNorm();
        total += weights[k];
      }
      if (total <= 0.0)
        throw IntegrationError("norm decreased but no collapse channel is active", t_jump);
      double u = rng.uniform() * total;
      std::size_t chosen = channels_.size() - 1;
      for (std::size_t k = 0; k < channels_.size(); ++k) {
        if (u < weights[k]) {
          chosen = k;
          break;
        }
        u -= weights[k];
      }
      psi = channels_[chosen].op * candidate_;
      psi.normalize();
      result.record.events.push_back({t_jump, static_cast<int>(chosen)});
      threshold = rng.uniform_positive();
      t = t_jump;
    }
    const double norm2 = psi.squaredNorm();
    if (norm2 < opts_.norm_floor)
      throw IntegrationError("state norm underflow in quantum-jump evolution", tb);
    const double norm = std::sqrt(norm2);
    psi /= norm;
    threshold /= norm2;
    if (observe) observe(static_cast<int>(i), psi);
  }
  result.state = psi;
  return result;
}

McwfResult mcwf_run(const Vector& psi0, const TimeDependentHamiltonian& h,
                    const std::vector<CollapseChannel>& channels,
                    std::span<const double> t_grid, std::uint64_t seed,
                    const McwfOptions& opts,
                    const std::function<void(int, const Vector&)>& observe) {
  QuantumJumpIntegrator integrator(h, channels, opts);
  Rng rng = Rng::for_stream(seed, 0);
  return integrator.run(psi0, t_grid, rng, observe);
}

EnsembleStats mcwf_ensemble(const InitialStateFn& initial_state,
                            const TimeDependentHamiltonian& h,
                            const std::vector<CollapseChannel>& channels,
                            std::span<const double> t_grid,
                            const std::vector<SparseOp>& observables,
                            const EnsembleOptions& opts) {
  const int n_times = static_cast<int>(t_grid.size());
  const int n_obs = static_cast<int>(observables.size());
  const int n_traj = opts.n_trajectories;

  // Fixed-size chunks accumulated independently and reduced in order keep
  // the result identical for any worker count.
  constexpr int kChunk = 32;
  const int n_chunks = (n_traj + kChunk - 1) / kChunk;

  std::vector<Eigen::MatrixXd> chunk_sum(n_chunks), chunk_sumsq(n_chunks);
  std::vector<std::vector<EmissionRecord>> chunk_records(n_chunks);

  std::atomic<int> next_chunk{0};
  auto worker = [&]() {
    QuantumJumpIntegrator integrator(h, channels, opts.mcwf);
    Eigen::MatrixXd values(n_obs, n_times);
    for (;;) {
      const int c = next_chunk.fetch_add(1);
      if (c >= n_chunks) return;
      const int begin = c * kChunk;
      const int end = std::min(n_traj, begin + kChunk);
      Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n_obs, n_times);
      Eigen::MatrixXd sumsq = Eigen::MatrixXd::Zero(n_obs, n_times);
      auto& records = chunk_records[c];
      if (opts.keep_records) records.resize(end - begin);
      for (int traj = begin; traj < end; ++traj) {
        Rng rng = Rng::for_stream(opts.seed, static_cast<std::uint64_t>(traj));
        Vector psi0 = initial_state(rng);
        auto observe = [&](int ti, const Vector& psi) {
          for (int o = 0; o < n_obs; ++o)
            values(o, ti) = expectation(observables[o], psi).real();
        };
        McwfResult res = integrator.run(psi0, t_grid, rng, n_obs > 0 ? observe : std::function<void(int, const Vector&)>());
        if (opts.keep_records) records[traj - begin] = std::move(res.record);
        if (n_obs > 0) {
          sum += values;
          sumsq += values.cwiseProduct(values);
        }
      }
      chunk_sum[c] = std::move(sum);
      chunk_sumsq[c] = std::move(sumsq);
    }
  };

  int n_threads = opts.n_threads > 0 ? opts.n_threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min(n_threads, n_chunks));
  std::vector<std::thread> pool;
  pool.reserve(n_threads - 1);
  for (int i = 0; i + 1 < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  EnsembleStats stats;
  stats.times.assign(t_grid.begin(), t_grid.end());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n_obs, n_times);
  Eigen::MatrixXd sumsq = Eigen::MatrixXd::Zero(n_obs, n_times);
  for (int c = 0; c < n_chunks; ++c) {
    sum += chunk_sum[c];
    sumsq += chunk_sumsq[c];
    if (opts.keep_records)
      for (auto& r : chunk_records[c]) stats.records.push_back(std::move(r));
  }
  if (n_obs > 0 && n_traj > 1) {
    stats.mean = sum / n_traj;
    Eigen::MatrixXd var =
        (sumsq - n_traj * stats.mean.cwiseProduct(stats.mean)) / (n_traj - 1.0);
    stats.std_error = (var.cwiseMax(0.0) / n_traj).cwiseSqrt();
  } else if (n_obs > 0) {
    stats.mean = sum;
    stats.std_error = Eigen::MatrixXd::Zero(n_obs, n_times);
  }
  return stats;
}

}  // namespace polsim
