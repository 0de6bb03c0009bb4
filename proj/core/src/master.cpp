#include "polsim/master.hpp"

#include <cmath>

namespace polsim {

MasterEquation::MasterEquation(const TimeDependentHamiltonian& h,
                               const std::vector<CollapseChannel>& channels)
    : h_(h), channels_(channels) {
  const int dim = h.dimension();
  c_adjoints_.reserve(channels_.size());
  for (const auto& ch : channels_) c_adjoints_.emplace_back(ch.op.adjoint());
  rate_sum_ = channels_.empty() ? SparseOp(dim, dim) : collapse_rate_sum(channels_);
  k1_ = k2_ = k3_ = k4_ = tmp_ = tmp2_ = stage_ = Matrix::Zero(dim, dim);
}

void MasterEquation::rhs(double t, const Matrix& m, Matrix& out) const {
  h_.apply_left(t, m, tmp_);
  h_.apply_right(t, m, tmp2_);
  out = Complex(0.0, -1.0) * (tmp_ - tmp2_);
  if (!channels_.empty()) {
    out.noalias() -= 0.5 * (rate_sum_ * m);
    out.noalias() -= 0.5 * (m * rate_sum_);
    for (std::size_t k = 0; k < channels_.size(); ++k) {
      tmp_.noalias() = channels_[k].op * m;
      out.noalias() += tmp_ * c_adjoints_[k];
    }
  }
}

void MasterEquation::step(Matrix& m, double t, double dt) const {
  rhs(t, m, k1_);
  stage_ = m + (0.5 * dt) * k1_;
  rhs(t + 0.5 * dt, stage_, k2_);
  stage_ = m + (0.5 * dt) * k2_;
  rhs(t + 0.5 * dt, stage_, k3_);
  stage_ = m + dt * k3_;
  rhs(t + dt, stage_, k4_);
  m += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
}

void MasterEquation::propagate(Matrix& m, double t0, double t1, double dt) const {
  if (t1 <= t0) return;
  const int n = std::max(1, static_cast<int>(std::ceil((t1 - t0) / dt)));
  const double h = (t1 - t0) / n;
  double t = t0;
  for (int i = 0; i < n; ++i, t = t0 + i * h) step(m, t, h);
}

void MasterEquation::evolve(const DensityState& rho0, std::span<const double> t_grid,
                            const IntegratorOptions& opts,
                            const std::function<void(int, const DensityState&)>& observe) const {
  if (t_grid.empty()) return;
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1])
      throw std::invalid_argument("time grid must be strictly increasing");

  const double span = t_grid.back() - t_grid.front();
  DensityState state{rho0.rho, t_grid.front()};
  const double trace0 = state.trace_real();
  observe(0, state);

  double dt = opts.dt;
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double ta = t_grid[i - 1];
    const double tb = t_grid[i];
    // Tolerance budget proportional to the interval length.
    const double tol = span > 0.0 ? opts.trace_tol * (tb - ta) / span : opts.trace_tol;
    const double trace_before = state.trace_real();
    for (;;) {
      Matrix trial = state.rho;
      const int n = std::max(1, static_cast<int>(std::ceil((tb - ta) / dt)));
      const double h = (tb - ta) / n;
      double t = ta;
      for (int k = 0; k < n; ++k, t = ta + k * h) step(trial, t, h);
      const double drift = std::abs(trial.trace().real() - trace_before);
      if (drift <= std::max(tol, 1e-15 * std::abs(trace0))) {
        state.rho.swap(trial);
        state.time = tb;
        break;
      }
      dt *= 0.5;
      if (dt < opts.dt_min)
        throw IntegrationError("trace tolerance not met at minimum step size", ta);
    }
    observe(static_cast<int>(i), state);
  }
}

std::vector<DensityState> MasterEquation::evolve(const DensityState& rho0,
                                                 std::span<const double> t_grid,
                                                 const IntegratorOptions& opts) const {
  std::vector<DensityState> out;
  out.reserve(t_grid.size());
  evolve(rho0, t_grid, opts, [&out](int, const DensityState& s) { out.push_back(s); });
  return out;
}

std::vector<DensityState> evolve_master(const DensityState& rho0,
                                        const TimeDependentHamiltonian& h,
                                        const std::vector<CollapseChannel>& channels,
                                        std::span<const double> t_grid,
                                        const IntegratorOptions& opts) {
  MasterEquation eq(h, channels);
  return eq.evolve(rho0, t_grid, opts);
}

std::vector<double> linspace(double t0, double t1, int n_intervals) {
  std::vector<double> grid(n_intervals + 1);
  for (int i = 0; i <= n_intervals; ++i)
    grid[i] = t0 + (t1 - t0) * (static_cast<double>(i) / n_intervals);
  return grid;
}

}  // namespace polsim
