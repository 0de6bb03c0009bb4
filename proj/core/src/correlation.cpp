#include "polsim/correlation.hpp"

#include <atomic>
#include <thread>

namespace polsim {

double CorrelationSurface::emission_probability() const {
  const int n = static_cast<int>(times.size());
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    sum += 0.5 * (g(i, i).real() + g(i + 1, i + 1).real()) * (times[i + 1] - times[i]);
  }
  return sum;
}

std::vector<Complex> two_time_correlation(const DensityState& rho_t1,
                                          const TimeDependentHamiltonian& h,
                                          const std::vector<CollapseChannel>& channels,
                                          const SparseOp& channel_op,
                                          std::span<const double> t2_grid, double dt) {
  if (t2_grid.empty()) return {};
  if (t2_grid.front() < rho_t1.time - 1e-15)
    throw std::invalid_argument("t2 grid must start at or after t1");

  MasterEquation eq(h, channels);
  const SparseOp a_dag = SparseOp(channel_op.adjoint());
  Matrix lambda = channel_op * rho_t1.rho;

  std::vector<Complex> row(t2_grid.size());
  double t = rho_t1.time;
  for (std::size_t j = 0; j < t2_grid.size(); ++j) {
    eq.propagate(lambda, t, t2_grid[j], dt);
    t = t2_grid[j];
    row[j] = expectation(a_dag, lambda);
  }
  return row;
}

CorrelationSurface g1_surface(const TimeDependentHamiltonian& h,
                              const std::vector<CollapseChannel>& channels,
                              const DensityState& rho0, std::span<const double> t_grid,
                              const SparseOp& channel_op, const IntegratorOptions& opts,
                              double scale, int n_threads) {
  const int n = static_cast<int>(t_grid.size());
  CorrelationSurface surface;
  surface.times.assign(t_grid.begin(), t_grid.end());
  surface.g = Matrix::Zero(n, n);

  // One pass for rho(t) on the grid.
  MasterEquation eq(h, channels);
  std::vector<DensityState> states = eq.evolve(rho0, t_grid, opts);

  const SparseOp a_dag = SparseOp(channel_op.adjoint());

  std::atomic<int> next_row{0};
  auto worker = [&]() {
    MasterEquation row_eq(h, channels);
    for (;;) {
      const int i = next_row.fetch_add(1);
      if (i >= n) return;
      Matrix lambda = channel_op * states[i].rho;
      surface.g(i, i) = scale * expectation(a_dag, lambda);
      for (int j = i + 1; j < n; ++j) {
        row_eq.propagate(lambda, t_grid[j - 1], t_grid[j], opts.dt);
        surface.g(i, j) = scale * expectation(a_dag, lambda);
      }
    }
  };

  int workers = n_threads > 0 ? n_threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, n));
  std::vector<std::thread> pool;
  for (int i = 0; i + 1 < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // G1(t2,t1) = conj G1(t1,t2).
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) surface.g(j, i) = std::conj(surface.g(i, j));
  return surface;
}

}  // namespace polsim
