#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "arstat/bounds.hpp"
#include "arstat/econotest.hpp"
#include "arstat/model.hpp"
#include "arstat/report.hpp"
#include "arstat/roots.hpp"
#include "arstat/schur.hpp"
#include "arstat/simulate.hpp"

namespace arstat {

// Parameter-sweep protocol: one cell per (beta, delta) pair. Each cell runs
// `replications` seeded simulations of the lag-weight recursion
//   pi(t) = beta pi(t-1) + beta pi(t-2) + beta delta pi(t-3) + ... + u(t)
// and reports the majority unit-root-test category next to the analytic
// verdicts. The weights enter positively: that recursion crosses the
// explosive boundary exactly where the weight sum passes 1, which is the
// transition the sweep is probing; the signed model form stays inside the
// unit circle for every beta below 1.
struct GridConfig {
  std::vector<double> betas{0.0001, 0.3, 0.35, 0.4};
  std::vector<double> deltas{0.5, 0.55, 0.6, 0.65, 0.7};
  int k = 5;
  int replications = 20;
  std::uint64_t seed = 1;
  int n_steps = 500;
  int burn_in = -1;  // negative = 10 * k
  double innovation_sd = 1.0;
  int adf_max_lags = 8;
  double explosion_guard = 1e8;
  int workers = 0;   // 0 = hardware concurrency
};

struct GridRow {
  double beta = 0.0;
  double delta = 0.0;
  int k = 0;
  std::uint64_t cell_seed = 0;
  double beta_upper = 0.0;
  bool theorem_stationary = false;
  double max_modulus = 0.0;
  bool root_stationary = false;
  bool schur_all_positive = false;
  std::array<int, 4> category_counts{};  // indexed by StationarityCategory
  StationarityCategory majority = StationarityCategory::non_stationary;
  int explosive_runs = 0;
};

namespace detail {

inline std::vector<double> magnitude_weights(const GeometricARSpec& spec) {
  CoefficientVector b = build_coefficients(spec);
  for (double& w : b.b) w = -w;
  return b.b;
}

inline GridRow run_grid_cell(const GridConfig& config, double beta, double delta,
                             std::uint64_t cell_seed) {
  GridRow row;
  row.beta = beta;
  row.delta = delta;
  row.k = config.k;
  row.cell_seed = cell_seed;

  GeometricARSpec spec{beta, delta, config.k, 1e-8};
  // Tiny beta grid points may undercut the default truncation floor.
  spec.epsilon2 = std::min(1e-8, beta * std::pow(delta, config.k - 2) / 2.0);
  const StationarityBound bound = theorem_bound(spec);
  row.beta_upper = bound.beta_upper;
  row.theorem_stationary = beta > 0.0 && beta < bound.beta_upper;
  const CharPolynomial p = char_polynomial(spec);
  const RootVerdict root = is_stationary_by_roots(p);
  row.max_modulus = root.max_modulus;
  row.root_stationary = root.stationary;
  row.schur_all_positive = schur_stationarity(p).all_positive;

  SimulationConfig sim;
  sim.coefficients = magnitude_weights(spec);
  sim.n_steps = config.n_steps;
  sim.burn_in = config.burn_in >= 0 ? config.burn_in : 10 * config.k;
  sim.innovation_sd = config.innovation_sd;
  sim.explosion_guard = config.explosion_guard;
  for (int r = 0; r < config.replications; ++r) {
    sim.seed = replication_seed(cell_seed, r);
    const SimulationResult result = simulate(sim);
    StationarityCategory category = StationarityCategory::non_stationary;
    if (result.explosive) {
      ++row.explosive_runs;  // conclusive: the path left the guard band
    } else if (result.series.size() >= 25 + config.adf_max_lags) {
      category = adf_test(result.series, config.adf_max_lags).category;
    }
    ++row.category_counts[static_cast<int>(category)];
  }
  // Majority category; ties resolve toward the weaker evidence.
  int best = -1;
  for (int c = 0; c < 4; ++c) {
    if (row.category_counts[c] > best) {
      best = row.category_counts[c];
      row.majority = static_cast<StationarityCategory>(c);
    }
  }
  return row;
}

}  // namespace detail

// Cells execute concurrently; per-cell seeds are derived from the master seed
// and the cell's position (seed + 10007 * index), so results are independent
// of scheduling and worker count.
inline std::vector<GridRow> run_grid(const GridConfig& config) {
  if (config.betas.empty() || config.deltas.empty())
    throw std::invalid_argument("run_grid: beta and delta lists must be nonempty");
  if (config.replications < 1)
    throw std::invalid_argument("run_grid: replications must be >= 1");

  struct Cell {
    double beta, delta;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  cells.reserve(config.betas.size() * config.deltas.size());
  for (double delta : config.deltas)
    for (double beta : config.betas)
      cells.push_back({beta, delta, config.seed + 10007ull * cells.size()});

  std::vector<GridRow> rows(cells.size());
  unsigned workers = config.workers > 0 ? static_cast<unsigned>(config.workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, cells.size());

  // Reject bad parameters before any thread starts.
  for (const Cell& cell : cells) {
    GeometricARSpec spec{cell.beta, cell.delta, config.k, 1e-8};
    spec.epsilon2 = std::min(1e-8, cell.beta * std::pow(cell.delta, config.k - 2) / 2.0);
    validate(spec);
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    try {
      for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
        rows[i] = detail::run_grid_cell(config, cells[i].beta, cells[i].delta, cells[i].seed);
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

inline void grid_to_csv(const std::vector<GridRow>& rows, std::ostream& out) {
  out << "beta,delta,k,cell_seed,beta_upper,theorem_stationary,max_modulus,root_stationary,"
         "schur_all_positive,adf_majority,n_highly_strong,n_moderate,n_weak,n_non_stationary,"
         "n_explosive\n";
  for (const GridRow& r : rows) {
    out << fmt17(r.beta) << ',' << fmt17(r.delta) << ',' << r.k << ',' << r.cell_seed << ','
        << fmt17(r.beta_upper) << ',' << (r.theorem_stationary ? 1 : 0) << ','
        << fmt17(r.max_modulus) << ',' << (r.root_stationary ? 1 : 0) << ','
        << (r.schur_all_positive ? 1 : 0) << ',' << to_string(r.majority) << ','
        << r.category_counts[3] << ',' << r.category_counts[2] << ',' << r.category_counts[1]
        << ',' << r.category_counts[0] << ',' << r.explosive_runs << '\n';
  }
}

}  // namespace arstat
