#pragma once

// Multi-start Newton search for all pairwise-distinct solutions of a sector.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brc/bethe.hpp"
#include "brc/rigged.hpp"

namespace brc {

struct SolverConfig {
  double newton_tol = 1e-12;
  int max_iters = 200;
  double dedup_tol = 1e-8;
  double grid_lo = -12.0;
  double grid_hi = 12.0;
  double grid_step = 0.05;
  std::vector<double> string_seed_deviations{0.0, 1e-2, -1e-2, 1e-1, -1e-1};
  Precision precision = Precision::standard;
  std::size_t max_seeds = 400000;
  std::uint64_t rng_seed = 12345;
  int threads = 0;
  bool escalate = true;
  std::size_t random_restarts = 4000;
  /// Real-grid tuples are used only while their number stays below this.
  std::size_t real_grid_budget = 300000;
  /// Spacing divisor of the string-centre lattice; above 1 the dense lattice
  /// and real-grid seeds are added to the quantum-number seeds.
  int lattice_refinement = 1;
  /// Extra quantum-number slots on each side of the admissible window.
  int quantum_window = 1;
  /// Cap on fused-string seeds per content.
  std::size_t fusion_budget = 4000;

  void validate() const;
};

struct Seed {
  std::vector<Complex> roots;
  /// Roots are the ell-2 remaining rapidities of a singular solution.
  bool singular_core = false;
  /// Seed built from a string pattern (retried in extended precision).
  bool string_like = false;
};

struct CensusCounts {
  int real = 0;
  int complex = 0;
  int singular = 0;
  int physical = 0;
};

struct SectorCensus {
  int n_sites = 0;
  int ell = 0;
  std::optional<rigged::Partition> content_filter;
  std::vector<BetheSolution> solutions;
  CensusCounts counts;
  std::uint64_t rc_count = 0;
  /// Index-aligned with solutions; empty entries are unassigned.
  std::vector<std::optional<rigged::RiggedConfiguration>> assignment;
  std::vector<std::size_t> exceptional;
  bool assignment_heuristic = false;
  SolverConfig config;
  std::vector<std::string> notes;

  bool complete() const { return static_cast<std::uint64_t>(counts.physical) == rc_count; }
};

/// Thread count from the config, else BRC_THREADS, else hardware concurrency.
int resolve_threads(int requested);

std::vector<Seed> seed_set(int n, int ell, const SolverConfig& cfg,
                           const std::optional<rigged::Partition>& content = std::nullopt);

/// Random string-pattern seeds drawn from mt19937_64(cfg.rng_seed).
std::vector<Seed> random_seeds(int n, int ell, const SolverConfig& cfg, std::size_t count,
                               const std::optional<rigged::Partition>& content = std::nullopt);

/// Full-system Newton from a seed, with extended-precision polishing when the
/// binary64 result is not well determined. Empty on failure.
std::optional<BetheSolution> newton_refine(const std::vector<Complex>& seed, int n, const SolverConfig& cfg);

/// Singular solution {i/2, -i/2, core...} from a seed for the remaining roots.
std::optional<BetheSolution> singular_refine(const std::vector<Complex>& core_seed, int n, const SolverConfig& cfg);

SectorCensus solve_sector(int n, int ell, const SolverConfig& cfg,
                          const std::optional<rigged::Partition>& content_filter = std::nullopt);

void fill_counts(SectorCensus& census);

/// Root multisets equal within tol under greedy nearest matching.
double solution_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Symmetrize conjugate pairs, snap tiny parts to zero, pin +-i/2, sort.
std::vector<Complex> canonical_roots(std::vector<Complex> roots);

}  // namespace brc
