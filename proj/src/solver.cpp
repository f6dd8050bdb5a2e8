#include "brc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "brc/newton.hpp"
#include "brc/strings.hpp"

namespace brc {

void SolverConfig::validate() const {
  if (!(newton_tol > 0) || !(dedup_tol > 0)) throw std::invalid_argument("solver tolerances must be positive");
  if (!(dedup_tol > newton_tol)) throw std::invalid_argument("dedup_tol must exceed newton_tol");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");
  if (!(grid_step > 0) || !(grid_hi > grid_lo)) throw std::invalid_argument("bad seed grid");
  if (lattice_refinement < 1) throw std::invalid_argument("lattice_refinement must be >= 1");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BRC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(1, count / 8))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

newton::Options standard_options(const SolverConfig& cfg) {
  newton::Options o;
  o.tol = cfg.newton_tol;
  o.max_iters = cfg.max_iters;
  o.dedup_tol = cfg.dedup_tol;
  o.stable_tol = 1e-9;
  return o;
}

newton::Options extended_options(const SolverConfig& cfg) {
  newton::Options o;
  o.tol = 1e-40;
  o.max_iters = std::max(cfg.max_iters, 120);
  o.max_slow_steps = 8;
  o.dedup_tol = cfg.dedup_tol;
  o.stable_tol = 1e-25;
  o.polish_steps = 2;
  return o;
}

constexpr double kNearSingular = 1e-3;
// Closer roots are a repeated root spread by rounding, not a solution.
constexpr double kMinSeparation = 1e-3;

/// True for points where some root pair approaches i/2 and -i/2.
bool near_singular(const std::vector<Complex>& roots) {
  const Complex h(0.0, 0.5);
  bool up = false, down = false;
  for (const auto& z : roots) {
    up = up || std::abs(z - h) < kNearSingular;
    down = down || std::abs(z + h) < kNearSingular;
  }
  return up && down;
}

bool distinct(const std::vector<Complex>& roots, double tol) {
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t b = a + 1; b < roots.size(); ++b)
      if (std::abs(roots[a] - roots[b]) < tol) return false;
  return true;
}

struct Candidate {
  std::vector<Complex> roots;
  double residual = 0.0;
};

enum class Outcome { accepted, unstable, failed, rejected };

struct SeedResult {
  Outcome outcome = Outcome::failed;
  std::vector<Complex> roots;
};

std::vector<Complex> with_singular_pair(const std::vector<Complex>& core) {
  std::vector<Complex> roots{Complex(0.0, 0.5), Complex(0.0, -0.5)};
  roots.insert(roots.end(), core.begin(), core.end());
  return roots;
}

/// One seed in binary64.
SeedResult run_standard(const Seed& seed, int n, const SolverConfig& cfg) {
  SeedResult out;
  const auto sys = seed.singular_core ? newton::System::singular_core(n) : newton::System::full(n);
  if (seed.singular_core && seed.roots.empty()) {
    out.outcome = Outcome::accepted;
    out.roots = with_singular_pair({});
    return out;
  }
  auto r = newton::refine<Complex>(sys, seed.roots, standard_options(cfg));
  if (!r.ok()) return out;
  if (seed.singular_core) {
    auto full = with_singular_pair(r.roots);
    if (near_singular(r.roots) || !distinct(full, kNearSingular)) {
      out.outcome = Outcome::rejected;
      return out;
    }
  } else if (near_singular(r.roots)) {
    out.outcome = Outcome::rejected;
    out.roots = r.roots;
    return out;
  }
  out.outcome = r.stable ? Outcome::accepted : Outcome::unstable;
  out.roots = seed.singular_core ? with_singular_pair(r.roots) : r.roots;
  return out;
}

/// Extended-precision Newton from a starting point (full roots or a core).
std::optional<std::vector<Complex>> run_extended(const std::vector<Complex>& start, bool singular_core, int n,
                                                 const SolverConfig& cfg) {
  const auto sys = singular_core ? newton::System::singular_core(n) : newton::System::full(n);
  auto r = newton::refine<XComplex>(sys, lift_all<XComplex>(start), extended_options(cfg));
  if (!r.ok() || !r.stable) return std::nullopt;
  auto roots = lower_all(r.roots);
  if (near_singular(roots)) return std::nullopt;
  if (singular_core) {
    roots = with_singular_pair(roots);
    if (!distinct(roots, kNearSingular)) return std::nullopt;
  }
  return roots;
}

/// Some pair lies within 1e-6 of an exact 2-string. Near such points the
/// cleared equations are flat, so a small Newton step proves nothing.
bool has_tight_pair(const std::vector<Complex>& roots) {
  for (const auto& a : roots)
    for (const auto& b : roots)
      if (std::abs(a - b - Complex(0.0, 1.0)) < 1e-6) return true;
  return false;
}

/// A near-exact 2-string whose deviation is below the working precision:
/// fix its centre from the reduced system, then polish the full set if possible.
std::optional<std::vector<Complex>> run_exact_pair(const std::vector<Complex>& start, int n, const SolverConfig& cfg) {
  const Complex i1(0.0, 1.0);
  std::size_t ua = start.size(), lb = start.size();
  double best = 1e-3;
  for (std::size_t a = 0; a < start.size(); ++a)
    for (std::size_t b = 0; b < start.size(); ++b) {
      if (a == b) continue;
      const double d = std::abs(start[a] - start[b] - i1);
      if (d < best) {
        best = d;
        ua = a;
        lb = b;
      }
    }
  if (ua == start.size()) return std::nullopt;
  std::vector<Complex> y{0.5 * (start[ua] + start[lb])};
  for (std::size_t k = 0; k < start.size(); ++k)
    if (k != ua && k != lb) y.push_back(start[k]);

  auto first = newton::refine_exact_pair<Complex>(n, y, standard_options(cfg));
  if (!first.ok()) return std::nullopt;
  auto second = newton::refine_exact_pair<XComplex>(n, lift_all<XComplex>(first.roots), extended_options(cfg));
  if (!second.ok() || !second.stable) return std::nullopt;
  const XComplex x = second.roots[0];
  if (abs_d(x) < 1e-6) return std::nullopt;  // the singular pair is handled on the core

  std::vector<XComplex> full{x + half_i<XComplex>(), x - half_i<XComplex>()};
  full.insert(full.end(), second.roots.begin() + 1, second.roots.end());
  auto polished = newton::refine<XComplex>(newton::System::full(n), full, extended_options(cfg));
  auto roots = lower_all(polished.ok() && polished.stable ? polished.roots : full);
  if (!distinct(roots, cfg.dedup_tol)) return std::nullopt;
  return roots;
}

std::vector<Complex> core_of(const std::vector<Complex>& roots) {
  std::vector<Complex> out;
  for (const auto& z : roots)
    if (z != Complex(0.0, 0.5) && z != Complex(0.0, -0.5)) out.push_back(z);
  return out;
}

bool is_pinned_singular(const std::vector<Complex>& roots) {
  return std::count(roots.begin(), roots.end(), Complex(0.0, 0.5)) == 1 &&
         std::count(roots.begin(), roots.end(), Complex(0.0, -0.5)) == 1;
}

bool lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() > b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() > b[i].imag();
  }
  return a.size() < b.size();
}

class Search {
 public:
  Search(int n, int ell, const SolverConfig& cfg) : n_(n), ell_(ell), cfg_(cfg), threads_(resolve_threads(cfg.threads)) {}

  /// Runs the seeds; unstable results and (optionally) failed string seeds go
  /// through extended precision.
  void run(const std::vector<Seed>& seeds, bool extended_retry) {
    std::vector<SeedResult> results(seeds.size());
    parallel_for(seeds.size(), threads_, [&](std::size_t i) { results[i] = run_standard(seeds[i], n_, cfg_); });

    std::vector<Start> to_polish;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const auto& r = results[i];
      if (r.outcome == Outcome::accepted) {
        if (cfg_.precision == Precision::extended || (!seeds[i].singular_core && has_tight_pair(r.roots)))
          to_polish.push_back({r.roots, false, false});
        else
          add(r.roots);
      } else if (r.outcome == Outcome::unstable) {
        to_polish.push_back({r.roots, false, false});
      } else if (r.outcome == Outcome::rejected && !r.roots.empty()) {
        to_polish.push_back({r.roots, false, true});
      } else if (r.outcome == Outcome::failed && extended_retry && seeds[i].string_like) {
        if (seeds[i].singular_core) to_polish.push_back({with_singular_pair(seeds[i].roots), true, false});
        else to_polish.push_back({seeds[i].roots, false, false});
      }
    }
    polish(to_polish);
  }

  SectorCensus finish(const std::optional<rigged::Partition>& filter) const {
    SectorCensus census;
    census.n_sites = n_;
    census.ell = ell_;
    census.content_filter = filter;
    census.config = cfg_;
    for (const auto& c : uniques_) {
      BetheSolution sol = bethe::make_solution(n_, c.roots);
      if (filter) {
        auto content = strings::infer_content(sol);
        if (!content || *content != *filter) continue;
      }
      census.solutions.push_back(std::move(sol));
    }
    std::sort(census.solutions.begin(), census.solutions.end(),
              [](const BetheSolution& a, const BetheSolution& b) { return lex_less(a.roots, b.roots); });
    const auto shape = rigged::SectorShape::spin_half(n_);
    census.rc_count = filter ? rigged::count_rigged_configs(shape, *filter) : rigged::count_rigged_configs(shape, ell_);
    census.assignment.assign(census.solutions.size(), std::nullopt);
    fill_counts(census);
    return census;
  }

  std::size_t unique_count() const { return uniques_.size(); }

 private:
  struct Start {
    std::vector<Complex> roots;
    bool core = false;
    /// Only the exact-pair reduction is tried (the full point sits near +-i/2).
    bool pair_only = false;
  };

  void polish(std::vector<Start>& items) {
    // loose merge first so equivalent starting points are polished once
    std::vector<Start> starts;
    std::vector<std::vector<Complex>> keys;
    for (auto& it : items) {
      auto key = canonical_roots(it.roots);
      bool seen = false;
      for (std::size_t j = 0; j < starts.size() && !seen; ++j)
        seen = starts[j].core == it.core && starts[j].pair_only == it.pair_only && solution_distance(keys[j], key) < 1e-10;
      if (seen) continue;
      starts.push_back(std::move(it));
      keys.push_back(std::move(key));
    }
    std::vector<std::optional<std::vector<Complex>>> out(starts.size());
    parallel_for(starts.size(), threads_, [&](std::size_t i) {
      const auto& st = starts[i];
      const bool core = st.core || is_pinned_singular(st.roots);
      if (!st.pair_only) out[i] = run_extended(core ? core_of(st.roots) : st.roots, core, n_, cfg_);
      if (!out[i] && !core) out[i] = run_exact_pair(st.roots, n_, cfg_);
    });
    for (auto& o : out)
      if (o) add(*o);
  }

  void add(const std::vector<Complex>& raw) {
    auto roots = canonical_roots(raw);
    if (!distinct(roots, std::max(cfg_.dedup_tol, kMinSeparation))) return;
    const double res = bethe::residual_norm(roots, n_);
    if (!(res < cfg_.newton_tol)) return;
    for (auto& u : uniques_) {
      if (solution_distance(u.roots, roots) < cfg_.dedup_tol) {
        if (res < u.residual || (res == u.residual && lex_less(roots, u.roots))) u = Candidate{roots, res};
        return;
      }
    }
    uniques_.push_back(Candidate{std::move(roots), res});
  }

  int n_;
  int ell_;
  SolverConfig cfg_;
  int threads_;
  std::vector<Candidate> uniques_;
};

}  // namespace

std::vector<Complex> canonical_roots(std::vector<Complex> roots) {
  const double pair_tol = 1e-9;
  std::vector<bool> done(roots.size(), false);
  for (std::size_t a = 0; a < roots.size(); ++a) {
    if (done[a]) continue;
    std::size_t best = roots.size();
    double best_d = pair_tol * std::max(1.0, std::abs(roots[a]));
    for (std::size_t b = a; b < roots.size(); ++b) {
      if (done[b]) continue;
      const double d = std::abs(roots[b] - std::conj(roots[a]));
      if (d < best_d) {
        best_d = d;
        best = b;
      }
    }
    if (best == roots.size()) continue;
    if (best == a) {
      roots[a] = {roots[a].real(), 0.0};
    } else {
      const Complex m = 0.5 * (roots[a] + std::conj(roots[best]));
      roots[a] = m;
      roots[best] = std::conj(m);
      done[best] = true;
    }
    done[a] = true;
  }
  for (auto& z : roots) {
    double re = std::abs(z.real()) < 1e-13 ? 0.0 : z.real();
    double im = std::abs(z.imag()) < 1e-13 ? 0.0 : z.imag();
    z = {re, im};
    if (std::abs(z - Complex(0.0, 0.5)) < bethe::kSingularTol) z = {0.0, 0.5};
    if (std::abs(z - Complex(0.0, -0.5)) < bethe::kSingularTol) z = {0.0, -0.5};
  }
  bethe::canonical_sort(roots);
  return roots;
}

double solution_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return INFINITY;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& z : a) {
    std::size_t best = b.size();
    double best_d = INFINITY;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(z - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

std::optional<BetheSolution> newton_refine(const std::vector<Complex>& seed, int n, const SolverConfig& cfg) {
  if (seed.empty()) throw std::invalid_argument("newton_refine: empty seed");
  Seed s;
  s.roots = seed;
  auto r = run_standard(s, n, cfg);
  std::optional<std::vector<Complex>> roots;
  if (r.outcome == Outcome::accepted && cfg.precision == Precision::standard && !has_tight_pair(r.roots))
    roots = r.roots;
  else if (r.outcome == Outcome::accepted || r.outcome == Outcome::unstable) {
    roots = run_extended(r.roots, false, n, cfg);
    if (!roots) roots = run_exact_pair(r.roots, n, cfg);
  } else if (r.outcome == Outcome::rejected) {
    if (auto pair = run_exact_pair(r.roots, n, cfg)) return bethe::make_solution(n, canonical_roots(*pair));
    // a seed heading for +-i/2 is continued on the singular core
    const Complex h(0.0, 0.5);
    std::vector<Complex> rest = r.roots;
    auto take = [&](Complex target) {
      auto it = std::min_element(rest.begin(), rest.end(),
                                 [&](Complex a, Complex b) { return std::abs(a - target) < std::abs(b - target); });
      rest.erase(it);
    };
    if (rest.size() >= 2) {
      take(h);
      take(-h);
      return singular_refine(rest, n, cfg);
    }
  }
  if (!roots) return std::nullopt;
  auto canon = canonical_roots(*roots);
  if (!distinct(canon, std::max(cfg.dedup_tol, kMinSeparation)) || !(bethe::residual_norm(canon, n) < cfg.newton_tol)) return std::nullopt;
  return bethe::make_solution(n, canon);
}

std::optional<BetheSolution> singular_refine(const std::vector<Complex>& core_seed, int n, const SolverConfig& cfg) {
  Seed s;
  s.roots = core_seed;
  s.singular_core = true;
  auto r = run_standard(s, n, cfg);
  std::optional<std::vector<Complex>> roots;
  if (r.outcome == Outcome::accepted && cfg.precision == Precision::standard) roots = r.roots;
  else if (r.outcome == Outcome::accepted || r.outcome == Outcome::unstable)
    roots = run_extended(core_of(r.roots), true, n, cfg);
  if (!roots) return std::nullopt;
  auto canon = canonical_roots(*roots);
  if (!distinct(canon, std::max(cfg.dedup_tol, kMinSeparation)) || !(bethe::residual_norm(canon, n) < cfg.newton_tol)) return std::nullopt;
  return bethe::make_solution(n, canon);
}

void fill_counts(SectorCensus& census) {
  census.counts = {};
  for (const auto& s : census.solutions) {
    if (s.is_real()) ++census.counts.real;
    else ++census.counts.complex;
    if (s.is_singular()) ++census.counts.singular;
    if (s.is_physical()) ++census.counts.physical;
  }
}

SectorCensus solve_sector(int n, int ell, const SolverConfig& cfg, const std::optional<rigged::Partition>& filter) {
  if (ell < 1 || 2 * ell > n) throw std::invalid_argument("solve_sector: need 1 <= ell <= n/2");
  cfg.validate();
  if (filter && filter->weight() != ell) throw std::invalid_argument("content filter weight must equal ell");

  Search search(n, ell, cfg);
  search.run(seed_set(n, ell, cfg, filter), cfg.precision == Precision::extended);
  SectorCensus census = search.finish(filter);
  if (!cfg.escalate || census.complete()) return census;

  auto note = [&](const std::string& stage) {
    std::ostringstream os;
    os << stage << ": physical " << census.counts.physical << " of " << census.rc_count;
    census.notes.push_back(os.str());
  };
  note("standard pass");

  SolverConfig ext = cfg;
  ext.precision = Precision::extended;
  if (cfg.precision != Precision::extended) {
    Search again(n, ell, ext);
    again.run(seed_set(n, ell, ext, filter), true);
    auto next = again.finish(filter);
    next.notes = census.notes;
    census = std::move(next);
    note("extended precision");
    if (census.complete()) return census;
  }

  SolverConfig dense = ext;
  dense.lattice_refinement = cfg.lattice_refinement * 4;
  dense.max_seeds = cfg.max_seeds * 2;
  {
    Search again(n, ell, dense);
    auto seeds = seed_set(n, ell, dense, filter);
    auto extra = random_seeds(n, ell, dense, cfg.random_restarts, filter);
    seeds.insert(seeds.end(), extra.begin(), extra.end());
    // keep what earlier passes found
    for (const auto& s : census.solutions)
      seeds.push_back(s.is_singular() ? Seed{bethe::core_roots(s.roots), true, false} : Seed{s.roots, false, false});
    again.run(seeds, false);
    auto next = again.finish(filter);
    next.notes = census.notes;
    next.config = cfg;
    census = std::move(next);
    note("dense lattice and random restarts");
  }
  return census;
}

}  // namespace brc
