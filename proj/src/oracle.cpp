#include "brc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "brc/newton.hpp"
#include "brc/rigged.hpp"

namespace brc::oracle {

void check_size(int n) {
  if (n < 1) throw std::invalid_argument("chain length must be positive");
  if (n > kMaxSites)
    throw ResourceError("exact diagonalization is capped at " + std::to_string(kMaxSites) + " sites");
}

StateVector hamiltonian_apply(const StateVector& v, int n, double J) {
  std::vector<Complex> w(v.data(), v.data() + v.size());
  return to_eigen(hamiltonian_apply(w, n, J));
}

std::vector<double> sector_eigenvalues(int n, int ell, double J) {
  check_size(n);
  if (n < 2) throw std::invalid_argument("hamiltonian needs at least two sites");
  if (ell < 0 || ell > n) return {};
  const std::size_t full = std::size_t{1} << n;
  std::vector<std::size_t> states;
  std::vector<long> index(full, -1);
  for (std::size_t s = 0; s < full; ++s)
    if (std::popcount(s) == ell) {
      index[s] = static_cast<long>(states.size());
      states.push_back(s);
    }
  const auto dim = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    const std::size_t a = std::size_t{1} << (n - 1 - k);
    const std::size_t b = std::size_t{1} << (n - 1 - (k + 1) % n);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const std::size_t s = states[static_cast<std::size_t>(r)];
      if (((s & a) != 0) == ((s & b) != 0)) continue;
      h(r, r) -= J / 2;
      h(index[s ^ a ^ b], r) += J / 2;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + dim);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> multiset_difference(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  std::vector<double> x = a, y = b;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::vector<double> out;
  std::size_t j = 0;
  for (double v : x) {
    while (j < y.size() && y[j] < v - tol) ++j;
    if (j < y.size() && std::abs(y[j] - v) <= tol)
      ++j;
    else
      out.push_back(v);
  }
  return out;
}

SpectrumRecord sector_spectrum(int n, int ell, double J) {
  SpectrumRecord rec;
  rec.n_sites = n;
  rec.ell = ell;
  rec.eigenvalues = sector_eigenvalues(n, ell, J);
  if (2 * ell > n) return rec;
  rec.highest_weight_energies =
      ell == 0 ? rec.eigenvalues : multiset_difference(rec.eigenvalues, sector_eigenvalues(n, ell - 1, J));
  return rec;
}

Block block_from_char(char c) {
  switch (c) {
    case 'A': case 'a': return Block::A;
    case 'B': case 'b': return Block::B;
    case 'C': case 'c': return Block::C;
    case 'D': case 'd': return Block::D;
  }
  throw UsageError(std::string("unknown monodromy block ") + c);
}

StateVector to_eigen(const std::vector<Complex>& v) {
  return Eigen::Map<const StateVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

StateVector transfer_block_apply(Block block, Complex lambda, const StateVector& v, int n) {
  std::vector<Complex> w(v.data(), v.data() + v.size());
  return to_eigen(transfer_block_apply(block, lambda, w, n));
}

StateVector bethe_vector(const std::vector<Complex>& roots, int n) {
  return to_eigen(bethe_vector<Complex>(roots, n));
}

int sector_of(const StateVector& v, double tol) {
  const double scale = v.cwiseAbs().maxCoeff();
  int sector = -1;
  for (Eigen::Index s = 0; s < v.size(); ++s) {
    if (std::abs(v(s)) <= tol * scale) continue;
    const int pc = std::popcount(static_cast<std::size_t>(s));
    if (sector >= 0 && pc != sector) return -1;
    sector = pc;
  }
  return sector;
}

namespace {

WComplex wide_constant(const BetheSolution& sol, const std::vector<WComplex>& core, std::optional<Complex> c) {
  if (c) return lift<WComplex>(*c);
  return bethe::nw_constant_core(sol.n_sites, core);
}

std::vector<WComplex> wide_core(const BetheSolution& sol) {
  if (!sol.is_singular()) throw NotSingularError("solution does not contain the pair +-i/2");
  return lift_all<WComplex>(bethe::core_roots(sol.roots));
}

void check_headroom(int n, double epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  const double log_scale = n * std::log10(epsilon);
  if (log_scale < -(ScalarTraits<WComplex>::digits10 - 4))
    throw PrecisionError("epsilon^N = 1e" + std::to_string(static_cast<int>(log_scale)) +
                         " leaves no significant digits in 100-digit arithmetic");
}

/// B(i/2+e+c e^N) B(-i/2+e) applied first, then the core; no rescaling.
std::vector<WComplex> raw_regularized(int n, const std::vector<WComplex>& core, double epsilon, const WComplex& c) {
  const auto roots = bethe::regularized_roots_core<WComplex>(n, core, WReal(epsilon), c);
  auto v = vacuum<WComplex>(n);
  v = transfer_block_apply(Block::B, roots[1], v, n);
  v = transfer_block_apply(Block::B, roots[0], v, n);
  for (std::size_t j = 2; j < roots.size(); ++j) v = transfer_block_apply(Block::B, roots[j], v, n);
  return v;
}

}  // namespace

std::vector<WComplex> regularized_singular_vector_wide(const BetheSolution& sol, double epsilon,
                                                       std::optional<Complex> c) {
  check_size(sol.n_sites);
  check_headroom(sol.n_sites, epsilon);
  const auto core = wide_core(sol);
  auto v = raw_regularized(sol.n_sites, core, epsilon, wide_constant(sol, core, c));
  const WReal scale = pow(WReal(epsilon), -sol.n_sites);
  for (auto& z : v) z *= scale;
  return v;
}

StateVector regularized_singular_vector(const BetheSolution& sol, double epsilon, std::optional<Complex> c) {
  return lower_vector(regularized_singular_vector_wide(sol, epsilon, c));
}

StateVector singular_limit_vector(const BetheSolution& sol, const std::vector<double>& schedule,
                                  std::optional<Complex> c) {
  if (schedule.empty()) throw std::invalid_argument("empty epsilon schedule");
  std::vector<std::vector<WComplex>> samples;
  for (double e : schedule) samples.push_back(regularized_singular_vector_wide(sol, e, c));
  const std::size_t m = schedule.size();
  std::vector<WComplex> out(samples[0].size());
  std::vector<WComplex> fs(m);
  for (std::size_t s = 0; s < out.size(); ++s) {
    for (std::size_t k = 0; k < m; ++k) fs[k] = samples[k][s];
    for (std::size_t level = 1; level < m; ++level)
      for (std::size_t i = 0; i + level < m; ++i) {
        const WReal xi(schedule[i]), xj(schedule[i + level]);
        fs[i] = (fs[i + 1] * xi - fs[i] * xj) / (xi - xj);
      }
    out[s] = fs[0];
  }
  return lower_vector(out);
}

double eigen_residual(const StateVector& v, int n, double energy, double J) {
  const double norm = v.norm();
  if (norm == 0.0) return std::numeric_limits<double>::infinity();
  return (hamiltonian_apply(v, n, J) - energy * v).norm() / norm;
}

StateVector align_phase(const StateVector& v) {
  const double norm = v.norm();
  if (norm == 0.0) return v;
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  const Complex phase = std::abs(v(at)) / v(at);
  return v * (phase / norm);
}

double singular_scaling_exponent(const BetheSolution& sol, const std::vector<double>& eps) {
  if (eps.size() < 2) throw std::invalid_argument("need at least two epsilon values");
  check_size(sol.n_sites);
  const auto core = wide_core(sol);
  const WComplex c = wide_constant(sol, core, std::nullopt);
  std::vector<double> xs, ys;
  for (double e : eps) {
    check_headroom(sol.n_sites, e);
    const auto v = raw_regularized(sol.n_sites, core, e, c);
    WReal norm2 = 0;
    for (const auto& z : v) norm2 += norm(z);
    xs.push_back(std::log(e));
    ys.push_back(0.5 * static_cast<double>(log(norm2)));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

namespace {

newton::Options wide_options() {
  newton::Options o;
  o.tol = 1e-85;
  o.max_iters = 80;
  o.stable_tol = 1e-60;
  o.polish_steps = 1;
  o.max_slow_steps = 8;
  return o;
}

}  // namespace

std::vector<WComplex> wide_roots(const BetheSolution& sol) {
  const int n = sol.n_sites;
  const auto& r = sol.roots;
  const auto opt = wide_options();
  std::size_t ua = r.size(), lb = r.size();
  double best = 1e-6;
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = 0; b < r.size(); ++b)
      if (a != b && std::abs(r[a] - r[b] - Complex(0.0, 1.0)) < best) {
        best = std::abs(r[a] - r[b] - Complex(0.0, 1.0));
        ua = a;
        lb = b;
      }
  if (ua == r.size()) {
    auto res = newton::refine<WComplex>(newton::System::full(n), lift_all<WComplex>(r), opt);
    return res.ok() ? res.roots : lift_all<WComplex>(r);
  }
  // near-exact pair: centre and the other roots first, then the split
  std::vector<WComplex> y{lift<WComplex>(0.5 * (r[ua] + r[lb]))};
  for (std::size_t k = 0; k < r.size(); ++k)
    if (k != ua && k != lb) y.push_back(lift<WComplex>(r[k]));
  auto reduced = newton::refine_exact_pair<WComplex>(n, y, opt);
  if (reduced.ok()) y = reduced.roots;
  const WComplex h = half_i<WComplex>(), i1 = imag_unit<WComplex>();
  const WComplex x = y[0];
  WComplex d = WComplex();
  for (int it = 0; it < 8; ++it) {
    const WComplex z1 = x + h + d / WReal(2);
    WComplex num = ipow<WComplex>(z1 - h, n) * (i1 * WReal(2) + d);
    WComplex den = ipow<WComplex>(z1 + h, n);
    for (std::size_t k = 1; k < y.size(); ++k) {
      num *= z1 - y[k] + i1;
      den *= z1 - y[k] - i1;
    }
    d = num / den;
  }
  std::vector<WComplex> full{x + h + d / WReal(2), x - h - d / WReal(2)};
  full.insert(full.end(), y.begin() + 1, y.end());
  auto res = newton::refine<WComplex>(newton::System::full(n), full, opt);
  return res.ok() ? res.roots : full;
}

StateVector eigenvector_of(const BetheSolution& sol) {
  if (sol.is_singular()) {
    if (!sol.is_physical()) throw NotSingularError("unphysical singular solution has no eigenvector");
    return singular_limit_vector(sol);
  }
  std::vector<XComplex> roots;
  for (const auto& z : wide_roots(sol)) roots.emplace_back(XReal(z.real()), XReal(z.imag()));
  return lower_vector(bethe_vector(roots, sol.n_sites));
}

CompletenessReport completeness_check(int n, int ell, const SectorCensus& census, double J) {
  CompletenessReport rep;
  rep.n_sites = n;
  rep.ell = ell;
  rep.rc_count = rigged::count_rigged_configs(rigged::SectorShape::spin_half(n), ell);
  const auto spectrum = sector_spectrum(n, ell, J);
  rep.highest_weight_count = spectrum.highest_weight_energies.size();

  std::vector<double> energies;
  for (std::size_t i = 0; i < census.solutions.size(); ++i) {
    const auto& sol = census.solutions[i];
    if (!sol.is_physical()) continue;
    ++rep.physical;
    const auto e = bethe::energy(sol, J);
    if (!e) continue;
    energies.push_back(*e);
    SolutionCheck chk;
    chk.index = i;
    chk.energy = *e;
    chk.residual = eigen_residual(eigenvector_of(sol), n, *e, J);
    rep.max_residual = std::max(rep.max_residual, chk.residual);
    rep.checks.push_back(chk);
  }
  rep.counts_match = static_cast<std::uint64_t>(rep.physical) == rep.rc_count &&
                     rep.rc_count == rep.highest_weight_count;
  rep.unmatched_solver = multiset_difference(energies, spectrum.highest_weight_energies);
  rep.unmatched_ed = multiset_difference(spectrum.highest_weight_energies, energies);
  auto a = energies, b = spectrum.highest_weight_energies;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a.size() == b.size())
    for (std::size_t i = 0; i < a.size(); ++i) rep.max_energy_diff = std::max(rep.max_energy_diff, std::abs(a[i] - b[i]));
  else
    rep.max_energy_diff = std::numeric_limits<double>::infinity();
  rep.energies_match = rep.unmatched_solver.empty() && rep.unmatched_ed.empty() && rep.max_energy_diff < 1e-8;
  return rep;
}

}  // namespace brc::oracle
