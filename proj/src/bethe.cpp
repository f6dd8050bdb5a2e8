#include "brc/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace brc {

std::string to_string(SolutionClass c) {
  switch (c) {
    case SolutionClass::regular: return "regular";
    case SolutionClass::physical_singular: return "physical_singular";
    case SolutionClass::unphysical_singular: return "unphysical_singular";
    case SolutionClass::unverified: return "unverified";
  }
  return "unverified";
}

SolutionClass solution_class_from_string(const std::string& s) {
  if (s == "regular") return SolutionClass::regular;
  if (s == "physical_singular") return SolutionClass::physical_singular;
  if (s == "unphysical_singular") return SolutionClass::unphysical_singular;
  if (s == "unverified") return SolutionClass::unverified;
  throw std::invalid_argument("unknown solution class: " + s);
}

bool BetheSolution::is_real(double tol) const {
  return std::all_of(roots.begin(), roots.end(), [tol](const Complex& z) { return std::abs(z.imag()) < tol; });
}

namespace bethe {

bool canonical_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

void canonical_sort(std::vector<Complex>& roots) { std::sort(roots.begin(), roots.end(), canonical_less); }

std::vector<Complex> bethe_residual(const BetheSolution& sol) {
  if (sol.roots.empty()) throw std::invalid_argument("bethe_residual: empty root list");
  for (const auto& z : sol.roots)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("bethe_residual: non-finite root");
  return cleared_residual(sol.roots, sol.n_sites);
}

double residual_norm(const std::vector<Complex>& roots, int n) {
  double m = 0.0;
  for (const auto& f : cleared_residual(roots, n)) m = std::max(m, std::abs(f));
  return m;
}

std::optional<std::pair<std::size_t, std::size_t>> singular_pair(const std::vector<Complex>& roots, double tol) {
  const Complex h(0.0, 0.5);
  std::optional<std::size_t> up, down;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!up && std::abs(roots[i] - h) < tol) up = i;
    else if (!down && std::abs(roots[i] + h) < tol) down = i;
  }
  if (up && down) return std::make_pair(*up, *down);
  return std::nullopt;
}

std::vector<Complex> core_roots(const std::vector<Complex>& roots) {
  auto pair = singular_pair(roots);
  if (!pair) throw NotSingularError("solution does not contain the +-i/2 pair");
  std::vector<Complex> core;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (i != pair->first && i != pair->second) core.push_back(roots[i]);
  return core;
}

namespace {

double real_energy(Complex e) {
  if (std::abs(e.imag()) > 1e-10 * std::max(1.0, std::abs(e.real())))
    throw std::logic_error("energy has a non-negligible imaginary part");
  return e.real();
}

Complex inverse_sum(const std::vector<Complex>& roots) {
  Complex s(0.0, 0.0);
  for (const auto& l : roots) s += 1.0 / (l * l + 0.25);
  return s;
}

}  // namespace

std::optional<double> energy(const BetheSolution& sol, double J) {
  if (sol.is_singular()) {
    const auto core = core_roots(sol.roots);
    return real_energy(-J - J / 2 * inverse_sum(core));
  }
  const Complex h(0.0, 0.5);
  for (const auto& l : sol.roots)
    if (std::abs(l - h) < kSingularTol || std::abs(l + h) < kSingularTol) return std::nullopt;
  return real_energy(-J / 2 * inverse_sum(sol.roots));
}

Complex nw_criterion_value(int n, const std::vector<Complex>& core) {
  const Complex h(0.0, 0.5);
  Complex p(-1.0, 0.0);
  for (const auto& l : core) p *= (l + h) / (l - h);
  return ipow(p, n);
}

bool nw_criterion(const BetheSolution& sol) {
  const auto core = core_roots(sol.roots);
  return std::abs(nw_criterion_value(sol.n_sites, core) - 1.0) < kCriterionTol;
}

Complex nw_constant_alt(const BetheSolution& sol) {
  return nw_constant_alt_core(sol.n_sites, core_roots(sol.roots));
}

Complex nw_constant(const BetheSolution& sol) {
  const auto core = core_roots(sol.roots);
  const Complex c = nw_constant_core(sol.n_sites, core);
  if (std::abs(nw_criterion_value(sol.n_sites, core) - 1.0) < kCriterionTol) {
    const Complex c2 = nw_constant_alt_core(sol.n_sites, core);
    if (std::abs(c - c2) > 1e-8 * std::max(1.0, std::abs(c)))
      throw std::logic_error("regularization constants disagree on a physical singular solution");
  }
  return c;
}

SolutionClass classify(int n, const std::vector<Complex>& roots) {
  if (auto pair = singular_pair(roots)) {
    const auto core = core_roots(roots);
    return std::abs(nw_criterion_value(n, core) - 1.0) < kCriterionTol ? SolutionClass::physical_singular
                                                                        : SolutionClass::unphysical_singular;
  }
  // eigenstates of a hermitian operator come with conjugation-closed root sets
  std::vector<Complex> conj(roots.size());
  std::transform(roots.begin(), roots.end(), conj.begin(), [](Complex z) { return std::conj(z); });
  std::vector<bool> used(roots.size(), false);
  for (const auto& z : conj) {
    bool matched = false;
    for (std::size_t j = 0; j < roots.size() && !matched; ++j) {
      if (!used[j] && std::abs(roots[j] - z) < 1e-6 * std::max(1.0, std::abs(z))) {
        used[j] = true;
        matched = true;
      }
    }
    if (!matched) return SolutionClass::unverified;
  }
  return SolutionClass::regular;
}

BetheSolution make_solution(int n, std::vector<Complex> roots) {
  canonical_sort(roots);
  BetheSolution sol;
  sol.n_sites = n;
  sol.residual_norm = residual_norm(roots, n);
  sol.classification = classify(n, roots);
  sol.roots = std::move(roots);
  return sol;
}

std::vector<Complex> regularized_roots(const BetheSolution& sol, const SingularRegularization& reg) {
  if (!(reg.epsilon > 0)) throw std::invalid_argument("regularization epsilon must be positive");
  return regularized_roots_core<Complex>(sol.n_sites, core_roots(sol.roots), reg.epsilon, reg.c);
}

Complex offshell_eigenvalue(const Complex& lambda, const BetheSolution& sol) {
  return offshell_eigenvalue(lambda, sol.roots, sol.n_sites, kSingularTol);
}

Complex offshell_coefficient(std::size_t k, const Complex& lambda, const BetheSolution& sol) {
  return offshell_coefficient(k, lambda, sol.roots, sol.n_sites, kSingularTol);
}

double regular_energy_logderivative(const BetheSolution& sol, double J) {
  if (sol.is_singular() || singular_pair(sol.roots))
    throw std::invalid_argument("regular_energy_logderivative: singular solution");
  return real_energy(logderivative_energy(sol.roots, sol.n_sites, J));
}

double singular_energy_logderivative(const BetheSolution& sol, double J, const std::vector<double>& eps_schedule) {
  if (eps_schedule.size() < 2) throw std::invalid_argument("need at least two epsilon values");
  const int n = sol.n_sites;
  const auto core = lift_all<XComplex>(core_roots(sol.roots));
  const XComplex c = nw_constant_core(n, core);

  std::vector<XComplex> samples;
  for (double eps : eps_schedule) {
    const auto roots = regularized_roots_core<XComplex>(n, core, XReal(eps), c);
    samples.push_back(logderivative_energy(roots, n, J));
  }
  const XComplex all = extrapolate_to_zero(eps_schedule, samples);
  const std::vector<double> head(eps_schedule.begin(), eps_schedule.end() - 1);
  const XComplex fewer = extrapolate_to_zero(head, std::vector<XComplex>(samples.begin(), samples.end() - 1));
  if (abs_d(all - fewer) > 1e-6)
    throw ConvergenceError("log-derivative energy extrapolation disagrees across epsilon decades");
  return real_energy(lower(all));
}

}  // namespace bethe
}  // namespace brc
