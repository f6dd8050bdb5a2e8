#pragma once

// Bethe equations of the periodic spin-1/2 XXX chain: residuals, energies,
// singular-solution criteria and the off-shell transfer-matrix coefficients.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brc/error.hpp"
#include "brc/numeric.hpp"

namespace brc {

enum class SolutionClass { regular, physical_singular, unphysical_singular, unverified };

std::string to_string(SolutionClass c);
SolutionClass solution_class_from_string(const std::string& s);

struct BetheSolution {
  int n_sites = 0;
  std::vector<Complex> roots;
  double residual_norm = 0.0;
  SolutionClass classification = SolutionClass::unverified;

  int ell() const { return static_cast<int>(roots.size()); }
  bool is_singular() const {
    return classification == SolutionClass::physical_singular ||
           classification == SolutionClass::unphysical_singular;
  }
  bool is_physical() const {
    return classification == SolutionClass::regular ||
           classification == SolutionClass::physical_singular;
  }
  bool is_real(double tol = 1e-10) const;
};

struct SingularRegularization {
  double epsilon = 1e-3;
  Complex c{0.0, 0.0};
};

namespace bethe {

inline constexpr double kSingularTol = 1e-8;
inline constexpr double kCriterionTol = 1e-8;

/// Descending real part, then descending imaginary part.
bool canonical_less(const Complex& a, const Complex& b);
void canonical_sort(std::vector<Complex>& roots);

/// Scale applied to row k of the cleared residual.
template <class C>
real_t<C> residual_scale(const C& lambda, int degree) {
  using std::abs;
  real_t<C> base = abs(lambda) + 1;
  if (base < 1) base = 1;
  real_t<C> s = 1;
  for (int i = 0; i < degree; ++i) s *= base;
  return 1 / s;
}

/// (l_k+i/2)^N prod(l_k-l_j-i) - (l_k-i/2)^N prod(l_k-l_j+i), each row scaled
/// by 1/max(1,|l_k|+1)^(N+ell-1).
template <class C>
std::vector<C> cleared_residual(const std::vector<C>& roots, int n) {
  const C h = half_i<C>();
  const C i1 = imag_unit<C>();
  const int ell = static_cast<int>(roots.size());
  std::vector<C> out(roots.size());
  for (int k = 0; k < ell; ++k) {
    C left = ipow<C>(roots[k] + h, n);
    C right = ipow<C>(roots[k] - h, n);
    for (int j = 0; j < ell; ++j) {
      if (j == k) continue;
      const C d = roots[k] - roots[j];
      left *= d - i1;
      right *= d + i1;
    }
    out[k] = (left - right) * residual_scale(roots[k], n + ell - 1);
  }
  return out;
}

std::vector<Complex> bethe_residual(const BetheSolution& sol);

/// Max-norm of the scaled cleared residual.
double residual_norm(const std::vector<Complex>& roots, int n);

/// Indices of the roots sitting at +i/2 and -i/2, if both are present.
std::optional<std::pair<std::size_t, std::size_t>> singular_pair(const std::vector<Complex>& roots,
                                                                 double tol = kSingularTol);

/// Roots other than the +-i/2 pair. Throws NotSingularError.
std::vector<Complex> core_roots(const std::vector<Complex>& roots);

/// Regular: -J/2 sum 1/(l^2+1/4). Singular: -J - J/2 sum over the core.
/// Empty when a root sits on +-i/2 but the solution is not classified singular.
std::optional<double> energy(const BetheSolution& sol, double J = 1.0);

/// (-prod_{core} (l+i/2)/(l-i/2))^N.
Complex nw_criterion_value(int n, const std::vector<Complex>& core);
bool nw_criterion(const BetheSolution& sol);

/// c = 2 i^(N+1) prod (l+3i/2)/(l-i/2).
template <class C>
C nw_constant_core(int n, const std::vector<C>& core) {
  const C h = half_i<C>();
  C c = make_complex<C>(2.0, 0.0) * ipow<C>(imag_unit<C>(), (n + 1) % 4);
  for (const auto& l : core) c *= (l + make_complex<C>(0.0, 1.5)) / (l - h);
  return c;
}

/// c' = -2 / i^(N+1) prod (l-3i/2)/(l+i/2).
template <class C>
C nw_constant_alt_core(int n, const std::vector<C>& core) {
  const C h = half_i<C>();
  C c = make_complex<C>(-2.0, 0.0) / ipow<C>(imag_unit<C>(), (n + 1) % 4);
  for (const auto& l : core) c *= (l - make_complex<C>(0.0, 1.5)) / (l + h);
  return c;
}

/// Checks c = c' whenever the criterion holds (std::logic_error otherwise).
Complex nw_constant(const BetheSolution& sol);
Complex nw_constant_alt(const BetheSolution& sol);

SolutionClass classify(int n, const std::vector<Complex>& roots);
/// Canonically sorted, classified, residual filled.
BetheSolution make_solution(int n, std::vector<Complex> roots);

/// {i/2 + e + c e^N, -i/2 + e, core...}.
template <class C>
std::vector<C> regularized_roots_core(int n, const std::vector<C>& core, const real_t<C>& eps, const C& c) {
  std::vector<C> out;
  out.reserve(core.size() + 2);
  C e(eps, real_t<C>(0));
  out.push_back(half_i<C>() + e + c * ipow<C>(e, n));
  out.push_back(-half_i<C>() + e);
  out.insert(out.end(), core.begin(), core.end());
  return out;
}

std::vector<Complex> regularized_roots(const BetheSolution& sol, const SingularRegularization& reg);

/// Lambda(l) = (l+i/2)^N prod (l-l_j-i)/(l-l_j) + (l-i/2)^N prod (l_j-l-i)/(l_j-l).
template <class C>
C offshell_eigenvalue(const C& lambda, const std::vector<C>& roots, int n, double pole_tol = 1e-14) {
  const C h = half_i<C>();
  const C i1 = imag_unit<C>();
  C left = ipow<C>(lambda + h, n);
  C right = ipow<C>(lambda - h, n);
  for (const auto& r : roots) {
    const C d = lambda - r;
    if (abs_d(d) < pole_tol) throw PoleError("offshell_eigenvalue: lambda coincides with a root");
    left *= (d - i1) / d;
    right *= (-d - i1) / (-d);
  }
  return left + right;
}

/// d Lambda / d lambda by the product rule.
template <class C>
C offshell_eigenvalue_derivative(const C& lambda, const std::vector<C>& roots, int n) {
  const C h = half_i<C>();
  const C i1 = imag_unit<C>();
  const C ap = lambda + h;
  const C am = lambda - h;
  C p = make_complex<C>(1.0, 0.0);
  C q = make_complex<C>(1.0, 0.0);
  C dp_log = make_complex<C>(0.0, 0.0);
  C dq_log = make_complex<C>(0.0, 0.0);
  const C one = make_complex<C>(1.0, 0.0);
  for (const auto& r : roots) {
    const C d = lambda - r;
    p *= (d - i1) / d;
    q *= (d + i1) / d;
    // d/dl log((d-i)/d) = 1/(d-i) - 1/d ; (l_j-l-i)/(l_j-l) = (d+i)/d
    dp_log += one / (d - i1) - one / d;
    dq_log += one / (d + i1) - one / d;
  }
  C out = make_complex<C>(0.0, 0.0);
  if (n >= 1) out += C(real_t<C>(n), 0) * ipow<C>(ap, n - 1) * p;
  out += ipow<C>(ap, n) * p * dp_log;
  if (n >= 1) out += C(real_t<C>(n), 0) * ipow<C>(am, n - 1) * q;
  out += ipow<C>(am, n) * q * dq_log;
  return out;
}

/// Lambda_k(l) = i/(l-l_k) { (l_k+i/2)^N prod_{j!=k} (l_k-l_j-i)/(l_k-l_j)
///                          - (l_k-i/2)^N prod_{j!=k} (l_j-l_k-i)/(l_j-l_k) }.
/// k is zero-based.
template <class C>
C offshell_coefficient(std::size_t k, const C& lambda, const std::vector<C>& roots, int n,
                       double pole_tol = 1e-14) {
  if (k >= roots.size()) throw std::out_of_range("offshell_coefficient: k out of range");
  const C h = half_i<C>();
  const C i1 = imag_unit<C>();
  const C lk = roots[k];
  if (abs_d(lambda - lk) < pole_tol) throw PoleError("offshell_coefficient: lambda coincides with l_k");
  C left = ipow<C>(lk + h, n);
  C right = ipow<C>(lk - h, n);
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (j == k) continue;
    const C d = lk - roots[j];
    if (abs_d(d) < pole_tol) throw PoleError("offshell_coefficient: repeated roots");
    left *= (d - i1) / d;
    right *= (-d - i1) / (-d);
  }
  return i1 / (lambda - lk) * (left - right);
}

Complex offshell_eigenvalue(const Complex& lambda, const BetheSolution& sol);
Complex offshell_coefficient(std::size_t k, const Complex& lambda, const BetheSolution& sol);

/// E = J/2 (i Lambda'/Lambda at i/2 - N) with the roots taken as given.
template <class C>
C logderivative_energy(const std::vector<C>& roots, int n, double J) {
  const C at = half_i<C>();
  const C val = offshell_eigenvalue(at, roots, n, 0.0);
  const C der = offshell_eigenvalue_derivative(at, roots, n);
  const C eps_val = imag_unit<C>() * der / val;
  return C(real_t<C>(J / 2), 0) * (eps_val - C(real_t<C>(n), 0));
}

/// Regular solutions: log-derivative energy in binary64.
double regular_energy_logderivative(const BetheSolution& sol, double J = 1.0);

/// Singular solutions: log-derivative energy under the regularization, for a
/// decreasing epsilon schedule, extrapolated to epsilon = 0.
double singular_energy_logderivative(const BetheSolution& sol, double J = 1.0,
                                     const std::vector<double>& eps_schedule = {1e-3, 1e-4, 1e-5});

/// Neville extrapolation of samples f(x_i) to x = 0.
template <class T>
T extrapolate_to_zero(const std::vector<double>& xs, std::vector<T> fs) {
  const std::size_t m = xs.size();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double xi = xs[i];
      const double xj = xs[i + level];
      // P(0) from the two neighbouring interpolants
      fs[i] = (fs[i + 1] * xi - fs[i] * xj) / (xi - xj);
    }
  }
  return fs[0];
}

}  // namespace bethe
}  // namespace brc
