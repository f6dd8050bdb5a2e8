#include "brc/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "brc/error.hpp"

namespace brc {

Complex polyval(const std::vector<double>& coeffs, Complex x) {
  Complex acc(0.0, 0.0);
  for (double c : coeffs) acc = acc * x + c;
  return acc;
}

namespace {

XComplex polish(const std::vector<double>& coeffs, XComplex x) {
  for (int it = 0; it < 60; ++it) {
    XComplex p(0), dp(0);
    for (double c : coeffs) {
      dp = dp * x + p;
      p = p * x + XReal(c);
    }
    if (abs_d(dp) == 0.0) break;
    const XComplex step = p / dp;
    x -= step;
    if (abs_d(step) <= 1e-40 * std::max(1.0, abs_d(x))) break;
  }
  return x;
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
  if (coeffs.empty() || coeffs.front() == 0.0)
    throw DegenerateDegreeError("polynomial_roots: leading coefficient must be nonzero");
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d == 0) return {};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j) companion(0, j) = -coeffs[static_cast<std::size_t>(j + 1)] / coeffs[0];
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);

  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    Complex z = lower(polish(coeffs, lift<XComplex>(es.eigenvalues()(i))));
    if (std::abs(z.imag()) < 1e-14 * std::max(1.0, std::abs(z.real()))) z = {z.real(), 0.0};
    roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

}  // namespace brc
