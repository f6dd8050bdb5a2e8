#pragma once

#include <vector>

#include "brc/numeric.hpp"

namespace brc {

/// All complex roots of sum c_k x^(d-k), coefficients given highest degree first.
/// Companion-matrix eigenvalues, each polished by Newton in extended precision.
/// Roots are returned sorted by real part, then imaginary part; imaginary parts
/// below 1e-14 relative are set to zero.
std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs);

/// Horner evaluation, highest degree first.
Complex polyval(const std::vector<double>& coeffs, Complex x);

}  // namespace brc
