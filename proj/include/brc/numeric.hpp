#pragma once

// Scalar types shared by every module. Evaluation code is templated on the
// complex type so the same routines run in binary64 and in extended precision.

#include <complex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace brc {

using Complex = std::complex<double>;

/// 50 significant decimal digits; used by the solver and the log-derivative energy.
using XReal = boost::multiprecision::cpp_bin_float_50;
using XComplex = boost::multiprecision::cpp_complex_50;

/// 100 digits; regularized singular vectors divide by eps^N and need the headroom.
using WReal = boost::multiprecision::cpp_bin_float_100;
using WComplex = boost::multiprecision::cpp_complex_100;

enum class Precision { standard, extended };

std::string to_string(Precision p);
Precision precision_from_string(const std::string& s);

template <class C>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  using real_type = double;
  static constexpr int digits10 = 15;
};

template <>
struct ScalarTraits<XComplex> {
  using real_type = XReal;
  static constexpr int digits10 = 50;
};

template <>
struct ScalarTraits<WComplex> {
  using real_type = WReal;
  static constexpr int digits10 = 100;
};

template <class C>
using real_t = typename ScalarTraits<C>::real_type;

template <class C>
inline C make_complex(double re, double im) {
  return C(real_t<C>(re), real_t<C>(im));
}

template <class C>
inline C imag_unit() {
  return make_complex<C>(0.0, 1.0);
}

/// i/2 as an exact binary value in any scalar type.
template <class C>
inline C half_i() {
  return make_complex<C>(0.0, 0.5);
}

template <class C>
inline C lift(Complex z) {
  return make_complex<C>(z.real(), z.imag());
}

inline Complex lower(const Complex& z) { return z; }

template <class C>
inline Complex lower(const C& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class C>
inline double abs_d(const C& z) {
  using std::abs;
  return static_cast<double>(abs(z));
}

template <class C>
std::vector<C> lift_all(const std::vector<Complex>& v) {
  std::vector<C> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(lift<C>(z));
  return out;
}

template <class C>
std::vector<Complex> lower_all(const std::vector<C>& v) {
  std::vector<Complex> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(lower(z));
  return out;
}

/// Integer power by repeated squaring; std::pow on complex goes through exp/log.
template <class C>
C ipow(C base, int n) {
  C result = make_complex<C>(1.0, 0.0);
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

}  // namespace brc
