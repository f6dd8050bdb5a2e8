#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "brc/error.hpp"
#include "brc/polynomial.hpp"

using namespace brc;

TEST_CASE("singular quintic for twelve sites") {
  const std::vector<double> q{5120, 11520, -4992, -9312, 2020, -55};
  const auto roots = polynomial_roots(q);
  REQUIRE(roots.size() == 5);
  int pos = 0, neg = 0;
  double smallest = 1e9;
  for (const auto& z : roots) {
    CHECK(z.imag() == 0.0);
    CHECK(std::abs(polyval(q, z)) < 1e-9);
    if (z.real() > 0) {
      ++pos;
      smallest = std::min(smallest, z.real());
    } else {
      ++neg;
    }
  }
  CHECK(pos == 3);
  CHECK(neg == 2);
  CHECK(std::abs(std::sqrt(smallest) - 0.178978221719006) < 1e-12);
}

TEST_CASE("quadratic") {
  const auto r = polynomial_roots({1, 0, -1});
  REQUIRE(r.size() == 2);
  CHECK(r[0].real() == doctest::Approx(-1.0));
  CHECK(r[1].real() == doctest::Approx(1.0));
}

TEST_CASE("complex pair") {
  const auto r = polynomial_roots({1, 0, 1});
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0].real()) < 1e-14);
  CHECK(std::abs(std::abs(r[0].imag()) - 1.0) < 1e-14);
}

TEST_CASE("degenerate degree") {
  CHECK_THROWS_AS(polynomial_roots({0, 1, 2}), DegenerateDegreeError);
  CHECK_THROWS_AS(polynomial_roots({}), DegenerateDegreeError);
}
