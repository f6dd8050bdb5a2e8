#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brc/bethe.hpp"
#include "table_321.hpp"

using namespace brc;

namespace {
const Complex I(0.0, 1.0);
}

TEST_CASE("two sites, single root at zero") {
  auto s = bethe::make_solution(2, {Complex(0.0, 0.0)});
  CHECK(s.classification == SolutionClass::regular);
  CHECK(s.residual_norm < 1e-15);
  // periodic closure counts the single bond twice
  CHECK(*bethe::energy(s) == doctest::Approx(-2.0));
  CHECK(bethe::regular_energy_logderivative(s) == doctest::Approx(-2.0));
}

TEST_CASE("four sites, the pair +-i/2") {
  auto s = bethe::make_solution(4, {0.5 * I, -0.5 * I});
  CHECK(s.classification == SolutionClass::physical_singular);
  CHECK(bethe::nw_criterion(s));
  CHECK(std::abs(bethe::nw_constant(s) - 2.0 * I) < 1e-12);
  CHECK(std::abs(bethe::nw_constant_alt(s) - 2.0 * I) < 1e-12);
  CHECK(*bethe::energy(s) == doctest::Approx(-1.0));
  CHECK(bethe::singular_energy_logderivative(s) == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("odd length: +-i/2 alone is unphysical") {
  auto s = bethe::make_solution(25, {0.5 * I, -0.5 * I});
  CHECK(s.classification == SolutionClass::unphysical_singular);
  CHECK_FALSE(bethe::nw_criterion(s));
  // the pair alone leaves an empty core
  CHECK(*bethe::energy(s) == doctest::Approx(-1.0));
}

TEST_CASE("tabulated solutions satisfy the equations") {
  for (const auto& row : testdata::kTable321) {
    std::vector<Complex> roots(row.roots.begin(), row.roots.end());
    auto s = bethe::make_solution(12, roots);
    if (row.number == 11) {
      CHECK(s.classification == SolutionClass::physical_singular);
      continue;
    }
    CHECK(s.residual_norm < 1e-6);
  }
}

TEST_CASE("regular energy agrees with the log-derivative") {
  std::vector<Complex> roots(testdata::kTable321[0].roots.begin(), testdata::kTable321[0].roots.end());
  auto s = bethe::make_solution(12, roots);
  CHECK(bethe::regular_energy_logderivative(s) == doctest::Approx(*bethe::energy(s)).epsilon(1e-6));
}

TEST_CASE("off-shell coefficients vanish on shell") {
  auto s = bethe::make_solution(2, {Complex(0.0, 0.0)});
  CHECK(std::abs(bethe::offshell_coefficient(0, Complex(0.3, 0.1), s)) < 1e-14);
  CHECK_THROWS_AS(bethe::offshell_eigenvalue(Complex(0.0, 0.0), s), PoleError);
}

TEST_CASE("regularized roots") {
  auto s = bethe::make_solution(4, {0.5 * I, -0.5 * I});
  auto r = bethe::regularized_roots(s, SingularRegularization{1e-2, 2.0 * I});
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - (0.5 * I + 1e-2 + 2.0 * I * 1e-8)) < 1e-15);
  CHECK(std::abs(r[1] - (-0.5 * I + 1e-2)) < 1e-15);
}

TEST_CASE("core roots and singular pair") {
  std::vector<Complex> roots{0.5 * I, Complex(0.2, 0.0), -0.5 * I};
  CHECK(bethe::singular_pair(roots).has_value());
  CHECK(bethe::core_roots(roots).size() == 1);
  CHECK_THROWS_AS(bethe::core_roots({Complex(0.1, 0.0)}), NotSingularError);
}

TEST_CASE("extrapolation is exact on polynomials") {
  std::vector<double> xs{0.1, 0.01, 0.001};
  std::vector<double> fs;
  for (double x : xs) fs.push_back(3.0 + 2.0 * x - x * x);
  CHECK(bethe::extrapolate_to_zero(xs, fs) == doctest::Approx(3.0).epsilon(1e-12));
}
