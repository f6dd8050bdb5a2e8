#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "brc/oracle.hpp"
#include "brc/solver.hpp"

using namespace brc;
using namespace brc::oracle;

namespace {

StateVector basis(int n, std::size_t s) {
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  v(static_cast<Eigen::Index>(s)) = 1.0;
  return v;
}

StateVector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector v(static_cast<Eigen::Index>(std::size_t{1} << n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

}  // namespace

TEST_CASE("hamiltonian on two sites") {
  // |up down> = binary 01
  const auto h = hamiltonian_apply(basis(2, 1), 2, 1.0);
  CHECK(std::abs(h(2) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(h(1) - Complex(-1.0, 0.0)) < 1e-15);
  CHECK(hamiltonian_apply(basis(5, 0), 5, 1.0).norm() < 1e-15);
}

TEST_CASE("sector spectra") {
  const auto two = sector_spectrum(2, 1);
  REQUIRE(two.eigenvalues.size() == 2);
  CHECK(two.eigenvalues[0] == doctest::Approx(-2.0));
  CHECK(two.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sector_spectrum(6, 0).eigenvalues.size() == 1);
  const auto four = sector_spectrum(4, 2);
  CHECK(four.highest_weight_energies.size() == 2);
  bool has = false;
  for (double e : four.highest_weight_energies) has = has || std::abs(e + 1.0) < 1e-10;
  CHECK(has);
  CHECK(sector_spectrum(10, 3).highest_weight_energies.size() == 75);
}

TEST_CASE("blocks on the vacuum") {
  const int n = 5;
  const Complex l(0.3, 0.2), h(0.0, 0.5);
  const auto v = basis(n, 0);
  CHECK((transfer_block_apply(Block::D, l, v, n) - std::pow(l - h, n) * v).norm() < 1e-13);
  CHECK((transfer_block_apply(Block::A, l, v, n) - std::pow(l + h, n) * v).norm() < 1e-13);
  CHECK(transfer_block_apply(Block::C, l, v, n).norm() < 1e-15);
}

TEST_CASE("B operators commute") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial % 5;
    const Complex l(u(rng), u(rng)), m(u(rng), u(rng));
    const auto v = trial % 2 ? random_vector(n, rng) : basis(n, 0);
    const auto a = transfer_block_apply(Block::B, l, transfer_block_apply(Block::B, m, v, n), n);
    const auto b = transfer_block_apply(Block::B, m, transfer_block_apply(Block::B, l, v, n), n);
    CHECK((a - b).norm() / a.norm() < 1e-10);
  }
}

TEST_CASE("two-site Bethe vector") {
  const auto v = bethe_vector({Complex(0.0, 0.0)}, 2);
  CHECK(sector_of(v) == 1);
  CHECK(std::abs(v(1) + v(2)) < 1e-14);
  CHECK(eigen_residual(v, 2, -2.0) < 1e-14);
}

TEST_CASE("four-site singular vector") {
  const auto sol = bethe::make_solution(4, {Complex(0.0, 0.5), Complex(0.0, -0.5)});
  const auto v = singular_limit_vector(sol, {1e-3, 1e-4, 1e-5}, Complex(0.0, 2.0));
  const std::vector<double> expected{0, 0, 0, 2, 0, 0, -2, 0, 0, -2, 0, 0, 2, 0, 0, 0};
  for (std::size_t k = 0; k < expected.size(); ++k)
    CHECK(std::abs(v(static_cast<Eigen::Index>(k)) - expected[k]) < 1e-6);
  CHECK(eigen_residual(v, 4, -1.0) < 1e-8);
  CHECK(singular_scaling_exponent(sol) == doctest::Approx(4.0).epsilon(0.025));
}

TEST_CASE("a wrong constant spoils the limit") {
  const auto sol = bethe::make_solution(4, {Complex(0.0, 0.5), Complex(0.0, -0.5)});
  const auto v = regularized_singular_vector(sol, 1e-3, Complex(0.0, 0.0));
  CHECK(eigen_residual(v, 4, -1.0) > 1e-3);
}

TEST_CASE("eight sites: census against exact diagonalization") {
  const auto c = solve_sector(8, 3, SolverConfig{});
  const auto rep = completeness_check(8, 3, c);
  CHECK(rep.counts_match);
  CHECK(rep.energies_match);
  CHECK(rep.max_residual < 1e-6);
  CHECK(rep.pass());
}

TEST_CASE("multiset difference") {
  CHECK(multiset_difference({1.0, 2.0, 2.0}, {2.0}) == std::vector<double>{1.0, 2.0});
  CHECK(multiset_difference({1.0}, {1.0 + 1e-12}).empty());
}

TEST_CASE("phase alignment") {
  StateVector v(2);
  v << Complex(0.0, 3.0), Complex(0.0, 1.0);
  const auto a = align_phase(v);
  CHECK(a.norm() == doctest::Approx(1.0));
  CHECK(a(0).real() > 0.0);
  CHECK(std::abs(a(0).imag()) < 1e-15);
}

TEST_CASE("size cap") {
  CHECK_THROWS_AS(check_size(20), ResourceError);
  CHECK_NOTHROW(check_size(14));
}
