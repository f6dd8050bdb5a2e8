#pragma once

// Independent checks: exact diagonalization of the Hamiltonian, the blocks of
// the monodromy matrix applied site by site, Bethe vectors and regularized
// singular vectors.
//
// Basis: index bit (N-k) holds site k (site 1 is the most significant bit),
// bit 0 = spin up.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "brc/bethe.hpp"
#include "brc/error.hpp"
#include "brc/numeric.hpp"
#include "brc/solver.hpp"

namespace brc::oracle {

using StateVector = Eigen::VectorXcd;

inline constexpr int kMaxSites = 14;

void check_size(int n);

/// H = J/4 sum_k (s1 s1 + s2 s2 + s3 s3 - I) over the periodic bonds.
template <class C>
std::vector<C> hamiltonian_apply(const std::vector<C>& v, int n, double J) {
  check_size(n);
  if (n < 2) throw std::invalid_argument("hamiltonian needs at least two sites");
  const std::size_t dim = std::size_t{1} << n;
  if (v.size() != dim) throw std::invalid_argument("state vector has the wrong length");
  std::vector<C> out(dim, C());
  const C diag(real_t<C>(-J / 2), 0), hop(real_t<C>(J / 2), 0);
  for (int k = 0; k < n; ++k) {
    const std::size_t a = std::size_t{1} << (n - 1 - k);
    const std::size_t b = std::size_t{1} << (n - 1 - (k + 1) % n);
    for (std::size_t s = 0; s < dim; ++s) {
      if (((s & a) != 0) == ((s & b) != 0)) continue;
      out[s] += diag * v[s];
      out[s ^ a ^ b] += hop * v[s];
    }
  }
  return out;
}

StateVector hamiltonian_apply(const StateVector& v, int n, double J = 1.0);

struct SpectrumRecord {
  int n_sites = 0;
  int ell = 0;
  std::vector<double> eigenvalues;
  std::vector<double> highest_weight_energies;
};

/// Dense diagonalization of the ell-down-spin sector.
std::vector<double> sector_eigenvalues(int n, int ell, double J = 1.0);
SpectrumRecord sector_spectrum(int n, int ell, double J = 1.0);

/// a minus b as multisets, matching within tol.
std::vector<double> multiset_difference(const std::vector<double>& a, const std::vector<double>& b, double tol = 1e-8);

enum class Block { A, B, C, D };

template <class C>
bool is_zero(const C& z) {
  return z.real() == 0 && z.imag() == 0;
}
Block block_from_char(char c);

/// T_N(l) = L_N(l) ... L_1(l) with
/// L_k = [[l + i/2 s3_k, i/2 s-_k], [i/2 s+_k, l - i/2 s3_k]].
template <class C>
std::vector<C> transfer_block_apply(Block block, const C& lambda, const std::vector<C>& v, int n) {
  check_size(n);
  const std::size_t dim = std::size_t{1} << n;
  if (v.size() != dim) throw std::invalid_argument("state vector has the wrong length");
  const int row = (block == Block::A || block == Block::B) ? 0 : 1;
  const int col = (block == Block::A || block == Block::C) ? 0 : 1;
  std::vector<C> w[2] = {std::vector<C>(dim, C()), std::vector<C>(dim, C())};
  w[col] = v;
  const C h = half_i<C>(), i1 = imag_unit<C>();
  const C up0 = lambda + h, down0 = lambda - h;  // upper-left entry on up / down
  const C up1 = lambda - h, down1 = lambda + h;  // lower-right entry
  std::vector<C> n0(dim), n1(dim);
  for (int k = 0; k < n; ++k) {
    const std::size_t bit = std::size_t{1} << (n - 1 - k);
    // only one magnetization sector is populated at a time; skip the zeros
    for (std::size_t s = 0; s < dim; ++s) {
      const bool down = (s & bit) != 0;
      n0[s] = is_zero(w[0][s]) ? C() : (down ? down0 : up0) * w[0][s];
      n1[s] = is_zero(w[1][s]) ? C() : (down ? down1 : up1) * w[1][s];
    }
    for (std::size_t s = 0; s < dim; ++s) {
      if (s & bit) continue;
      // i/2 s- : up -> i down (feeds row 0 from column 1); i/2 s+ : down -> i up
      if (!is_zero(w[1][s])) n0[s | bit] += i1 * w[1][s];
      if (!is_zero(w[0][s | bit])) n1[s] += i1 * w[0][s | bit];
    }
    w[0].swap(n0);
    w[1].swap(n1);
  }
  return w[row];
}

template <class C>
std::vector<C> vacuum(int n) {
  std::vector<C> v(std::size_t{1} << n, C());
  v[0] = make_complex<C>(1.0, 0.0);
  return v;
}

/// B(l_1) ... B(l_ell) |0>.
template <class C>
std::vector<C> bethe_vector(const std::vector<C>& roots, int n) {
  auto v = vacuum<C>(n);
  for (std::size_t j = roots.size(); j-- > 0;) v = transfer_block_apply(Block::B, roots[j], v, n);
  return v;
}

StateVector to_eigen(const std::vector<Complex>& v);
template <class C>
StateVector lower_vector(const std::vector<C>& v) {
  StateVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = lower(v[i]);
  return out;
}

StateVector transfer_block_apply(Block block, Complex lambda, const StateVector& v, int n);
StateVector bethe_vector(const std::vector<Complex>& roots, int n);

/// Number of down spins when v lies in one sector, else -1.
int sector_of(const StateVector& v, double tol = 1e-12);

/// eps^-N B(i/2+eps+c eps^N) B(-i/2+eps) B(l_3)...|0>, in 100-digit arithmetic.
/// c defaults to the constant of the solution.
std::vector<WComplex> regularized_singular_vector_wide(const BetheSolution& sol, double epsilon,
                                                       std::optional<Complex> c = std::nullopt);
StateVector regularized_singular_vector(const BetheSolution& sol, double epsilon, std::optional<Complex> c = std::nullopt);

/// Limit eps -> 0 by polynomial extrapolation over the schedule.
StateVector singular_limit_vector(const BetheSolution& sol, const std::vector<double>& schedule = {1e-3, 1e-4, 1e-5},
                                  std::optional<Complex> c = std::nullopt);

/// || H v - E v || / || v ||.
double eigen_residual(const StateVector& v, int n, double energy, double J = 1.0);

/// Unit norm, largest-magnitude amplitude real positive.
StateVector align_phase(const StateVector& v);

/// Log-log slope of ||B(l1_eps) B(l2_eps) ... |0>|| against eps.
double singular_scaling_exponent(const BetheSolution& sol, const std::vector<double>& eps = {1e-1, 1e-2, 1e-3});

/// Roots re-solved in 100-digit arithmetic from the stored ones. A near-exact
/// 2-string is rebuilt from its centre, since its deviation can sit far below
/// binary64 resolution while the Bethe vector depends on it.
std::vector<WComplex> wide_roots(const BetheSolution& sol);

/// Bethe vector for a regular solution, extrapolated limit for a physical singular one.
StateVector eigenvector_of(const BetheSolution& sol);

struct SolutionCheck {
  std::size_t index = 0;
  double energy = 0.0;
  double residual = 0.0;
};

struct CompletenessReport {
  int n_sites = 0;
  int ell = 0;
  int physical = 0;
  std::uint64_t rc_count = 0;
  std::uint64_t highest_weight_count = 0;
  bool counts_match = false;
  bool energies_match = false;
  double max_energy_diff = 0.0;
  std::vector<double> unmatched_solver;
  std::vector<double> unmatched_ed;
  double max_residual = 0.0;
  std::vector<SolutionCheck> checks;
  bool pass() const { return counts_match && energies_match && max_residual < 1e-6; }
};

CompletenessReport completeness_check(int n, int ell, const SectorCensus& census, double J = 1.0);

}  // namespace brc::oracle
