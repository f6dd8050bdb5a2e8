// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "brc/oracle.hpp"
#include "brc/polynomial.hpp"
#include "brc/rigged.hpp"
#include "brc/solver.hpp"
#include "brc/strings.hpp"
#include "table_321.hpp"

using namespace brc;
using rigged::Partition;

namespace {

using Clock = std::chrono::steady_clock;
const Complex kHalf(0.0, 0.5);

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int number, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  if (!o.ok) ++failures;
  std::cout << "criterion " << number << " " << (o.ok ? "PASS" : "FAIL") << "  " << name << ":" << o.detail.str() << " ("
            << std::fixed;
  std::cout.precision(1);
  std::cout << seconds_since(t0) << " s)" << std::endl;
  std::cout.unsetf(std::ios::fixed);
  std::cout.precision(6);
}

std::optional<std::size_t> find(const SectorCensus& c, const std::vector<Complex>& roots, double tol) {
  for (std::size_t i = 0; i < c.solutions.size(); ++i)
    if (solution_distance(c.solutions[i].roots, roots) < tol) return i;
  return std::nullopt;
}

std::vector<Complex> table_roots(int number) {
  const auto& r = testdata::kTable321[static_cast<std::size_t>(number - 1)];
  return {r.roots.begin(), r.roots.end()};
}

SectorCensus& census_321() {
  static SectorCensus c = [] {
    auto census = solve_sector(12, 6, SolverConfig{}, Partition({3, 2, 1}));
    strings::classify_census(census);
    return census;
  }();
  return c;
}

}  // namespace

int main() {
  std::cout.precision(6);

  report(1, "rigged configuration counts, N <= 14", [](Outcome& o) {
    int sectors = 0;
    for (int n = 1; n <= 14; ++n)
      for (int ell = 1; 2 * ell <= n; ++ell, ++sectors) {
        const auto shape = rigged::SectorShape::spin_half(n);
        const auto expected = rigged::binomial(n, ell) - rigged::binomial(n, ell - 1);
        o.require(rigged::enumerate_rigged_configs(shape, ell).size() == expected,
                  "N=" + std::to_string(n) + " ell=" + std::to_string(ell));
      }
    o.detail << " " << sectors << " sectors";
  });

  report(2, "N=12 ell=6 (3,2,1) solutions against the tables", [](Outcome& o) {
    auto& c = census_321();
    int physical = 0;
    for (const auto& s : c.solutions) physical += s.is_physical() ? 1 : 0;
    o.require(physical == 21, "21 physical solutions");
    double worst = 0.0;
    std::set<std::size_t> used;
    for (const auto& row : testdata::kTable321) {
      const auto idx = find(c, table_roots(row.number), 1e-7);
      o.require(idx.has_value(), "table row " + std::to_string(row.number));
      if (!idx) continue;
      used.insert(*idx);
      const auto& sol = c.solutions[*idx];
      worst = std::max(worst, solution_distance(sol.roots, table_roots(row.number)));
      o.require(sol.is_physical(), "row " + std::to_string(row.number) + " physical");
      const auto dec = strings::decompose(sol, Partition({3, 2, 1}));
      o.require(dec.non_self_conjugate == row.starred, "star flag of row " + std::to_string(row.number));
      if (row.number == 11) o.require(sol.classification == SolutionClass::physical_singular, "#11* physical singular");
    }
    o.require(used.size() == 21, "distinct matches");
    o.detail << " 21 matched, max deviation " << worst;
  });

  report(3, "starred riggings and bijection for (3,2,1)", [](Outcome& o) {
    auto& c = census_321();
    const std::vector<std::pair<int, std::vector<int>>> starred{{6, {0, 0, 5}}, {11, {0, 1, 3}}, {16, {0, 2, 1}}};
    for (const auto& [number, riggings] : starred) {
      const auto idx = find(c, table_roots(number), 1e-7);
      o.require(idx && c.assignment[*idx] && c.assignment[*idx]->riggings == riggings, "#" + std::to_string(number) + "*");
    }
    std::set<rigged::RiggedConfiguration> seen;
    int assigned = 0;
    for (const auto& a : c.assignment)
      if (a) {
        ++assigned;
        seen.insert(*a);
      }
    const auto all = rigged::enumerate_rigged_configs(rigged::SectorShape::spin_half(12), 6, Partition({3, 2, 1}));
    o.require(assigned == 21 && seen.size() == 21 && std::set<rigged::RiggedConfiguration>(all.begin(), all.end()) == seen,
              "bijection");
    o.detail << " #6*->(0,5) #11*->(1,3) #16*->(2,1), " << seen.size() << " -> " << all.size();
  });

  report(4, "N=25 ell=2 census and exceptional solutions", [](Outcome& o) {
    const auto t0 = Clock::now();
    auto c = solve_sector(25, 2, SolverConfig{});
    strings::classify_census(c);
    const double dt = seconds_since(t0);
    o.require(c.counts.real == 255 && c.counts.complex == 21, "255 real + 21 complex");
    const auto pair = find(c, {kHalf, -kHalf}, 1e-12);
    o.require(pair && c.solutions[*pair].classification == SolutionClass::unphysical_singular, "{+-i/2} unphysical");
    const auto a = strings::assign_riggings(c, Partition({1, 1}));
    o.require(a.exceptional_ordinals == std::vector<std::size_t>{23, 255}, "exceptional ordinals 23 and 255");
    std::vector<int> riggings;
    for (auto i : c.exceptional)
      if (c.assignment[i] && c.assignment[i]->nu == Partition({2})) riggings.push_back(c.assignment[i]->riggings[0]);
    std::sort(riggings.begin(), riggings.end());
    o.require(riggings == std::vector<int>{1, 20}, "shape-(2) riggings 1 and 20");
    o.require(c.counts.physical == 275 && c.rc_count == 275, "completeness 275/275");
    int assigned = 0;
    for (const auto& x : c.assignment) assigned += x ? 1 : 0;
    o.require(assigned == 275, "every physical solution assigned");
    o.require(dt <= 1800.0, "runtime");
    o.detail << " " << c.counts.real << " real + " << c.counts.complex << " complex, physical " << c.counts.physical << "/"
             << c.rc_count << ", exceptional at 23 and 255 with riggings 1 and 20, solve " << dt << " s";
  });

  report(5, "singular quintic", [](Outcome& o) {
    const auto roots = polynomial_roots({5120, 11520, -4992, -9312, 2020, -55});
    int pos = 0, neg = 0;
    double smallest = 1e300, worst = 0.0;
    for (const auto& xi : roots) {
      o.require(xi.imag() == 0.0, "real root");
      (xi.real() > 0 ? pos : neg)++;
      if (xi.real() > 0) smallest = std::min(smallest, xi.real());
      const Complex lam = std::sqrt(Complex(xi.real(), 0.0));
      auto sol = bethe::make_solution(12, {kHalf, -kHalf, Complex(0.0, 0.0), lam, -lam});
      const double crit = std::abs(bethe::nw_criterion_value(12, bethe::core_roots(sol.roots)) - 1.0);
      worst = std::max(worst, crit);
      o.require(bethe::nw_criterion(sol) && crit < 1e-10, "criterion residual");
    }
    o.require(pos == 3 && neg == 2, "3 positive, 2 negative");
    o.require(std::abs(std::sqrt(smallest) - 0.178978221719006) < 1e-12, "sqrt of smallest positive root");
    o.detail << " " << pos << " positive, " << neg << " negative, sqrt(xi) = ";
    o.detail.precision(15);
    o.detail << std::sqrt(smallest);
    o.detail.precision(6);
    o.detail << ", max criterion residual " << worst;
  });

  report(6, "N=4 regularized vector with c=2i", [](Outcome& o) {
    const auto sol = bethe::make_solution(4, {kHalf, -kHalf});
    const auto v = oracle::singular_limit_vector(sol, {1e-3, 1e-4, 1e-5}, Complex(0.0, 2.0));
    const std::vector<double> expected{0, 0, 0, 2, 0, 0, -2, 0, 0, -2, 0, 0, 2, 0, 0, 0};
    double diff = 0.0;
    for (std::size_t k = 0; k < 16; ++k) diff = std::max(diff, std::abs(v(static_cast<Eigen::Index>(k)) - expected[k]));
    const double res = oracle::eigen_residual(v, 4, -1.0);
    o.require(diff < 1e-6, "components");
    o.require(res < 1e-8, "eigen-residual");
    o.detail << " max component difference " << diff << ", residual at -J " << res;
  });

  report(7, "completeness against exact diagonalization, N in {4,6,8,10}", [](Outcome& o) {
    int sectors = 0;
    double worst = 0.0;
    for (int n : {4, 6, 8, 10})
      for (int ell = 1; 2 * ell <= n; ++ell, ++sectors) {
        const auto c = solve_sector(n, ell, SolverConfig{});
        const auto rep = oracle::completeness_check(n, ell, c);
        const std::string tag = "N=" + std::to_string(n) + " ell=" + std::to_string(ell);
        o.require(rep.counts_match, tag + " counts");
        o.require(rep.energies_match && rep.max_energy_diff < 1e-8, tag + " energies");
        o.require(rep.max_residual < 1e-6, tag + " residuals");
        worst = std::max(worst, rep.max_residual);
      }
    o.detail << " " << sectors << " sectors, max eigen-residual " << worst;
  });

  report(8, "operator identities", [](Outcome& o) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::normal_distribution<double> g;
    auto random_vector = [&](int n) {
      oracle::StateVector v(static_cast<Eigen::Index>(std::size_t{1} << n));
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
      return v;
    };
    auto T = [](oracle::Block b, Complex x, const oracle::StateVector& v, int n) {
      return oracle::transfer_block_apply(b, x, v, n);
    };
    const Complex I(0.0, 1.0);
    double bb = 0.0, ad = 0.0;
    for (int draw = 0; draw < 10; ++draw) {
      const int n = 3 + draw % 6;
      const Complex l(u(rng), u(rng)), m(u(rng), u(rng));
      std::vector<oracle::StateVector> states{oracle::to_eigen(oracle::vacuum<Complex>(n))};
      for (int k = 0; k < 5; ++k) states.push_back(random_vector(n));
      for (const auto& v : states) {
        const auto x = T(oracle::Block::B, l, T(oracle::Block::B, m, v, n), n);
        const auto y = T(oracle::Block::B, m, T(oracle::Block::B, l, v, n), n);
        bb = std::max(bb, (x - y).norm() / x.norm());
      }
      const auto v = states.back();
      oracle::StateVector lhs = T(oracle::Block::A, l, T(oracle::Block::B, m, v, n), n);
      oracle::StateVector rhs = (l - m - I) / (l - m) * T(oracle::Block::B, m, T(oracle::Block::A, l, v, n), n) +
                                I / (l - m) * T(oracle::Block::B, l, T(oracle::Block::A, m, v, n), n);
      ad = std::max(ad, (lhs - rhs).norm() / lhs.norm());
      lhs = T(oracle::Block::D, l, T(oracle::Block::B, m, v, n), n);
      rhs = (l - m + I) / (l - m) * T(oracle::Block::B, m, T(oracle::Block::D, l, v, n), n) -
            I / (l - m) * T(oracle::Block::B, l, T(oracle::Block::D, m, v, n), n);
      ad = std::max(ad, (lhs - rhs).norm() / lhs.norm());
    }
    o.require(bb < 1e-10, "[B,B]");
    o.require(ad < 1e-9, "A/D exchange");

    double lk = 0.0;
    for (const auto& sol : census_321().solutions) {
      if (!sol.is_physical()) continue;
      for (std::size_t k = 0; k < sol.roots.size(); ++k)
        lk = std::max(lk, std::abs(bethe::offshell_coefficient(k, Complex(0.37, 0.21), sol)));
    }
    o.require(lk < 1e-8, "Lambda_k on shell");

    const auto four = bethe::make_solution(4, {kHalf, -kHalf});
    const double s4 = oracle::singular_scaling_exponent(four);
    const auto twelve = bethe::make_solution(12, {kHalf, -kHalf, Complex(0.0, 0.0), Complex(0.178978221719006, 0.0),
                                                  Complex(-0.178978221719006, 0.0)});
    const double s12 = oracle::singular_scaling_exponent(twelve);
    o.require(std::abs(s4 - 4.0) < 0.1 && std::abs(s12 - 12.0) < 0.1, "eps^N slope");
    o.detail << " [B,B] " << bb << ", A/D " << ad << ", max |Lambda_k| " << lk << ", slopes " << s4 << " (N=4) " << s12
             << " (N=12)";
  });

  report(9, "N=12 ell=5 singular quintic solution", [](Outcome& o) {
    const auto c = solve_sector(12, 5, SolverConfig{});
    const auto xs = polynomial_roots({5120, 11520, -4992, -9312, 2020, -55});
    std::vector<std::vector<Complex>> quintic;
    for (const auto& xi : xs) {
      const Complex lam = std::sqrt(Complex(xi.real(), 0.0));
      quintic.push_back({kHalf, -kHalf, Complex(0.0, 0.0), lam, -lam});
    }
    const double target = 0.178978221719006;
    const auto spectrum = oracle::sector_spectrum(12, 5);
    int found = 0;
    for (const auto& roots : quintic) {
      const auto idx = find(c, roots, 1e-8);
      if (!idx) continue;
      const auto& sol = c.solutions[*idx];
      o.require(sol.classification == SolutionClass::physical_singular, "quintic solution physical");
      ++found;
      if (std::abs(roots[3] - Complex(target, 0.0)) > 1e-9) continue;
      const double e = *bethe::energy(sol);
      const double e_log = bethe::singular_energy_logderivative(sol);
      double nearest = 1e300;
      for (double h : spectrum.highest_weight_energies) nearest = std::min(nearest, std::abs(h - e));
      o.require(std::abs(e - e_log) < 1e-6, "energy against the log-derivative");
      o.require(nearest < 1e-8, "energy in the highest-weight spectrum");
      o.detail << " E = ";
      o.detail.precision(12);
      o.detail << e;
      o.detail.precision(6);
      o.detail << " (log-derivative diff " << std::abs(e - e_log) << ", ED diff " << nearest << ")";
    }
    o.require(found == 5, "all five quintic solutions in the census");
    const auto rep = oracle::completeness_check(12, 5, c);
    o.require(rep.pass(), "sector completeness");
    o.detail << ", " << found << "/5 quintic solutions physical, sector " << rep.physical << "/" << rep.rc_count;
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
