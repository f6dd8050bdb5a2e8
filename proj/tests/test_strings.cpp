#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "brc/strings.hpp"
#include "table_321.hpp"

using namespace brc;
using rigged::Partition;

namespace {

BetheSolution row(int number) {
  const auto& r = testdata::kTable321[static_cast<std::size_t>(number - 1)];
  BetheSolution s;
  s.n_sites = 12;
  s.roots.assign(r.roots.begin(), r.roots.end());
  s.classification = SolutionClass::regular;
  return s;
}

}  // namespace

TEST_CASE("pure imaginary solution with a split middle root") {
  auto s = row(11);
  auto d = strings::decompose(s, Partition({3, 2, 1}));
  CHECK(d.content == Partition({3, 2, 1}));
  CHECK(d.non_self_conjugate);
  CHECK(strings::longest_string_key(d) == doctest::Approx(0.0));
  CHECK(strings::infer_content(s) == Partition({3, 2, 1}));
}

TEST_CASE("ordering keys of the tables") {
  CHECK(strings::longest_string_key(strings::decompose(row(1), Partition({3, 2, 1}))) == doctest::Approx(0.54455699));
  for (int k = 1; k < 21; ++k) {
    auto a = strings::decompose(row(k), Partition({3, 2, 1}));
    auto b = strings::decompose(row(k + 1), Partition({3, 2, 1}));
    CHECK(strings::longest_string_key(a) > strings::longest_string_key(b));
  }
}

TEST_CASE("starred rows are exactly the non-self-conjugate ones") {
  for (const auto& r : testdata::kTable321) {
    auto d = strings::decompose(row(r.number), Partition({3, 2, 1}));
    CHECK(d.non_self_conjugate == r.starred);
    for (const auto& g : d.groups) CHECK(g.deviation < 0.06);
  }
}

TEST_CASE("perfect two-string") {
  BetheSolution s;
  s.n_sites = 10;
  s.roots = {Complex(0.3, 0.51), Complex(0.3, -0.51)};
  auto d = strings::decompose(s);
  CHECK(d.content == Partition({2}));
  REQUIRE(d.groups.size() == 1);
  CHECK(d.groups[0].deviation == doctest::Approx(0.01));
  CHECK(d.groups[0].self_conjugate);
  CHECK_FALSE(d.non_self_conjugate);
}

TEST_CASE("negation mirrors the decomposition") {
  auto s = row(3);
  auto m = s;
  for (auto& z : m.roots) z = -z;
  auto a = strings::decompose(s, Partition({3, 2, 1}));
  auto b = strings::decompose(m, Partition({3, 2, 1}));
  CHECK(a.content == b.content);
  CHECK(strings::longest_string_key(a) == doctest::Approx(-strings::longest_string_key(b)));
}

TEST_CASE("single real root") {
  BetheSolution s;
  s.n_sites = 6;
  s.roots = {Complex(0.7, 0.0)};
  CHECK(strings::longest_string_key(strings::decompose(s)) == doctest::Approx(0.7));
}

TEST_CASE("no exceptional real solutions on fourteen sites") {
  auto c = solve_sector(14, 2, SolverConfig{});
  std::vector<std::pair<double, double>> pairs;
  for (const auto& s : c.solutions) {
    if (!s.is_real()) continue;
    const double a = s.roots[0].real(), b = s.roots[1].real();
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
  const int vacancy = rigged::vacancy_number(rigged::SectorShape::spin_half(14), Partition({1, 1}), 1);
  CHECK(static_cast<int>(pairs.size()) == (vacancy + 1) * (vacancy + 2) / 2);
  CHECK(strings::detect_exceptional(pairs, Partition({1, 1}), vacancy).empty());
}

TEST_CASE("best fit removes the isolated element") {
  // blocks of 2 and 1; any single removal among the first three fits, the
  // outer key singles out the third
  const std::vector<double> inner{-1.0, 0.5, 1.0, -2.0};
  const std::vector<double> outer{3.0, 2.9, 2.0, 1.0};
  CHECK(strings::best_fit_removals(inner, outer, {2, 1}) == std::vector<std::size_t>{2});
  CHECK(strings::forced_removals(inner, {2, 1}).empty());
  CHECK(strings::best_fit_removals({-1.0, 0.5, -2.0}, {3.0, 2.9, 1.0}, {2, 1}).empty());
}

TEST_CASE("classification of the (3,2,1) tables") {
  SectorCensus c;
  c.n_sites = 12;
  c.ell = 6;
  for (int k = 1; k <= 21; ++k) {
    auto s = row(k);
    if (k == 11) s.classification = SolutionClass::physical_singular;
    c.solutions.push_back(s);
  }
  fill_counts(c);
  auto a = strings::assign_riggings(c, Partition({3, 2, 1}));
  REQUIRE(a.solutions.size() == 21);
  auto rc_of = [&](int number) {
    for (std::size_t k = 0; k < a.solutions.size(); ++k)
      if (a.solutions[k] == static_cast<std::size_t>(number - 1)) return *a.rc[k];
    FAIL("missing");
    return rigged::RiggedConfiguration{};
  };
  CHECK(rc_of(6).riggings == std::vector<int>{0, 0, 5});
  CHECK(rc_of(11).riggings == std::vector<int>{0, 1, 3});
  CHECK(rc_of(16).riggings == std::vector<int>{0, 2, 1});
  CHECK(a.exceptional.empty());
}

TEST_CASE("empty census gives an empty assignment") {
  SectorCensus c;
  c.n_sites = 12;
  c.ell = 6;
  auto a = strings::assign_riggings(c, Partition({3, 2, 1}));
  CHECK(a.solutions.empty());
}
