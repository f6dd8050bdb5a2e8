#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brc/rigged.hpp"

using namespace brc::rigged;

TEST_CASE("counts follow the binomial difference up to fourteen sites") {
  for (int n = 1; n <= 14; ++n) {
    const auto shape = SectorShape::spin_half(n);
    for (int ell = 1; 2 * ell <= n; ++ell) {
      const auto expected = binomial(n, ell) - binomial(n, ell - 1);
      CHECK(count_rigged_configs(shape, ell) == expected);
      CHECK(enumerate_rigged_configs(shape, ell).size() == expected);
    }
  }
}

TEST_CASE("small sectors") {
  CHECK(enumerate_rigged_configs(SectorShape::spin_half(2), 1).size() == 1);
  CHECK(enumerate_rigged_configs(SectorShape::spin_half(25), 2).size() == 275);
  CHECK(partitions_of(4).size() == 5);
  CHECK(binomial(25, 2) == 300);
}

TEST_CASE("twelve sites, configuration (3,2,1)") {
  const auto shape = SectorShape::spin_half(12);
  const Partition nu({3, 2, 1});
  CHECK(is_admissible(shape, nu));
  CHECK(row_vacancies(shape, nu) == std::vector<int>{0, 2, 6});
  CHECK(count_rigged_configs(shape, nu) == 21);
  const auto rcs = enumerate_rigged_configs(shape, 6, nu);
  REQUIRE(rcs.size() == 21);
  for (const auto& rc : rcs) CHECK(is_valid(shape, rc));
}

TEST_CASE("vacancy numbers") {
  const auto shape = SectorShape::spin_half(25);
  CHECK(vacancy_number(shape, Partition({2}), 2) == 21);
  CHECK(vacancy_number(shape, Partition({1, 1}), 1) == 21);
  CHECK(vacancy_number(shape, Partition({2}), 1) == 23);
}

TEST_CASE("flip is the rigging complement") {
  const auto s25 = SectorShape::spin_half(25);
  RiggedConfiguration a{Partition({2}), {1}};
  CHECK(flip(a, s25).riggings == std::vector<int>{20});
  const auto s12 = SectorShape::spin_half(12);
  RiggedConfiguration b{Partition({3, 2, 1}), {0, 0, 5}};
  const auto fb = flip(b, s12);
  CHECK(fb.riggings == std::vector<int>{0, 2, 1});
  for (const auto& rc : enumerate_rigged_configs(s12, 6)) CHECK(flip(flip(rc, s12), s12) == rc);
}

TEST_CASE("canonical form sorts equal rows") {
  RiggedConfiguration rc{Partition({1, 1}), {3, 7}};
  rc.canonicalize();
  CHECK(rc.is_canonical());
  CHECK(rc.riggings == std::vector<int>{7, 3});
}

TEST_CASE("partition parsing") {
  CHECK(Partition::parse("1,2,3").parts() == std::vector<int>{3, 2, 1});
  CHECK(Partition({3, 2, 1}).to_string() == "(3,2,1)");
  CHECK_THROWS(Partition::parse("2,x"));
}

TEST_CASE("diagram text") {
  const auto shape = SectorShape::spin_half(12);
  const auto text = render(RiggedConfiguration{Partition({3, 2, 1}), {0, 1, 3}}, shape);
  CHECK(text.find("[][][]") != std::string::npos);
}
