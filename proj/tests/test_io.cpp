#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "brc/error.hpp"
#include "brc/io.hpp"
#include "brc/strings.hpp"

using namespace brc;

TEST_CASE("rigged configuration JSON") {
  const auto shape = rigged::SectorShape::spin_half(12);
  rigged::RiggedConfiguration rc{rigged::Partition({3, 2, 1}), {0, 1, 3}};
  const auto j = io::to_json(rc, shape);
  CHECK(j.dump() == R"({"nu":[3,2,1],"riggings":[0,1,3],"vacancy":[0,2,6]})");
  CHECK(io::rc_from_json(j) == rc);
}

TEST_CASE("solution JSON round trip") {
  auto s = bethe::make_solution(4, {Complex(0.0, 0.5), Complex(0.0, -0.5)});
  const auto j = io::to_json(s);
  CHECK(j["n"] == 4);
  CHECK(j["ell"] == 2);
  CHECK(j["class"] == "physical_singular");
  const auto back = io::solution_from_json(j);
  CHECK(back.roots == s.roots);
  CHECK(back.classification == s.classification);
}

TEST_CASE("census document and tampering") {
  auto c = solve_sector(6, 2, SolverConfig{});
  strings::classify_census(c);
  io::RunManifest m;
  m.command_line = "brc solve --n 6 --ell 2";
  m.config = c.config;
  const auto doc = io::census_document(c, m);
  const auto loaded = io::census_from_document(doc);
  REQUIRE(loaded.census.solutions.size() == c.solutions.size());
  for (std::size_t k = 0; k < c.solutions.size(); ++k) CHECK(loaded.census.solutions[k].roots == c.solutions[k].roots);
  CHECK(loaded.census.assignment == c.assignment);
  CHECK(loaded.manifest.command_line == m.command_line);
  CHECK(io::dump(io::assignment_json(loaded.census)) == io::dump(io::assignment_json(c)));

  auto bad = doc;
  bad["census"]["solutions"][0]["roots"][0][0] = 0.125;
  CHECK_THROWS_AS(io::census_from_document(bad), IntegrityError);
}

TEST_CASE("files") {
  const std::string path = "test_io_census.json";
  auto c = solve_sector(4, 1, SolverConfig{});
  io::save_census(path, c, io::RunManifest{});
  const auto loaded = io::load_census(path);
  CHECK(loaded.census.counts.physical == c.counts.physical);
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::load_census("does/not/exist.json"), IoError);
}

TEST_CASE("hashing") {
  CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("config round trip") {
  SolverConfig cfg;
  cfg.rng_seed = 7;
  cfg.precision = Precision::extended;
  const auto back = io::config_from_json(io::to_json(cfg));
  CHECK(back.rng_seed == 7);
  CHECK(back.precision == Precision::extended);
  CHECK(back.newton_tol == cfg.newton_tol);
}
