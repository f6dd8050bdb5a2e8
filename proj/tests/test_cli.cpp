#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "brc/cli.hpp"
#include "brc/io.hpp"

using brc::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("enum counts") {
  auto r = call({"enum", "--n", "12", "--ell", "6", "--content", "3,2,1", "--json"});
  CHECK(r.code == 0);
  CHECK(brc::io::json::parse(r.out)["count"] == 21);
  CHECK(brc::io::json::parse(call({"--json", "enum", "--n", "25", "--ell", "2"}).out)["count"] == 275);
  CHECK(brc::io::json::parse(call({"enum", "--n", "2", "--ell", "1", "--json"}).out)["count"] == 1);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 64);
  CHECK(call({"enum", "--n", "4"}).code == 64);
  CHECK(call({"enum", "--n", "4", "--ell", "3"}).code == 64);
  CHECK(call({"enum", "--n", "6", "--ell", "3", "--content", "2"}).code == 64);
  CHECK(call({"solve", "--n", "6", "--ell", "2", "--precision", "quad"}).code == 64);
}

TEST_CASE("verify") {
  auto r = call({"verify", "--n", "4", "--ell", "2", "--json"});
  CHECK(r.code == 0);
  auto j = brc::io::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["four_site_vector"]["pass"] == true);
  CHECK(call({"verify", "--n", "20", "--ell", "2"}).code == 64);
}

TEST_CASE("solve, classify and report through files") {
  const std::string census = "test_cli_census.json", a1 = "test_cli_a1.json", a2 = "test_cli_a2.json";
  CHECK(call({"solve", "--n", "8", "--ell", "3", "--out", census}).code == 0);
  CHECK(call({"verify", "--n", "8", "--ell", "3", "--census", census}).code == 0);
  CHECK(call({"classify", "--census", census, "--json", "--out", a1}).code == 0);
  CHECK(call({"classify", "--census", census, "--json", "--out", a2}).code == 0);
  CHECK(brc::io::read_file(a1) == brc::io::read_file(a2));
  auto rep = call({"report", "--census", census});
  CHECK(rep.code == 0);
  CHECK(rep.out.find("completeness 28/28") != std::string::npos);
  CHECK(call({"verify", "--n", "8", "--ell", "2", "--census", census}).code == 64);

  auto text = brc::io::read_file(census);
  const auto pos = text.find("\"residual\"");
  text.replace(pos, 10, "\"residuaL\"");
  brc::io::write_file(census, text);
  CHECK(call({"classify", "--census", census}).code == 2);
  for (const auto& f : {census, a1, a2}) std::remove(f.c_str());
}

TEST_CASE("quintic") {
  auto r = call({"quintic", "--json"});
  CHECK(r.code == 0);
  auto j = brc::io::json::parse(r.out);
  CHECK(j["roots"].size() == 5);
  CHECK(std::abs(j["sqrt_smallest_positive"].get<double>() - 0.178978221719006) < 1e-12);
}
