#include "brc/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "brc/error.hpp"

namespace brc::io {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw IoError("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

std::string file_sha256(const std::string& path) { return sha256_hex(read_file(path)); }

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const rigged::RiggedConfiguration& rc, const rigged::SectorShape& shape) {
  return json{{"nu", rc.nu.parts()}, {"riggings", rc.riggings}, {"vacancy", rigged::row_vacancies(shape, rc.nu)}};
}

rigged::RiggedConfiguration rc_from_json(const json& j) {
  rigged::RiggedConfiguration rc;
  rc.nu = rigged::Partition(j.at("nu").get<std::vector<int>>());
  rc.riggings = j.at("riggings").get<std::vector<int>>();
  if (rc.riggings.size() != rc.nu.parts().size()) throw IoError("riggings and rows differ in length");
  return rc;
}

namespace {

json roots_json(const std::vector<Complex>& roots) {
  json out = json::array();
  for (const auto& z : roots) out.push_back({z.real(), z.imag()});
  return out;
}

std::vector<Complex> roots_from(const json& j) {
  std::vector<Complex> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw IoError("root must be [re, im]");
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

json rc_entry(const rigged::RiggedConfiguration& rc) {
  return json{{"nu", rc.nu.parts()}, {"riggings", rc.riggings}};
}

}  // namespace

json to_json(const BetheSolution& sol) {
  return json{{"n", sol.n_sites},
              {"ell", sol.ell()},
              {"roots", roots_json(sol.roots)},
              {"residual", sol.residual_norm},
              {"class", to_string(sol.classification)}};
}

BetheSolution solution_from_json(const json& j) {
  BetheSolution s;
  s.n_sites = j.at("n").get<int>();
  s.roots = roots_from(j.at("roots"));
  if (j.contains("ell") && j.at("ell").get<int>() != s.ell()) throw IoError("ell disagrees with the root count");
  s.residual_norm = j.value("residual", 0.0);
  s.classification = solution_class_from_string(j.value("class", std::string("unverified")));
  return s;
}

json to_json(const SolverConfig& c) {
  return json{{"newton_tol", c.newton_tol},
              {"max_iters", c.max_iters},
              {"dedup_tol", c.dedup_tol},
              {"grid_lo", c.grid_lo},
              {"grid_hi", c.grid_hi},
              {"grid_step", c.grid_step},
              {"string_seed_deviations", c.string_seed_deviations},
              {"precision", to_string(c.precision)},
              {"max_seeds", c.max_seeds},
              {"rng_seed", c.rng_seed},
              {"threads", c.threads},
              {"escalate", c.escalate},
              {"random_restarts", c.random_restarts},
              {"real_grid_budget", c.real_grid_budget},
              {"lattice_refinement", c.lattice_refinement},
              {"quantum_window", c.quantum_window},
              {"fusion_budget", c.fusion_budget}};
}

SolverConfig config_from_json(const json& j) {
  SolverConfig c;
  c.newton_tol = j.value("newton_tol", c.newton_tol);
  c.max_iters = j.value("max_iters", c.max_iters);
  c.dedup_tol = j.value("dedup_tol", c.dedup_tol);
  c.grid_lo = j.value("grid_lo", c.grid_lo);
  c.grid_hi = j.value("grid_hi", c.grid_hi);
  c.grid_step = j.value("grid_step", c.grid_step);
  c.string_seed_deviations = j.value("string_seed_deviations", c.string_seed_deviations);
  c.precision = precision_from_string(j.value("precision", to_string(c.precision)));
  c.max_seeds = j.value("max_seeds", c.max_seeds);
  c.rng_seed = j.value("rng_seed", c.rng_seed);
  c.threads = j.value("threads", c.threads);
  c.escalate = j.value("escalate", c.escalate);
  c.random_restarts = j.value("random_restarts", c.random_restarts);
  c.real_grid_budget = j.value("real_grid_budget", c.real_grid_budget);
  c.lattice_refinement = j.value("lattice_refinement", c.lattice_refinement);
  c.quantum_window = j.value("quantum_window", c.quantum_window);
  c.fusion_budget = j.value("fusion_budget", c.fusion_budget);
  return c;
}

json to_json(const RunManifest& m) {
  return json{{"command_line", m.command_line},
              {"config", to_json(m.config)},
              {"started", m.started},
              {"finished", m.finished},
              {"version", m.version},
              {"input_hashes", m.input_hashes},
              {"output_hashes", m.output_hashes},
              {"census_sha256", m.census_sha256}};
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.command_line = j.value("command_line", "");
  if (j.contains("config")) m.config = config_from_json(j.at("config"));
  m.started = j.value("started", "");
  m.finished = j.value("finished", "");
  m.version = j.value("version", "");
  m.input_hashes = j.value("input_hashes", std::map<std::string, std::string>{});
  m.output_hashes = j.value("output_hashes", std::map<std::string, std::string>{});
  m.census_sha256 = j.value("census_sha256", "");
  return m;
}

json census_body(const SectorCensus& c) {
  json sols = json::array();
  for (const auto& s : c.solutions) sols.push_back(to_json(s));
  json assignment = json::array();
  for (const auto& a : c.assignment) assignment.push_back(a ? rc_entry(*a) : json(nullptr));
  return json{{"n", c.n_sites},
              {"ell", c.ell},
              {"content", c.content_filter ? json(c.content_filter->parts()) : json(nullptr)},
              {"rc_count", c.rc_count},
              {"counts",
               {{"real", c.counts.real},
                {"complex", c.counts.complex},
                {"singular", c.counts.singular},
                {"physical", c.counts.physical}}},
              {"solutions", sols},
              {"assignment", assignment},
              {"exceptional", c.exceptional},
              {"assignment_heuristic", c.assignment_heuristic},
              {"config", to_json(c.config)},
              {"notes", c.notes}};
}

SectorCensus census_from_body(const json& j) {
  SectorCensus c;
  c.n_sites = j.at("n").get<int>();
  c.ell = j.at("ell").get<int>();
  if (j.contains("content") && !j.at("content").is_null())
    c.content_filter = rigged::Partition(j.at("content").get<std::vector<int>>());
  c.rc_count = j.value("rc_count", std::uint64_t{0});
  for (const auto& s : j.at("solutions")) {
    c.solutions.push_back(solution_from_json(s));
    if (c.solutions.back().n_sites != c.n_sites || c.solutions.back().ell() != c.ell)
      throw IoError("solution does not belong to the census sector");
  }
  fill_counts(c);
  if (j.contains("assignment"))
    for (const auto& a : j.at("assignment"))
      c.assignment.push_back(a.is_null() ? std::nullopt : std::optional(rc_from_json(a)));
  if (!c.assignment.empty() && c.assignment.size() != c.solutions.size())
    throw IoError("assignment is not aligned with the solutions");
  c.exceptional = j.value("exceptional", std::vector<std::size_t>{});
  c.assignment_heuristic = j.value("assignment_heuristic", false);
  if (j.contains("config")) c.config = config_from_json(j.at("config"));
  c.notes = j.value("notes", std::vector<std::string>{});
  return c;
}

json census_document(const SectorCensus& census, RunManifest manifest) {
  json body = census_body(census);
  manifest.census_sha256 = sha256_hex(body.dump());
  return json{{"census", body}, {"manifest", to_json(manifest)}};
}

LoadedCensus census_from_document(const json& doc) {
  if (!doc.contains("census") || !doc.contains("manifest")) throw IoError("census document needs census and manifest");
  const json& body = doc.at("census");
  RunManifest m = manifest_from_json(doc.at("manifest"));
  if (sha256_hex(body.dump()) != m.census_sha256) throw IntegrityError("census hash does not match its manifest");
  return {census_from_body(body), std::move(m)};
}

void save_census(const std::string& path, const SectorCensus& census, const RunManifest& manifest) {
  write_file(path, dump(census_document(census, manifest)));
}

LoadedCensus load_census(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  try {
    return census_from_document(doc);
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

json assignment_json(const SectorCensus& c) {
  json out = json::array();
  for (std::size_t i = 0; i < c.solutions.size(); ++i) {
    json e{{"roots", roots_json(c.solutions[i].roots)}};
    const bool exc = std::find(c.exceptional.begin(), c.exceptional.end(), i) != c.exceptional.end();
    if (exc) e["exceptional"] = true;
    if (i < c.assignment.size() && c.assignment[i]) e["rc"] = rc_entry(*c.assignment[i]);
    else if (!exc) e["rc"] = nullptr;
    out.push_back(std::move(e));
  }
  return json{{"n", c.n_sites}, {"ell", c.ell}, {"solutions", out}};
}

}  // namespace brc::io
