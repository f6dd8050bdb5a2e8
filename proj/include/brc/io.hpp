#pragma once

// JSON persistence of rigged configurations, solutions, censuses and
// rigging assignments. Every persisted census carries a run manifest.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "brc/rigged.hpp"
#include "brc/solver.hpp"

namespace brc::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "1.0.0";

struct RunManifest {
  std::string command_line;
  SolverConfig config;
  std::string started;
  std::string finished;
  std::string version = kArtifactVersion;
  std::map<std::string, std::string> input_hashes;   // path -> sha256
  std::map<std::string, std::string> output_hashes;  // path -> sha256
  /// sha256 of the serialized census body; filled on save.
  std::string census_sha256;
};

std::string sha256_hex(const std::string& bytes);
std::string file_sha256(const std::string& path);
std::string utc_timestamp();

json to_json(const rigged::RiggedConfiguration& rc, const rigged::SectorShape& shape);
rigged::RiggedConfiguration rc_from_json(const json& j);

json to_json(const BetheSolution& sol);
BetheSolution solution_from_json(const json& j);

json to_json(const SolverConfig& cfg);
SolverConfig config_from_json(const json& j);

json to_json(const RunManifest& m);
RunManifest manifest_from_json(const json& j);

/// Census body without the manifest.
json census_body(const SectorCensus& census);
SectorCensus census_from_body(const json& j);

/// {"census": body, "manifest": manifest}, with the body hash recorded.
json census_document(const SectorCensus& census, RunManifest manifest);

struct LoadedCensus {
  SectorCensus census;
  RunManifest manifest;
};

/// Throws IntegrityError when the body hash disagrees with the manifest.
LoadedCensus census_from_document(const json& doc);

void save_census(const std::string& path, const SectorCensus& census, const RunManifest& manifest);
LoadedCensus load_census(const std::string& path);

/// Per solution {"roots", "rc": {"nu","riggings"}} or {"roots", "exceptional": true};
/// unassigned solutions carry "rc": null.
json assignment_json(const SectorCensus& census);

/// Canonical text used for files: two-space indent and a trailing newline.
std::string dump(const json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace brc::io
