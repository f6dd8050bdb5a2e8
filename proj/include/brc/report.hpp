#pragma once

// Tables of a sector census: solutions grouped per content and
// per block of the outer rigging, one string per line, 8 decimals.

#include <optional>
#include <string>
#include <vector>

#include "brc/io.hpp"
#include "brc/solver.hpp"

namespace brc::report {

struct Row {
  std::size_t index = 0;  // census index
  int number = 0;         // 1-based position in the ordering procedure
  bool starred = false;   // non-self-conjugate strings
  bool exceptional = false;
  SolutionClass classification = SolutionClass::unverified;
  std::vector<std::vector<Complex>> strings;  // longest first
  std::optional<rigged::RiggedConfiguration> rc;
};

struct Group {
  std::string title;
  std::vector<Row> rows;
};

struct Section {
  rigged::Partition content;
  std::string scheme;
  bool heuristic = false;
  std::vector<Group> groups;
};

struct CensusReport {
  int n_sites = 0;
  int ell = 0;
  CensusCounts counts;
  std::uint64_t rc_count = 0;
  std::vector<Section> sections;
  std::vector<Row> unphysical;
  std::vector<std::size_t> exceptional;
  std::vector<std::string> notes;
  bool empty() const { return sections.empty() && unphysical.empty(); }
};

/// "a+bi" with 8 decimals; pure reals print without an imaginary part.
std::string format_root(Complex z);

/// Classifies a copy of the census when it carries no assignment.
CensusReport census_report(const SectorCensus& census);

std::string render_text(const CensusReport& r);
io::json to_json(const CensusReport& r);

}  // namespace brc::report
