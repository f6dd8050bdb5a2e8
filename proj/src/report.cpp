#include "brc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "brc/strings.hpp"

namespace brc::report {

namespace {

std::string fixed8(double v) {
  if (std::abs(v) < 5e-9) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8f", v);
  return buf;
}

Row make_row(const SectorCensus& c, std::size_t i, int number, const std::optional<rigged::Partition>& content) {
  Row r;
  r.index = i;
  r.number = number;
  r.classification = c.solutions[i].classification;
  r.exceptional = std::find(c.exceptional.begin(), c.exceptional.end(), i) != c.exceptional.end();
  if (i < c.assignment.size()) r.rc = c.assignment[i];
  try {
    auto dec = strings::decompose(c.solutions[i], content);
    r.starred = dec.non_self_conjugate;
    for (const auto& g : dec.groups) r.strings.push_back(g.members);
  } catch (const Error&) {
    r.strings.push_back(c.solutions[i].roots);
  }
  return r;
}

/// Index in nu.parts() of the longest row whose vacancy is positive.
std::optional<std::size_t> outer_row(const rigged::Partition& nu, int n) {
  const auto shape = rigged::SectorShape::spin_half(n);
  const auto vac = rigged::row_vacancies(shape, nu);
  for (std::size_t k = 0; k < vac.size(); ++k)
    if (vac[k] > 0) return k;
  return std::nullopt;
}

std::string rc_text(const rigged::RiggedConfiguration& rc) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < rc.riggings.size(); ++k) os << (k ? "," : "") << rc.riggings[k];
  os << ')';
  return os.str();
}

}  // namespace

std::string format_root(Complex z) {
  const double re = z.real(), im = z.imag();
  if (std::abs(im) < 5e-9) return fixed8(re);
  std::string out = std::abs(re) < 5e-9 ? "" : fixed8(re);
  if (out.empty()) out = im < 0 ? "-" : "";
  else out += im < 0 ? "-" : "+";
  return out + fixed8(std::abs(im)) + "i";
}

CensusReport census_report(const SectorCensus& input) {
  CensusReport r;
  r.n_sites = input.n_sites;
  r.ell = input.ell;
  r.counts = input.counts;
  r.rc_count = input.rc_count;
  r.notes = input.notes;
  if (input.solutions.empty()) return r;

  SectorCensus c = input;
  if (c.assignment.size() != c.solutions.size()) strings::classify_census(c);
  r.exceptional = c.exceptional;

  std::map<rigged::Partition, std::vector<std::size_t>> by_content;
  for (std::size_t i = 0; i < c.solutions.size(); ++i) {
    if (!c.solutions[i].is_physical()) {
      r.unphysical.push_back(make_row(c, i, 0, std::nullopt));
      continue;
    }
    auto nu = strings::infer_content(c.solutions[i]);
    by_content[nu ? *nu : rigged::Partition()].push_back(i);
  }

  // contents with longer rows first, as in the tables
  std::vector<rigged::Partition> order;
  for (const auto& [nu, idx] : by_content) order.push_back(nu);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a > b; });

  for (const auto& nu : order) {
    Section sec;
    sec.content = nu;
    std::vector<std::size_t> seq;
    if (!nu.empty()) {
      try {
        auto a = strings::assign_riggings(c, nu);
        sec.scheme = a.scheme;
        sec.heuristic = a.heuristic;
        seq = a.solutions;
      } catch (const Error& e) {
        sec.scheme = std::string("unordered: ") + e.what();
      }
    }
    if (seq.empty()) seq = by_content[nu];
    // exceptional solutions that were merged into another family stay listed here
    const auto outer = nu.empty() ? std::nullopt : outer_row(nu, c.n_sites);
    std::optional<int> key;
    int number = 0, group_no = 0;
    for (auto i : seq) {
      Row row = make_row(c, i, ++number, nu.empty() ? std::nullopt : std::optional(nu));
      std::optional<int> k;
      if (outer && row.rc && row.rc->nu == nu) k = row.rc->riggings[*outer];
      if (sec.groups.empty() || (k && key && *k != *key)) {
        sec.groups.push_back(Group{"Group " + std::to_string(++group_no), {}});
      }
      if (k) key = k;
      sec.groups.back().rows.push_back(std::move(row));
    }
    if (sec.groups.size() == 1) sec.groups.front().title.clear();
    r.sections.push_back(std::move(sec));
  }
  return r;
}

std::string render_text(const CensusReport& r) {
  std::ostringstream os;
  if (r.empty()) return "";
  os << "N=" << r.n_sites << " ell=" << r.ell << "  solutions " << r.counts.real + r.counts.complex << " (real "
     << r.counts.real << ", complex " << r.counts.complex << ", singular " << r.counts.singular << ")\n";
  os << "completeness " << r.counts.physical << "/" << r.rc_count << "\n";
  for (const auto& sec : r.sections) {
    os << "\ncontent " << (sec.content.empty() ? std::string("?") : sec.content.to_string());
    if (!sec.scheme.empty()) os << "  [" << sec.scheme << (sec.heuristic ? ", heuristic" : "") << "]";
    os << "\n";
    for (const auto& g : sec.groups) {
      if (!g.title.empty()) os << "\n" << g.title << "\n";
      for (const auto& row : g.rows) {
        std::string label = std::to_string(row.number) + (row.starred ? "*" : "");
        for (std::size_t s = 0; s < row.strings.size(); ++s) {
          os << (s == 0 ? label : std::string()) << std::string(s == 0 ? (label.size() < 6 ? 6 - label.size() : 1) : 6, ' ');
          for (std::size_t k = 0; k < row.strings[s].size(); ++k) os << (k ? "  " : "") << format_root(row.strings[s][k]);
          if (s == 0) {
            if (row.exceptional) os << "    exceptional";
            if (row.rc) os << "    " << row.rc->nu.to_string() << " " << rc_text(*row.rc);
            if (row.classification == SolutionClass::physical_singular) os << "    singular";
          }
          os << "\n";
        }
      }
    }
  }
  if (!r.exceptional.empty()) {
    os << "\nexceptional:";
    for (auto i : r.exceptional) os << " " << i;
    os << "\n";
  }
  if (!r.unphysical.empty()) {
    os << "\nunphysical:\n";
    for (const auto& row : r.unphysical) {
      os << "      ";
      bool first = true;
      for (const auto& s : row.strings)
        for (auto z : s) {
          os << (first ? "" : "  ") << format_root(z);
          first = false;
        }
      os << "    " << to_string(row.classification) << "\n";
    }
  }
  return os.str();
}

io::json to_json(const CensusReport& r) {
  auto row_json = [](const Row& row) {
    io::json strings = io::json::array();
    for (const auto& s : row.strings) {
      io::json members = io::json::array();
      for (auto z : s) members.push_back(format_root(z));
      strings.push_back(members);
    }
    io::json j{{"index", row.index}, {"number", row.number}, {"starred", row.starred},
               {"class", to_string(row.classification)}, {"strings", strings}};
    if (row.exceptional) j["exceptional"] = true;
    if (row.rc) j["rc"] = {{"nu", row.rc->nu.parts()}, {"riggings", row.rc->riggings}};
    return j;
  };
  io::json sections = io::json::array();
  for (const auto& sec : r.sections) {
    io::json groups = io::json::array();
    for (const auto& g : sec.groups) {
      io::json rows = io::json::array();
      for (const auto& row : g.rows) rows.push_back(row_json(row));
      groups.push_back({{"title", g.title}, {"solutions", rows}});
    }
    sections.push_back({{"content", sec.content.parts()}, {"scheme", sec.scheme}, {"heuristic", sec.heuristic}, {"groups", groups}});
  }
  io::json unphysical = io::json::array();
  for (const auto& row : r.unphysical) unphysical.push_back(row_json(row));
  return io::json{{"n", r.n_sites},
                  {"ell", r.ell},
                  {"completeness", {{"physical", r.counts.physical}, {"rc_count", r.rc_count}}},
                  {"counts", {{"real", r.counts.real}, {"complex", r.counts.complex}, {"singular", r.counts.singular}}},
                  {"sections", sections},
                  {"exceptional", r.exceptional},
                  {"unphysical", unphysical}};
}

}  // namespace brc::report
