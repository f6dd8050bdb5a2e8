#include "brc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "brc/error.hpp"
#include "brc/io.hpp"
#include "brc/oracle.hpp"
#include "brc/polynomial.hpp"
#include "brc/report.hpp"
#include "brc/rigged.hpp"
#include "brc/solver.hpp"
#include "brc/strings.hpp"

namespace brc::cli {

namespace {

const std::vector<double> kQuintic{5120, 11520, -4992, -9312, 2020, -55};

/// Reference vector for N=4, {+-i/2}, c = 2i.
const std::vector<double> kFourSiteVector{0, 0, 0, 2, 0, 0, -2, 0, 0, -2, 0, 0, 2, 0, 0, 0};

struct Globals {
  std::string precision = "standard";
  bool json = false;
  std::string out;
  int threads = 0;
};

struct SectorArgs {
  int n = 0;
  int ell = 0;
  std::string content;
  std::uint64_t seed = 12345;
  bool no_escalate = false;
};

std::string fixed(double v, int digits = 8) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, std::abs(v) < 0.5 * std::pow(10.0, -digits) ? 0.0 : v);
  return buf;
}

std::optional<rigged::Partition> parse_content(const std::string& s, int ell) {
  if (s.empty()) return std::nullopt;
  rigged::Partition p;
  try {
    p = rigged::Partition::parse(s);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--content: ") + e.what());
  }
  if (p.weight() != ell) throw UsageError("--content must be a partition of ell");
  return p;
}

void check_sector(int n, int ell) {
  if (n < 1) throw UsageError("--n must be positive");
  if (ell < 0 || 2 * ell > n) throw UsageError("--ell must satisfy 0 <= ell <= n/2");
}

SolverConfig make_config(const Globals& g, const SectorArgs& a) {
  SolverConfig cfg;
  cfg.precision = precision_from_string(g.precision);
  cfg.threads = g.threads;
  cfg.rng_seed = a.seed;
  cfg.escalate = !a.no_escalate;
  return cfg;
}

std::string joined(const std::vector<std::string>& args) {
  std::string s = "brc";
  for (const auto& a : args) s += " " + a;
  return s;
}

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) out << text;
  else io::write_file(g.out, text);
}

int cmd_enum(const Globals& g, const SectorArgs& a, std::ostream& out) {
  check_sector(a.n, a.ell);
  const auto shape = rigged::SectorShape::spin_half(a.n);
  const auto content = parse_content(a.content, a.ell);
  const auto rcs = rigged::enumerate_rigged_configs(shape, a.ell, content);
  if (g.json) {
    io::json items = io::json::array();
    for (const auto& rc : rcs) items.push_back(io::to_json(rc, shape));
    emit(g, out, io::dump(io::json{{"n", a.n}, {"ell", a.ell}, {"count", rcs.size()}, {"configurations", items}}));
  } else {
    std::ostringstream os;
    os << "N=" << a.n << " ell=" << a.ell;
    if (content) os << " content " << content->to_string();
    os << ": " << rcs.size() << " rigged configurations\n";
    for (std::size_t k = 0; k < rcs.size(); ++k) {
      os << "\n#" << k + 1 << " " << rcs[k].nu.to_string() << "\n" << rigged::render(rcs[k], shape);
    }
    emit(g, out, os.str());
  }
  return pass;
}

int cmd_solve(const Globals& g, const SectorArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  check_sector(a.n, a.ell);
  if (a.ell < 1) throw UsageError("solve needs ell >= 1");
  const auto content = parse_content(a.content, a.ell);
  const auto cfg = make_config(g, a);
  io::RunManifest m;
  m.command_line = joined(args);
  m.config = cfg;
  m.started = io::utc_timestamp();
  auto census = solve_sector(a.n, a.ell, cfg, content);
  strings::classify_census(census);
  m.finished = io::utc_timestamp();
  const auto doc = io::census_document(census, m);
  if (!g.out.empty()) io::write_file(g.out, io::dump(doc));
  if (g.json) {
    if (g.out.empty()) out << io::dump(doc);
  } else {
    out << "N=" << a.n << " ell=" << a.ell << (content ? " content " + content->to_string() : std::string()) << ": "
        << census.solutions.size() << " solutions (" << census.counts.real << " real, " << census.counts.complex
        << " complex, " << census.counts.singular << " singular)\n";
    out << "physical " << census.counts.physical << "/" << census.rc_count << "\n";
    for (const auto& note : census.notes) out << "  " << note << "\n";
    if (!g.out.empty()) out << "census written to " << g.out << "\n";
  }
  return census.complete() ? pass : incomplete;
}

io::LoadedCensus load(const std::string& path) {
  if (path.empty()) throw UsageError("--census is required");
  return io::load_census(path);
}

int cmd_classify(const Globals& g, const std::string& path, std::ostream& out) {
  auto loaded = load(path);
  auto& census = loaded.census;
  strings::classify_census(census);
  const std::string text = io::dump(io::assignment_json(census));
  if (g.json) {
    emit(g, out, text);
    return pass;
  }
  if (!g.out.empty()) io::write_file(g.out, text);
  out << report::render_text(report::census_report(census));
  out << "exceptional (census indices):";
  for (auto i : census.exceptional) out << " " << i;
  out << "\n";
  return pass;
}

int cmd_report(const Globals& g, const SectorArgs& a, const std::string& path, const std::vector<std::string>& args,
               std::ostream& out) {
  SectorCensus census;
  if (!path.empty()) {
    census = load(path).census;
  } else {
    check_sector(a.n, a.ell);
    if (a.ell < 1) throw UsageError("report needs --census or ell >= 1");
    (void)args;
    census = solve_sector(a.n, a.ell, make_config(g, a), parse_content(a.content, a.ell));
  }
  const auto r = report::census_report(census);
  emit(g, out, g.json ? io::dump(report::to_json(r)) : report::render_text(r));
  return pass;
}

io::json four_site_check() {
  const auto sol = bethe::make_solution(4, {Complex(0.0, 0.5), Complex(0.0, -0.5)});
  const auto v = oracle::singular_limit_vector(sol, {1e-3, 1e-4, 1e-5}, Complex(0.0, 2.0));
  double diff = 0.0;
  for (std::size_t k = 0; k < kFourSiteVector.size(); ++k)
    diff = std::max(diff, std::abs(v(static_cast<Eigen::Index>(k)) - Complex(kFourSiteVector[k], 0.0)));
  const double res = oracle::eigen_residual(v, 4, -1.0);
  return io::json{{"max_component_diff", diff}, {"eigen_residual", res}, {"pass", diff < 1e-6 && res < 1e-8}};
}

int cmd_verify(const Globals& g, const SectorArgs& a, const std::string& path, double J, std::ostream& out) {
  check_sector(a.n, a.ell);
  oracle::check_size(a.n);
  SectorCensus census;
  if (!path.empty()) {
    census = load(path).census;
    if (census.n_sites != a.n || census.ell != a.ell) throw UsageError("census sector differs from --n/--ell");
    if (census.content_filter) throw UsageError("verify needs a census of the whole sector");
  } else {
    if (a.ell < 1) throw UsageError("verify needs ell >= 1");
    census = solve_sector(a.n, a.ell, make_config(g, a));
  }
  const auto rep = oracle::completeness_check(a.n, a.ell, census, J);
  bool ok = rep.pass();
  io::json doc{{"n", a.n},
               {"ell", a.ell},
               {"physical", rep.physical},
               {"rc_count", rep.rc_count},
               {"highest_weight_count", rep.highest_weight_count},
               {"counts_match", rep.counts_match},
               {"energies_match", rep.energies_match},
               {"max_energy_diff", rep.max_energy_diff},
               {"max_residual", rep.max_residual},
               {"unmatched_solver", rep.unmatched_solver},
               {"unmatched_ed", rep.unmatched_ed}};
  io::json sols = io::json::array();
  for (const auto& c : rep.checks) sols.push_back({{"index", c.index}, {"energy", c.energy}, {"residual", c.residual}});
  doc["solutions"] = sols;
  if (a.n == 4 && a.ell == 2) {
    doc["four_site_vector"] = four_site_check();
    ok = ok && doc["four_site_vector"]["pass"].get<bool>();
  }
  doc["pass"] = ok;
  const int code = ok ? pass : (static_cast<std::uint64_t>(rep.physical) < rep.rc_count ? incomplete : mismatch);
  if (g.json || !ok) {
    emit(g, out, io::dump(doc));
  } else {
    std::ostringstream os;
    os << "N=" << a.n << " ell=" << a.ell << ": pass\n"
       << "physical " << rep.physical << " = rigged configurations " << rep.rc_count << " = highest weight "
       << rep.highest_weight_count << "\n"
       << "max energy difference " << rep.max_energy_diff << ", max eigen-residual " << rep.max_residual << "\n";
    if (doc.contains("four_site_vector"))
      os << "four-site singular vector: component difference " << doc["four_site_vector"]["max_component_diff"].get<double>()
         << ", eigen-residual " << doc["four_site_vector"]["eigen_residual"].get<double>() << "\n";
    emit(g, out, os.str());
  }
  return code;
}

int cmd_quintic(const Globals& g, std::ostream& out) {
  const auto roots = polynomial_roots(kQuintic);
  io::json items = io::json::array();
  std::ostringstream os;
  os << "5120 x^5 + 11520 x^4 - 4992 x^3 - 9312 x^2 + 2020 x - 55 = 0\n";
  double smallest = std::numeric_limits<double>::infinity();
  bool all = true;
  for (const auto& xi : roots) {
    const Complex lam = std::sqrt(Complex(xi.real(), 0.0));
    auto sol = bethe::make_solution(12, {Complex(0.0, 0.5), Complex(0.0, -0.5), Complex(0.0, 0.0), lam, -lam});
    const Complex crit = bethe::nw_criterion_value(12, bethe::core_roots(sol.roots));
    const bool holds = bethe::nw_criterion(sol);
    all = all && holds;
    if (xi.real() > 0) smallest = std::min(smallest, xi.real());
    items.push_back({{"xi", xi.real()},
                     {"lambda", {lam.real(), lam.imag()}},
                     {"criterion_residual", std::abs(crit - 1.0)},
                     {"bethe_residual", sol.residual_norm},
                     {"class", to_string(sol.classification)}});
    os << "xi = " << fixed(xi.real(), 15) << "   lambda = +-" << report::format_root(lam)
       << "   criterion |value-1| = " << std::abs(crit - 1.0) << "   " << to_string(sol.classification) << "\n";
  }
  os << "sqrt(smallest positive xi) = " << fixed(std::sqrt(smallest), 15) << "\n";
  if (g.json) {
    emit(g, out, io::dump(io::json{{"coefficients", kQuintic}, {"roots", items}, {"sqrt_smallest_positive", std::sqrt(smallest)}}));
  } else {
    emit(g, out, os.str());
  }
  return all ? pass : mismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bethe roots and rigged configurations of the spin-1/2 XXX chain", "brc"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--precision", g.precision, "standard or extended")
      ->check(CLI::IsMember({"standard", "extended"}));
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--out", g.out, "output file");
  app.add_option("--threads", g.threads, "worker threads (default BRC_THREADS or all cores)")->check(CLI::NonNegativeNumber);

  SectorArgs a;
  std::string census_path;
  double J = 1.0;
  auto sector = [&](CLI::App* sub, bool required) {
    auto* n = sub->add_option("--n", a.n, "chain length");
    auto* l = sub->add_option("--ell", a.ell, "number of down spins");
    if (required) {
      n->required();
      l->required();
    }
    sub->fallthrough();
  };
  auto* e = app.add_subcommand("enum", "enumerate rigged configurations");
  sector(e, true);
  e->add_option("--content", a.content, "configuration, e.g. 3,2,1");
  auto* s = app.add_subcommand("solve", "solve the Bethe equations of a sector");
  sector(s, true);
  s->add_option("--content", a.content, "restrict to one string content");
  s->add_option("--seed", a.seed, "random seed");
  s->add_flag("--no-escalate", a.no_escalate, "skip the extended and dense passes");
  auto* c = app.add_subcommand("classify", "assign rigged configurations to a stored census");
  c->add_option("--census", census_path, "census file")->required();
  c->fallthrough();
  auto* v = app.add_subcommand("verify", "check a census against exact diagonalization");
  sector(v, true);
  v->add_option("--census", census_path, "census file (solved when omitted)");
  v->add_option("--J", J, "coupling");
  auto* r = app.add_subcommand("report", "string tables of a census");
  sector(r, false);
  r->add_option("--census", census_path, "census file");
  r->add_option("--content", a.content, "restrict to one string content when solving");
  auto* q = app.add_subcommand("quintic", "roots of the N=12 ell=5 singular quintic");
  q->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return pass;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n" << app.help();
    return usage;
  }

  try {
    if (e->parsed()) return cmd_enum(g, a, out);
    if (s->parsed()) return cmd_solve(g, a, args, out);
    if (c->parsed()) return cmd_classify(g, census_path, out);
    if (v->parsed()) return cmd_verify(g, a, census_path, J, out);
    if (r->parsed()) return cmd_report(g, a, census_path, args, out);
    if (q->parsed()) return cmd_quintic(g, out);
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return usage;
  } catch (const ResourceError& ex) {
    err << "resource error: " << ex.what() << "\n";
    return usage;
  } catch (const IntegrityError& ex) {
    err << "integrity error: " << ex.what() << "\n";
    return mismatch;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return mismatch;
  } catch (const std::invalid_argument& ex) {
    err << "usage error: " << ex.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace brc::cli
