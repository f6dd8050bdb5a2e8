#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "brc/solver.hpp"

namespace brc {

namespace {

using rigged::Partition;

/// Bare string centres (len/2) tan(pi I / N) for I a multiple of 1/(2 r) in (-N/2, N/2).
std::vector<double> lattice_centers(int n, int len, int refinement) {
  std::vector<double> out;
  const double step = 0.5 / std::max(1, refinement);
  const double lim = (n - 1) / 2.0;
  for (double I = -lim; I <= lim + 1e-12; I += step) out.push_back(0.5 * len * std::tan(std::numbers::pi * I / n));
  return out;
}

std::vector<double> grid_centers(const SolverConfig& cfg, int refinement) {
  std::vector<double> out;
  const double step = cfg.grid_step / std::max(1, refinement);
  const int count = static_cast<int>(std::floor((cfg.grid_hi - cfg.grid_lo) / step + 1e-9));
  for (int k = 0; k <= count; ++k) out.push_back(cfg.grid_lo + k * step);
  return out;
}

void push_string(std::vector<Complex>& roots, int len, double center, double scale) {
  for (int s = 0; s < len; ++s) roots.emplace_back(center, ((len - 1) / 2.0 - s) * scale);
}

/// Index tuples i_1 < ... < i_m over [0, size), visited in lexicographic order.
void for_each_combination(int size, int m, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(m));
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == m) {
      fn(idx);
      return;
    }
    for (int v = start; v <= size - (m - pos); ++v) {
      idx[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 0);
}

std::uint64_t combination_count(int size, int m) { return rigged::binomial(size, m); }

/// Groups of (string length, multiplicity), longest first.
std::vector<std::pair<int, int>> length_groups(const Partition& nu) {
  std::vector<std::pair<int, int>> out;
  for (int row : nu.distinct_rows()) out.emplace_back(row, nu.multiplicity(row));
  return out;
}

/// All placements of strings of the given content on the centre list, for
/// every imaginary scale. Evenly thinned when there are more than `cap`.
std::vector<std::vector<Complex>> string_placements(const Partition& nu, const std::vector<double>& centers,
                                                    const std::vector<double>& scales, std::size_t cap) {
  const auto groups = length_groups(nu);
  const int size = static_cast<int>(centers.size());
  std::uint64_t total = 1;
  for (auto [len, mult] : groups) total *= std::max<std::uint64_t>(1, combination_count(size, mult));
  const bool has_strings = nu.parts().front() > 1;
  const std::vector<double> used_scales = has_strings ? scales : std::vector<double>{1.0};
  total *= used_scales.size();
  const std::uint64_t stride = cap == 0 || total <= cap ? 1 : (total + cap - 1) / cap;

  std::vector<std::vector<Complex>> out;
  std::uint64_t counter = 0;
  std::vector<std::vector<int>> chosen(groups.size());
  std::function<void(std::size_t)> rec = [&](std::size_t g) {
    if (g == groups.size()) {
      for (double sc : used_scales) {
        if (counter++ % stride != 0) continue;
        std::vector<Complex> roots;
        for (std::size_t k = 0; k < groups.size(); ++k)
          for (int idx : chosen[k]) push_string(roots, groups[k].first, centers[static_cast<std::size_t>(idx)], sc);
        out.push_back(std::move(roots));
      }
      return;
    }
    for_each_combination(size, groups[g].second, [&](const std::vector<int>& idx) {
      chosen[g] = idx;
      rec(g + 1);
    });
  };
  rec(0);
  return out;
}

/// An odd string of length >= 3 fused with a 1-string at the same centre:
/// the middle root splits into a +- i eta.
std::vector<std::vector<Complex>> fusion_placements(const Partition& nu, const std::vector<double>& centers,
                                                    std::size_t cap) {
  std::vector<std::vector<Complex>> out;
  if (nu.multiplicity(1) == 0) return out;
  for (int len : nu.distinct_rows()) {
    if (len < 3 || len % 2 == 0) continue;
    std::vector<int> rest = nu.parts();
    rest.erase(std::find(rest.begin(), rest.end(), len));
    rest.erase(std::find(rest.begin(), rest.end(), 1));
    std::vector<std::vector<Complex>> others{{}};
    if (!rest.empty()) others = string_placements(Partition(rest), centers, {1.0}, cap / std::max<std::size_t>(1, centers.size()));
    for (double a : centers) {
      // the middle root splits vertically (a +- i eta) or horizontally (a +- eta)
      for (Complex eta : {Complex(0.0, 0.02), Complex(0.0, 0.05), Complex(0.02, 0.0), Complex(0.05, 0.0)}) {
        for (const auto& o : others) {
          std::vector<Complex> roots;
          for (int s = 0; s < len; ++s) {
            const double im = (len - 1) / 2.0 - s;
            if (im == 0.0) {
              roots.emplace_back(a + eta);
              roots.emplace_back(a - eta);
            } else {
              roots.emplace_back(a, im);
            }
          }
          roots.insert(roots.end(), o.begin(), o.end());
          out.push_back(std::move(roots));
        }
      }
    }
  }
  return out;
}

std::vector<double> imaginary_scales(const SolverConfig& cfg) {
  std::vector<double> out;
  for (double d : cfg.string_seed_deviations) out.push_back(1.0 + d);
  return out;
}

/// Phase of a length-n string seen by a 1-string: 2 arctan(2x/n).
double theta(int n, double x) { return n == 0 ? 0.0 : 2.0 * std::atan(2.0 * x / n); }
double dtheta(int n, double x) { return n == 0 ? 0.0 : (4.0 / n) / (1.0 + 4.0 * x * x / (double(n) * n)); }

/// Scattering phase between strings of lengths n and m.
double big_theta(int n, int m, double x, bool derivative) {
  auto f = derivative ? dtheta : theta;
  if (n == m) {
    double v = 0.0;
    for (int k = 2; k < 2 * n; k += 2) v += 2.0 * f(k, x);
    return v + f(2 * n, x);
  }
  const int lo = std::abs(n - m), hi = n + m;
  double v = f(lo, x) + f(hi, x);
  for (int k = lo + 2; k < hi; k += 2) v += 2.0 * f(k, x);
  return v;
}

struct StringItem {
  int len;
  double quantum;
};

/// Real centres from the string equations
///   N theta_n(x) - sum Theta_nm(x - y) = 2 pi I,
/// with `fixed` strings held in place. Returns the bare estimate when Newton fails.
std::vector<double> string_centers(int n, const std::vector<StringItem>& items,
                                   const std::vector<std::pair<int, double>>& fixed) {
  const std::size_t m = items.size();
  std::vector<double> x(m);
  for (std::size_t a = 0; a < m; ++a) {
    const double arg = std::clamp(std::numbers::pi * items[a].quantum / n, -0.49 * std::numbers::pi,
                                  0.49 * std::numbers::pi);
    x[a] = 0.5 * items[a].len * std::tan(arg);
  }
  const std::vector<double> bare = x;
  auto residual = [&](const std::vector<double>& v, std::vector<double>& g) {
    g.assign(m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
      double s = n * theta(items[a].len, v[a]) - 2.0 * std::numbers::pi * items[a].quantum;
      for (std::size_t b = 0; b < m; ++b)
        if (b != a) s -= big_theta(items[a].len, items[b].len, v[a] - v[b], false);
      for (auto [len, y] : fixed) s -= big_theta(items[a].len, len, v[a] - y, false);
      g[a] = s;
    }
  };
  auto norm = [](const std::vector<double>& g) {
    double v = 0.0;
    for (double z : g) v = std::max(v, std::abs(z));
    return v;
  };
  std::vector<double> g, trial;
  residual(x, g);
  double merit = norm(g);
  Eigen::MatrixXd jac(m, m);
  Eigen::VectorXd rhs(m);
  for (int it = 0; it < 60 && merit > 1e-11; ++it) {
    for (std::size_t a = 0; a < m; ++a) {
      double diag = n * dtheta(items[a].len, x[a]);
      for (std::size_t b = 0; b < m; ++b) {
        if (b == a) continue;
        const double d = big_theta(items[a].len, items[b].len, x[a] - x[b], true);
        diag -= d;
        jac(a, b) = d;
      }
      for (auto [len, y] : fixed) diag -= big_theta(items[a].len, len, x[a] - y, true);
      jac(a, a) = diag;
      rhs(a) = -g[a];
    }
    const Eigen::VectorXd step = jac.partialPivLu().solve(rhs);
    if (!step.allFinite()) return bare;
    bool accepted = false;
    for (double t = 1.0; t > 1e-4; t *= 0.5) {
      trial = x;
      for (std::size_t a = 0; a < m; ++a) trial[a] += t * step(a);
      residual(trial, g);
      const double mt = norm(g);
      if (mt < merit) {
        x = trial;
        merit = mt;
        accepted = true;
        break;
      }
    }
    if (!accepted) return bare;
  }
  if (!(merit < 1e-8)) return bare;
  for (double v : x)
    if (!(std::abs(v) < 1e5)) return bare;
  return x;
}

/// Every choice of string quantum numbers for the content, solved for centres
/// and dressed as strings. The admissible window is widened by `window` slots
/// on each side; `fixed` strings shift the vacancies and the phases.
void quantum_seeds(int n, const Partition& nu, const SolverConfig& cfg, bool singular_core,
                   const std::vector<std::pair<int, double>>& fixed, std::size_t cap, std::vector<Seed>& out) {
  const auto groups = length_groups(nu);
  std::vector<std::vector<double>> slots(groups.size());
  std::vector<double> edge(groups.size());
  std::uint64_t total = 1;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto [len, mult] = groups[g];
    int vacancy = n;
    for (int row : nu.parts()) vacancy -= 2 * std::min(len, row);
    for (auto [flen, y] : fixed) vacancy -= 2 * std::min(len, flen);
    const int count = vacancy + mult + 2 * cfg.quantum_window;
    if (count < mult) return;
    edge[g] = (vacancy + mult - 1) / 2.0;
    // symmetric about zero, integer or half-integer spaced by one
    for (int k = 0; k < count; ++k) slots[g].push_back(k - (count - 1) / 2.0);
    total *= combination_count(count, mult);
  }
  const bool has_strings = nu.parts().front() > 1;
  const auto scales = has_strings ? imaginary_scales(cfg) : std::vector<double>{1.0};
  const std::uint64_t stride = cap == 0 || total <= cap ? 1 : (total + cap - 1) / cap;
  std::uint64_t counter = 0;

  std::vector<std::vector<int>> chosen(groups.size());
  std::function<void(std::size_t)> rec = [&](std::size_t g) {
    if (g == groups.size()) {
      if (counter++ % stride != 0) return;
      std::vector<StringItem> items;
      std::vector<bool> outer;
      for (std::size_t k = 0; k < groups.size(); ++k)
        for (int idx : chosen[k]) {
          const double slot = slots[k][static_cast<std::size_t>(idx)];
          items.push_back({groups[k].first, slot});
          outer.push_back(std::abs(slot) >= edge[k]);
        }
      const auto centers = string_centers(n, items, fixed);
      auto emit = [&](const std::vector<double>& sc) {
        Seed s;
        for (std::size_t a = 0; a < items.size(); ++a) push_string(s.roots, items[a].len, centers[a], sc[a]);
        s.singular_core = singular_core;
        s.string_like = has_strings;
        out.push_back(std::move(s));
      };
      for (double sc : scales) emit(std::vector<double>(items.size(), sc));
      // strings at the edge of the window are wide pairs far from the string form
      for (std::size_t a = 0; a < items.size(); ++a) {
        if (items[a].len == 1 || !outer[a]) continue;
        for (double w : {1.35, 1.7}) {
          std::vector<double> sc(items.size(), 1.0);
          sc[a] = w;
          emit(sc);
        }
      }
      // a 1-string absorbed into an odd string: the middle root splits
      for (std::size_t a = 0; a < items.size(); ++a) {
        if (items[a].len < 3 || items[a].len % 2 == 0) continue;
        for (std::size_t b = 0; b < items.size(); ++b) {
          if (items[b].len != 1) continue;
          for (Complex eta : {Complex(0.0, 0.02), Complex(0.0, 0.05), Complex(0.02, 0.0), Complex(0.05, 0.0)}) {
            Seed s;
            for (std::size_t c = 0; c < items.size(); ++c) {
              if (c == b) continue;
              if (c != a) {
                push_string(s.roots, items[c].len, centers[c], 1.0);
                continue;
              }
              for (int k = 0; k < items[c].len; ++k) {
                const double im = (items[c].len - 1) / 2.0 - k;
                if (im != 0.0) {
                  s.roots.emplace_back(centers[c], im);
                } else {
                  s.roots.push_back(centers[c] + eta);
                  s.roots.push_back(centers[c] - eta);
                }
              }
            }
            s.singular_core = singular_core;
            s.string_like = true;
            out.push_back(std::move(s));
          }
        }
      }
      // one string widened or narrowed on its own
      std::size_t strings = 0;
      for (const auto& it : items) strings += it.len > 1 ? 1 : 0;
      if (strings < 2) return;
      for (std::size_t a = 0; a < items.size(); ++a) {
        if (items[a].len == 1) continue;
        for (double d : {0.03, -0.03}) {
          std::vector<double> sc(items.size(), 1.0);
          sc[a] += d;
          emit(sc);
        }
      }
      return;
    }
    for_each_combination(static_cast<int>(slots[g].size()), groups[g].second, [&](const std::vector<int>& idx) {
      chosen[g] = idx;
      rec(g + 1);
    });
  };
  rec(0);
}

/// Lattice placements of one content (the dense fallback).
void lattice_seeds(int n, const Partition& nu, const SolverConfig& cfg, bool singular_core, std::size_t cap,
                   std::vector<Seed>& out) {
  std::vector<double> centers;
  if (nu.weight() <= 2) {
    centers = grid_centers(cfg, 1);
  } else {
    // each string length has its own bare lattice; merge them into one list
    for (int len : nu.distinct_rows()) {
      auto c = lattice_centers(n, len, cfg.lattice_refinement);
      centers.insert(centers.end(), c.begin(), c.end());
    }
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                  centers.end());
  }
  for (auto& roots : string_placements(nu, centers, imaginary_scales(cfg), cap)) {
    Seed s;
    s.roots = std::move(roots);
    s.singular_core = singular_core;
    s.string_like = nu.parts().front() > 1;
    out.push_back(std::move(s));
  }
}

void fusion_seeds(int n, const Partition& nu, const SolverConfig& cfg, bool singular_core, std::size_t cap,
                  std::vector<Seed>& out) {
  for (auto& roots : fusion_placements(nu, lattice_centers(n, nu.parts().front(), cfg.lattice_refinement), cap)) {
    Seed s;
    s.roots = std::move(roots);
    s.singular_core = singular_core;
    s.string_like = true;
    out.push_back(std::move(s));
  }
}

}  // namespace

std::vector<Seed> seed_set(int n, int ell, const SolverConfig& cfg, const std::optional<Partition>& content) {
  if (ell < 1 || 2 * ell > n) throw std::invalid_argument("seed_set: need 1 <= ell <= n/2");
  cfg.validate();
  std::vector<Seed> seeds;
  const bool dense = cfg.lattice_refinement > 1;

  std::vector<Partition> contents;
  if (content) contents.push_back(*content);
  else contents = rigged::partitions_of(ell);
  const std::size_t per_content = cfg.max_seeds / std::max<std::size_t>(1, contents.size() + 1);

  for (const auto& nu : contents) {
    quantum_seeds(n, nu, cfg, false, {}, per_content, seeds);
    if (!dense) continue;
    fusion_seeds(n, nu, cfg, false, cfg.fusion_budget, seeds);
    if (nu.parts().front() == 1) {
      // real tuples: fine grid while affordable, else the centre lattice
      const auto grid = grid_centers(cfg, 1);
      if (combination_count(static_cast<int>(grid.size()), ell) <= cfg.real_grid_budget) {
        for_each_combination(static_cast<int>(grid.size()), ell, [&](const std::vector<int>& idx) {
          Seed s;
          for (int i : idx) s.roots.emplace_back(grid[static_cast<std::size_t>(i)], 0.0);
          seeds.push_back(std::move(s));
        });
        continue;
      }
    }
    lattice_seeds(n, nu, cfg, false, per_content, seeds);
  }

  // singular cores: the ell-2 roots besides +-i/2, which scatter like a 2-string at 0
  if (ell >= 2) {
    const int m = ell - 2;
    if (m == 0) {
      seeds.push_back(Seed{{}, true, false});
    } else {
      const auto core_contents = rigged::partitions_of(m);
      const std::size_t cap = per_content / std::max<std::size_t>(1, core_contents.size());
      for (const auto& nu : core_contents) {
        quantum_seeds(n, nu, cfg, true, {{2, 0.0}}, cap, seeds);
        if (!dense) continue;
        fusion_seeds(n, nu, cfg, true, cfg.fusion_budget, seeds);
        lattice_seeds(n, nu, cfg, true, cap, seeds);
      }
    }
    // the pair as the middle of a longer even string centred at zero
    for (int len = 4; len <= ell; len += 2) {
      for (double sc : imaginary_scales(cfg)) {
        std::vector<Complex> piece;
        for (int s = 0; s < len; ++s) {
          const double im = (len - 1) / 2.0 - s;
          if (std::abs(im) != 0.5) piece.emplace_back(0.0, im * sc);
        }
        if (len == ell) {
          seeds.push_back(Seed{piece, true, true});
          continue;
        }
        std::vector<Seed> rest;
        for (const auto& nu : rigged::partitions_of(ell - len))
          quantum_seeds(n, nu, cfg, true, {{len, 0.0}}, per_content, rest);
        for (auto& r : rest) {
          r.roots.insert(r.roots.begin(), piece.begin(), piece.end());
          r.string_like = true;
          seeds.push_back(std::move(r));
        }
      }
    }
  }
  return seeds;
}

std::vector<Seed> random_seeds(int n, int ell, const SolverConfig& cfg, std::size_t count,
                               const std::optional<Partition>& content) {
  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  std::uniform_real_distribution<double> dev(-0.2, 0.2);
  std::vector<Partition> contents = content ? std::vector<Partition>{*content} : rigged::partitions_of(ell);
  const auto cores = ell >= 3 ? rigged::partitions_of(ell - 2) : std::vector<Partition>{};
  std::vector<Seed> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const bool core = !cores.empty() && k % 4 == 3;
    const auto& pool = core ? cores : contents;
    const Partition& nu = pool[static_cast<std::size_t>(rng() % pool.size())];
    Seed s;
    s.singular_core = core;
    const double scale = 1.0 + dev(rng);
    for (int len : nu.parts()) {
      const double a = 0.5 * len * std::tan(std::numbers::pi * unit(rng) * (n - 1) / n);
      push_string(s.roots, len, a, scale);
    }
    // break accidental exact symmetries
    for (auto& z : s.roots) z += Complex(1e-3 * dev(rng), 0.0);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace brc
