#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "brc/error.hpp"
#include "brc/strings.hpp"

namespace brc::strings {

using rigged::Partition;

bool conjugation_closed(const std::vector<Complex>& roots, double tol) {
  std::vector<bool> used(roots.size(), false);
  for (const auto& z : roots) {
    bool found = false;
    for (std::size_t j = 0; j < roots.size() && !found; ++j) {
      if (!used[j] && std::abs(roots[j] - std::conj(z)) < tol * std::max(1.0, std::abs(z))) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace {

StringGroup make_group(std::vector<Complex> members) {
  std::sort(members.begin(), members.end(), [](const Complex& a, const Complex& b) {
    return a.imag() != b.imag() ? a.imag() > b.imag() : a.real() > b.real();
  });
  StringGroup g;
  g.length = static_cast<int>(members.size());
  double sum = 0.0;
  for (const auto& z : members) sum += z.real();
  g.center = sum / g.length;
  for (int s = 0; s < g.length; ++s) {
    const Complex ideal(g.center, (g.length - 1) / 2.0 - s);
    g.deviation = std::max(g.deviation, std::abs(members[static_cast<std::size_t>(s)] - ideal));
  }
  g.self_conjugate = conjugation_closed(members);
  g.members = std::move(members);
  return g;
}

void finalize(StringDecomposition& dec, const std::vector<Complex>& roots) {
  std::sort(dec.groups.begin(), dec.groups.end(), [](const StringGroup& a, const StringGroup& b) {
    return a.length != b.length ? a.length > b.length : a.center > b.center;
  });
  std::vector<int> parts;
  dec.total_deviation = 0.0;
  bool any_nsc = false;
  for (const auto& g : dec.groups) {
    parts.push_back(g.length);
    dec.total_deviation += g.deviation;
    any_nsc = any_nsc || !g.self_conjugate;
  }
  dec.content = Partition(parts);
  dec.non_self_conjugate = any_nsc && conjugation_closed(roots);
}

/// Minimum total deviation grouping for a content; first found wins ties.
std::optional<StringDecomposition> best_grouping(const std::vector<Complex>& roots, const Partition& content, double tol) {
  const auto& parts = content.parts();
  const std::size_t m = roots.size();
  if (static_cast<std::size_t>(content.weight()) != m) return std::nullopt;
  const double limit = 10.0 * tol;

  std::vector<bool> used(m, false);
  std::vector<std::vector<std::size_t>> chosen(parts.size());
  std::vector<std::vector<std::size_t>> best;
  double best_total = std::numeric_limits<double>::infinity();

  std::function<void(std::size_t, double, std::size_t)> rec = [&](std::size_t g, double total, std::size_t min_first) {
    if (total > best_total - 1e-12 && !best.empty()) return;
    if (g == parts.size()) {
      if (best.empty() || total < best_total - 1e-12) {
        best = chosen;
        best_total = total;
      }
      return;
    }
    const int len = parts[g];
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t start) {
      if (static_cast<int>(pick.size()) == len) {
        std::vector<Complex> members;
        for (auto i : pick) members.push_back(roots[i]);
        const double dev = make_group(members).deviation;
        if (dev > limit) return;
        for (auto i : pick) used[i] = true;
        chosen[g] = pick;
        const bool same_next = g + 1 < parts.size() && parts[g + 1] == len;
        rec(g + 1, total + dev, same_next ? pick.front() + 1 : 0);
        for (auto i : pick) used[i] = false;
        return;
      }
      for (std::size_t i = start; i < m; ++i) {
        if (used[i]) continue;
        if (pick.empty() && i < min_first) continue;
        pick.push_back(i);
        choose(i + 1);
        pick.pop_back();
      }
    };
    choose(0);
  };
  rec(0, 0.0, 0);
  if (best.empty()) return std::nullopt;

  StringDecomposition dec;
  for (const auto& idx : best) {
    std::vector<Complex> members;
    for (auto i : idx) members.push_back(roots[i]);
    dec.groups.push_back(make_group(members));
  }
  finalize(dec, roots);
  return dec;
}

StringDecomposition greedy(const std::vector<Complex>& roots, double tol) {
  std::vector<Complex> rest = roots;
  StringDecomposition dec;
  while (!rest.empty()) {
    auto top = std::max_element(rest.begin(), rest.end(), [](const Complex& a, const Complex& b) {
      return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
    });
    std::vector<Complex> chain{*top};
    rest.erase(top);
    while (true) {
      const Complex last = chain.back();
      const double target = chain.front().imag() - static_cast<double>(chain.size());
      auto best = rest.end();
      double best_score = std::numeric_limits<double>::infinity();
      for (auto it = rest.begin(); it != rest.end(); ++it) {
        if (std::abs(it->imag() - target) > tol) continue;
        const double score = std::abs(it->real() - last.real()) + std::abs(it->imag() - target);
        if (std::abs(it->real() - chain.front().real()) > 0.5) continue;
        if (score < best_score) {
          best_score = score;
          best = it;
        }
      }
      if (best == rest.end()) break;
      chain.push_back(*best);
      rest.erase(best);
    }
    dec.groups.push_back(make_group(chain));
  }
  finalize(dec, roots);
  return dec;
}

}  // namespace

StringDecomposition decompose(const BetheSolution& sol, const std::optional<Partition>& target, double tol) {
  if (!conjugation_closed(sol.roots)) throw DecompositionError("root set is not closed under conjugation");
  if (target) {
    auto dec = best_grouping(sol.roots, *target, tol);
    if (!dec) throw DecompositionError("no grouping matches content " + target->to_string());
    return *dec;
  }
  auto dec = greedy(sol.roots, tol);
  if (auto refined = best_grouping(sol.roots, dec.content, tol)) return *refined;
  return dec;
}

std::optional<Partition> infer_content(const BetheSolution& sol, double tol) {
  if (sol.roots.empty() || !conjugation_closed(sol.roots)) return std::nullopt;
  std::optional<Partition> best;
  double best_total = std::numeric_limits<double>::infinity();
  for (const auto& nu : rigged::partitions_of(sol.ell())) {
    auto dec = best_grouping(sol.roots, nu, tol);
    if (dec && dec->total_deviation < best_total - 1e-12) {
      best_total = dec->total_deviation;
      best = nu;
    }
  }
  return best;
}

double string_key(const StringGroup& g, KeyMode mode) {
  if (g.length == 1) return g.members.front().real();
  const bool odd = g.length % 2 == 1;
  const int mid = (g.length - 1) / 2;
  if (mode == KeyMode::middle_member && odd) return g.members[static_cast<std::size_t>(mid)].real();
  double sum = 0.0;
  int count = 0;
  for (int s = 0; s < g.length; ++s) {
    if (odd && s == mid) continue;
    sum += g.members[static_cast<std::size_t>(s)].real();
    ++count;
  }
  return sum / count;
}

std::vector<double> ordering_keys(const StringDecomposition& dec, KeyMode mode) {
  std::vector<std::pair<int, double>> keyed;
  for (const auto& g : dec.groups) keyed.emplace_back(g.length, string_key(g, mode));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second > b.second;
  });
  std::vector<double> out;
  for (const auto& k : keyed) out.push_back(k.second);
  return out;
}

double longest_string_key(const StringDecomposition& dec, KeyMode mode) {
  if (dec.groups.empty()) throw std::invalid_argument("longest_string_key: empty decomposition");
  return ordering_keys(dec, mode).front();
}

}  // namespace brc::strings
