#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "brc/error.hpp"
#include "brc/strings.hpp"

namespace brc::strings {

using rigged::Partition;
using rigged::RiggedConfiguration;

std::vector<std::size_t> forced_removals(const std::vector<double>& inner, const std::vector<int>& block_sizes) {
  const int T = static_cast<int>(inner.size());
  const int K = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
  if (K > T) throw AssignmentError("fewer solutions than rigged configurations");
  if (K == 0) {
    std::vector<std::size_t> all(static_cast<std::size_t>(T));
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  // kept item number k (0-based) starts a block?
  std::vector<bool> starts(static_cast<std::size_t>(K), false);
  for (int b = 0, acc = 0; b < static_cast<int>(block_sizes.size()); acc += block_sizes[static_cast<std::size_t>(b)], ++b)
    if (acc < K) starts[static_cast<std::size_t>(acc)] = true;

  const int INF = std::numeric_limits<int>::max() / 4;
  auto at = [K](int j, int k) { return static_cast<std::size_t>(j) * static_cast<std::size_t>(K) + static_cast<std::size_t>(k); };
  auto step_ok = [&](int j, int j2, int k2) {
    return starts[static_cast<std::size_t>(k2)] ? inner[static_cast<std::size_t>(j2)] < inner[static_cast<std::size_t>(j)]
                                                 : inner[static_cast<std::size_t>(j2)] > inner[static_cast<std::size_t>(j)];
  };

  // fwd[j][k]: fewest removals before j when j is kept as item k
  std::vector<int> fwd(static_cast<std::size_t>(T) * static_cast<std::size_t>(K), INF);
  for (int j = 0; j < T; ++j) fwd[at(j, 0)] = j;
  for (int k = 1; k < K; ++k)
    for (int j2 = k; j2 < T; ++j2)
      for (int j = k - 1; j < j2; ++j) {
        const int f = fwd[at(j, k - 1)];
        if (f >= INF || !step_ok(j, j2, k)) continue;
        fwd[at(j2, k)] = std::min(fwd[at(j2, k)], f + (j2 - j - 1));
      }
  // bwd[j][k]: fewest removals after j when j is kept as item k
  std::vector<int> bwd(static_cast<std::size_t>(T) * static_cast<std::size_t>(K), INF);
  for (int j = 0; j < T; ++j) bwd[at(j, K - 1)] = T - 1 - j;
  for (int k = K - 2; k >= 0; --k)
    for (int j = 0; j < T; ++j)
      for (int j2 = j + 1; j2 < T; ++j2) {
        const int g = bwd[at(j2, k + 1)];
        if (g >= INF || !step_ok(j, j2, k + 1)) continue;
        bwd[at(j, k)] = std::min(bwd[at(j, k)], g + (j2 - j - 1));
      }

  int best = INF;
  for (int j = 0; j < T; ++j)
    if (fwd[at(j, K - 1)] < INF) best = std::min(best, fwd[at(j, K - 1)] + T - 1 - j);
  if (best >= INF) throw AssignmentError("no removal restores the block structure");

  std::vector<std::size_t> forced;
  for (int j = 0; j < T; ++j) {
    bool keepable = false;
    for (int k = 0; k < K && !keepable; ++k) {
      const int f = fwd[at(j, k)], g = bwd[at(j, k)];
      keepable = f < INF && g < INF && f + g == best;
    }
    if (!keepable) forced.push_back(static_cast<std::size_t>(j));
  }
  return forced;
}

std::vector<std::size_t> best_fit_removals(const std::vector<double>& inner, const std::vector<double>& outer,
                                           const std::vector<int>& block_sizes) {
  const int T = static_cast<int>(inner.size());
  const int K = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
  if (outer.size() != inner.size()) throw std::invalid_argument("best_fit_removals: key lengths differ");
  if (K > T) throw AssignmentError("fewer solutions than rigged configurations");
  std::vector<std::size_t> all(static_cast<std::size_t>(T));
  std::iota(all.begin(), all.end(), 0);
  if (K == 0) return all;
  std::vector<bool> starts(static_cast<std::size_t>(K), false);
  for (int b = 0, acc = 0; b < static_cast<int>(block_sizes.size()); acc += block_sizes[static_cast<std::size_t>(b)], ++b)
    if (acc < K) starts[static_cast<std::size_t>(acc)] = true;

  // distance of each outer key to its nearest neighbour in the sequence
  std::vector<double> iso(static_cast<std::size_t>(T), 0.0);
  for (int j = 0; j < T; ++j) {
    double d = std::numeric_limits<double>::infinity();
    if (j > 0) d = std::min(d, std::abs(outer[static_cast<std::size_t>(j)] - outer[static_cast<std::size_t>(j - 1)]));
    if (j + 1 < T) d = std::min(d, std::abs(outer[static_cast<std::size_t>(j)] - outer[static_cast<std::size_t>(j + 1)]));
    iso[static_cast<std::size_t>(j)] = std::isfinite(d) ? d : 0.0;
  }
  std::vector<double> prefix(static_cast<std::size_t>(T) + 1, 0.0);
  for (int j = 0; j < T; ++j) prefix[static_cast<std::size_t>(j) + 1] = prefix[static_cast<std::size_t>(j)] + iso[static_cast<std::size_t>(j)];
  auto bonus = [&](int from, int to) { return prefix[static_cast<std::size_t>(to)] - prefix[static_cast<std::size_t>(from)]; };

  struct Cost {
    int removed;
    double bonus;
    bool better(const Cost& o) const { return removed != o.removed ? removed < o.removed : bonus > o.bonus + 1e-15; }
  };
  const Cost none{std::numeric_limits<int>::max(), 0.0};
  auto at = [K](int j, int k) { return static_cast<std::size_t>(j) * static_cast<std::size_t>(K) + static_cast<std::size_t>(k); };
  std::vector<Cost> best(static_cast<std::size_t>(T) * static_cast<std::size_t>(K), none);
  std::vector<int> prev(best.size(), -1);
  for (int j = 0; j < T; ++j) best[at(j, 0)] = {j, bonus(0, j)};
  for (int k = 1; k < K; ++k)
    for (int j2 = k; j2 < T; ++j2)
      for (int j = k - 1; j < j2; ++j) {
        const Cost& c = best[at(j, k - 1)];
        if (c.removed == none.removed) continue;
        const bool ok = starts[static_cast<std::size_t>(k)] ? inner[static_cast<std::size_t>(j2)] < inner[static_cast<std::size_t>(j)]
                                                           : inner[static_cast<std::size_t>(j2)] > inner[static_cast<std::size_t>(j)];
        if (!ok) continue;
        const Cost cand{c.removed + (j2 - j - 1), c.bonus + bonus(j + 1, j2)};
        if (cand.better(best[at(j2, k)])) {
          best[at(j2, k)] = cand;
          prev[at(j2, k)] = j;
        }
      }
  int last = -1;
  Cost top = none;
  for (int j = 0; j < T; ++j) {
    const Cost& c = best[at(j, K - 1)];
    if (c.removed == none.removed) continue;
    const Cost total{c.removed + (T - 1 - j), c.bonus + bonus(j + 1, T)};
    if (total.better(top)) {
      top = total;
      last = j;
    }
  }
  if (last < 0) throw AssignmentError("no removal restores the block structure");
  std::vector<bool> kept(static_cast<std::size_t>(T), false);
  for (int j = last, k = K - 1; k >= 0; j = prev[at(j, k)], --k) kept[static_cast<std::size_t>(j)] = true;
  std::vector<std::size_t> out;
  for (int j = 0; j < T; ++j)
    if (!kept[static_cast<std::size_t>(j)]) out.push_back(static_cast<std::size_t>(j));
  return out;
}

namespace {

std::vector<int> triangle_blocks(int p) {
  std::vector<int> sizes;
  for (int s = p + 1; s >= 1; --s) sizes.push_back(s);
  return sizes;
}

}  // namespace

std::vector<std::size_t> detect_exceptional(const std::vector<std::pair<double, double>>& ordered_pairs,
                                            const Partition& content, int vacancy) {
  if (!(content.length() == 2 && content.parts()[0] == content.parts()[1]))
    throw std::invalid_argument("detect_exceptional: content must have two equal rows");
  const auto sizes = triangle_blocks(vacancy);
  std::set<std::size_t> out;

  std::vector<double> inner, outer;
  for (const auto& pr : ordered_pairs) {
    inner.push_back(pr.first);
    outer.push_back(pr.second);
  }
  for (auto j : best_fit_removals(inner, outer, sizes)) out.insert(j);

  // the same structure read through the smaller roots: negate everything
  const std::size_t T = ordered_pairs.size();
  std::vector<std::size_t> order(T);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ordered_pairs[a].first < ordered_pairs[b].first;
  });
  std::vector<double> mirrored, mirrored_outer;
  for (auto i : order) {
    mirrored.push_back(-ordered_pairs[i].second);
    mirrored_outer.push_back(-ordered_pairs[i].first);
  }
  for (auto j : best_fit_removals(mirrored, mirrored_outer, sizes)) out.insert(order[j]);
  return {out.begin(), out.end()};
}

namespace {

struct Item {
  std::size_t index;
  StringDecomposition dec;
  std::vector<double> order_keys;
};

/// Keys of the strings of a given length, ascending.
std::vector<double> row_keys(const StringDecomposition& dec, int length, KeyMode mode) {
  std::vector<double> out;
  for (const auto& g : dec.groups)
    if (g.length == length) out.push_back(string_key(g, mode));
  std::sort(out.begin(), out.end());
  return out;
}

bool order_desc(const Item& a, const Item& b) {
  for (std::size_t i = 0; i < std::min(a.order_keys.size(), b.order_keys.size()); ++i) {
    if (std::abs(a.order_keys[i] - b.order_keys[i]) > 1e-9) return a.order_keys[i] > b.order_keys[i];
  }
  return a.index < b.index;
}

RiggedConfiguration make_rc(const Partition& nu, const std::map<int, std::vector<int>>& by_row) {
  RiggedConfiguration rc;
  rc.nu = nu;
  std::map<int, std::size_t> cursor;
  for (int row : nu.parts()) {
    auto it = by_row.find(row);
    rc.riggings.push_back(it == by_row.end() ? 0 : it->second[cursor[row]++]);
  }
  rc.canonicalize();
  return rc;
}

std::vector<std::size_t> rank_ascending(const std::vector<double>& keys) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<std::size_t> rank(keys.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

}  // namespace

RiggingAssignment assign_riggings(const SectorCensus& census, const Partition& content, KeyMode mode) {
  const auto shape = rigged::SectorShape::spin_half(census.n_sites);
  if (!rigged::is_admissible(shape, content)) throw AssignmentError("content " + content.to_string() + " is not admissible");

  std::vector<Item> items;
  for (std::size_t i = 0; i < census.solutions.size(); ++i) {
    const auto& sol = census.solutions[i];
    if (!sol.is_physical() || sol.ell() != content.weight()) continue;
    auto c = infer_content(sol);
    if (!c || *c != content) continue;
    Item it{i, decompose(sol, content), {}};
    it.order_keys = ordering_keys(it.dec, mode);
    items.push_back(std::move(it));
  }
  std::sort(items.begin(), items.end(), order_desc);

  const std::uint64_t expected = rigged::count_rigged_configs(shape, content);
  std::vector<int> varying;
  for (int row : content.distinct_rows())
    if (rigged::vacancy_number(shape, content, row) > 0) varying.push_back(row);
  auto vac = [&](int row) { return rigged::vacancy_number(shape, content, row); };
  auto mult = [&](int row) { return content.multiplicity(row); };

  RiggingAssignment out;
  for (const auto& it : items) out.solutions.push_back(it.index);
  out.rc.assign(items.size(), std::nullopt);
  if (items.empty()) {
    out.scheme = "empty";
    return out;
  }

  auto check_count = [&](std::size_t kept) {
    if (kept != expected) {
      std::ostringstream os;
      os << "content " << content.to_string() << ": " << kept << " solutions for " << expected << " rigged configurations";
      throw AssignmentError(os.str());
    }
  };
  auto mark_exceptional = [&](const std::vector<std::size_t>& positions) {
    for (auto p : positions) {
      out.exceptional.push_back(items[p].index);
      out.exceptional_ordinals.push_back(p + 1);
    }
  };

  bool all_single = std::all_of(varying.begin(), varying.end(), [&](int r) { return mult(r) == 1; });

  if (varying.empty()) {
    out.scheme = "fixed";
    check_count(items.size());
    out.rc[0] = make_rc(content, {});
    return out;
  }

  if (varying.size() == 1 && mult(varying[0]) == 1) {
    out.scheme = "rank";
    check_count(items.size());
    const int row = varying[0];
    std::vector<double> keys;
    for (const auto& it : items) keys.push_back(row_keys(it.dec, row, mode).front());
    const auto rank = rank_ascending(keys);
    for (std::size_t p = 0; p < items.size(); ++p)
      out.rc[p] = make_rc(content, {{row, {static_cast<int>(rank[p])}}});
    return out;
  }

  if (varying.size() == 1 && mult(varying[0]) == 2) {
    // two equal rows: descending larger key, blocks of P+1, P, ..., 1
    out.scheme = "pairs";
    const int row = varying[0];
    const int p = vac(row);
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::pair<double, double>> pairs;
    for (const auto& it : items) {
      auto k = row_keys(it.dec, row, mode);
      pairs.emplace_back(k[0], k[1]);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pairs[a].second > pairs[b].second;
    });
    std::vector<Item> sorted;
    std::vector<std::pair<double, double>> sorted_pairs;
    for (auto o : order) {
      sorted.push_back(items[o]);
      sorted_pairs.push_back(pairs[o]);
    }
    items = std::move(sorted);
    out.solutions.clear();
    for (const auto& it : items) out.solutions.push_back(it.index);
    const auto exc = detect_exceptional(sorted_pairs, content, p);
    mark_exceptional(exc);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (!std::binary_search(exc.begin(), exc.end(), i)) kept.push_back(i);
    check_count(kept.size());
    std::size_t pos = 0;
    for (int r1 = p; r1 >= 0; --r1) {
      for (int r2 = 0; r2 <= r1; ++r2, ++pos) {
        const std::size_t i = kept[pos];
        if (r2 > 0 && !(sorted_pairs[i].first > sorted_pairs[kept[pos - 1]].first))
          throw AssignmentError("pairs scheme: smaller key not increasing inside a block");
        out.rc[i] = make_rc(content, {{row, {r1, r2}}});
      }
    }
    return out;
  }

  if (varying.size() == 2 && all_single) {
    // ordered by the longest string; blocks by the longer varying row,
    // position by the shorter one
    out.scheme = "blocks";
    const int outer = varying[0], inner_row = varying[1];
    const int blocks = vac(outer) + 1, size = vac(inner_row) + 1;
    std::vector<double> inner;
    for (const auto& it : items) inner.push_back(row_keys(it.dec, inner_row, mode).front());
    const std::vector<int> sizes(static_cast<std::size_t>(blocks), size);
    std::set<std::size_t> exc_set;
    for (auto j : forced_removals(inner, sizes)) exc_set.insert(j);
    {
      std::vector<double> mirrored(inner.rbegin(), inner.rend());
      for (auto& v : mirrored) v = -v;
      for (auto j : forced_removals(mirrored, sizes)) exc_set.insert(inner.size() - 1 - j);
    }
    std::vector<std::size_t> exc(exc_set.begin(), exc_set.end());
    mark_exceptional(exc);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (!exc_set.count(i)) kept.push_back(i);
    check_count(kept.size());
    std::vector<double> block_key(static_cast<std::size_t>(blocks), 0.0);
    for (int b = 0; b < blocks; ++b) {
      for (int q = 0; q < size; ++q)
        block_key[static_cast<std::size_t>(b)] += row_keys(items[kept[static_cast<std::size_t>(b * size + q)]].dec, outer, mode).front();
    }
    const auto block_rank = rank_ascending(block_key);
    for (int b = 0; b < blocks; ++b)
      for (int q = 0; q < size; ++q) {
        const std::size_t i = kept[static_cast<std::size_t>(b * size + q)];
        if (q > 0 && !(inner[i] > inner[kept[static_cast<std::size_t>(b * size + q - 1)]]))
          throw AssignmentError("blocks scheme: inner key not increasing inside a block");
        out.rc[i] = make_rc(content, {{outer, {static_cast<int>(block_rank[static_cast<std::size_t>(b)])}}, {inner_row, {q}}});
      }
    return out;
  }

  if (varying.size() == 2 && mult(varying[0]) + mult(varying[1]) == 3 &&
      (mult(varying[0]) == 2 || mult(varying[1]) == 2)) {
    // one single row plus a pair of equal rows: chunks per single-row rigging,
    // chains where the smaller pair key decreases and the larger increases
    out.scheme = "peeling";
    const int single = mult(varying[0]) == 1 ? varying[0] : varying[1];
    const int pair = single == varying[0] ? varying[1] : varying[0];
    const int pa = vac(single), pb = vac(pair);
    const std::size_t chunk = static_cast<std::size_t>((pb + 1) * (pb + 2) / 2);
    check_count(items.size());
    std::vector<double> skey;
    for (const auto& it : items) skey.push_back(row_keys(it.dec, single, mode).front());
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return skey[a] > skey[b]; });
    for (int c = 0; c <= pa; ++c) {
      std::vector<std::size_t> pool(order.begin() + static_cast<long>(c * chunk), order.begin() + static_cast<long>((c + 1) * chunk));
      std::vector<bool> used(pool.size(), false);
      for (int s = 0; s <= pb; ++s) {
        std::vector<std::size_t> chain;
        for (std::size_t q = 0; q < pool.size() && static_cast<int>(chain.size()) < pb + 1 - s; ++q) {
          if (used[q]) continue;
          if (!chain.empty()) {
            const auto prev = row_keys(items[pool[chain.back()]].dec, pair, mode);
            const auto cur = row_keys(items[pool[q]].dec, pair, mode);
            if (!(cur[0] < prev[0] && cur[1] > prev[1])) continue;
          }
          chain.push_back(q);
        }
        if (static_cast<int>(chain.size()) != pb + 1 - s) throw AssignmentError("peeling scheme: incomplete chain");
        for (std::size_t t = 0; t < chain.size(); ++t) {
          used[chain[t]] = true;
          out.rc[pool[chain[t]]] = make_rc(content, {{single, {pa - c}}, {pair, {s, s + static_cast<int>(t)}}});
        }
      }
    }
    return out;
  }

  // anything else: lexicographic matching of row keys to riggings
  out.scheme = "lexicographic";
  out.heuristic = true;
  check_count(items.size());
  auto rcs = rigged::enumerate_rigged_configs(shape, content.weight(), content);
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<double>> keys;
  for (const auto& it : items) {
    std::vector<double> k;
    for (int row : content.distinct_rows()) {
      auto rk = row_keys(it.dec, row, mode);
      k.insert(k.end(), rk.begin(), rk.end());
    }
    keys.push_back(std::move(k));
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  for (std::size_t r = 0; r < order.size(); ++r) out.rc[order[r]] = rcs[r];
  return out;
}

RiggingAssignment assign_exceptional_with_complex(const SectorCensus& census,
                                                  const std::vector<std::size_t>& exceptional_real) {
  const auto shape = rigged::SectorShape::spin_half(census.n_sites);
  const Partition two({2});
  RiggingAssignment out;
  out.scheme = "merged-2";
  std::vector<std::size_t> family;
  for (std::size_t i = 0; i < census.solutions.size(); ++i) {
    const auto& sol = census.solutions[i];
    if (!sol.is_physical() || sol.ell() != 2 || sol.is_real()) continue;
    auto c = infer_content(sol);
    if (c && *c == two) family.push_back(i);
  }
  family.insert(family.end(), exceptional_real.begin(), exceptional_real.end());
  const int p = rigged::vacancy_number(shape, two, 2);
  if (static_cast<int>(family.size()) != p + 1) {
    std::ostringstream os;
    os << "shape-(2) family has " << family.size() << " members for " << p + 1 << " riggings";
    throw AssignmentError(os.str());
  }
  auto mean_re = [&](std::size_t i) {
    double s = 0.0;
    for (const auto& z : census.solutions[i].roots) s += z.real();
    return s / static_cast<double>(census.solutions[i].roots.size());
  };
  std::stable_sort(family.begin(), family.end(), [&](std::size_t a, std::size_t b) { return mean_re(a) < mean_re(b); });
  for (std::size_t r = 0; r < family.size(); ++r) {
    out.solutions.push_back(family[r]);
    out.rc.push_back(RiggedConfiguration{two, {static_cast<int>(r)}});
  }
  return out;
}

void classify_census(SectorCensus& census, KeyMode mode) {
  census.assignment.assign(census.solutions.size(), std::nullopt);
  census.exceptional.clear();
  census.assignment_heuristic = false;

  std::map<Partition, int> contents;
  for (const auto& sol : census.solutions) {
    if (!sol.is_physical()) continue;
    if (auto c = infer_content(sol)) contents[*c]++;
  }
  const auto shape = rigged::SectorShape::spin_half(census.n_sites);
  const Partition two({2});
  std::vector<std::size_t> exceptional_real;

  auto apply = [&](const RiggingAssignment& a) {
    for (std::size_t k = 0; k < a.solutions.size(); ++k)
      if (a.rc[k]) census.assignment[a.solutions[k]] = a.rc[k];
    census.assignment_heuristic = census.assignment_heuristic || a.heuristic;
  };

  for (const auto& [nu, count] : contents) {
    if (nu == two && census.ell == 2) continue;
    if (!rigged::is_admissible(shape, nu)) {
      census.notes.push_back("content " + nu.to_string() + " is not admissible; left unassigned");
      continue;
    }
    try {
      auto a = assign_riggings(census, nu, mode);
      apply(a);
      census.exceptional.insert(census.exceptional.end(), a.exceptional.begin(), a.exceptional.end());
      if (census.ell == 2) exceptional_real.insert(exceptional_real.end(), a.exceptional.begin(), a.exceptional.end());
    } catch (const AssignmentError& e) {
      census.notes.push_back(std::string("assignment: ") + e.what());
    }
  }
  if (census.ell == 2 && census.n_sites >= 4) {
    try {
      if (exceptional_real.empty()) apply(assign_riggings(census, two, mode));
      else apply(assign_exceptional_with_complex(census, exceptional_real));
    } catch (const AssignmentError& e) {
      census.notes.push_back(std::string("assignment: ") + e.what());
    }
  }
  std::sort(census.exceptional.begin(), census.exceptional.end());
}

}  // namespace brc::strings
