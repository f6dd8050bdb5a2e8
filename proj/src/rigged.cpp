#include "brc/rigged.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace brc::rigged {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::boxes_in_first_columns(int k) const {
  int boxes = 0;
  for (int p : parts_) boxes += std::min(k, p);
  return boxes;
}

std::vector<int> Partition::distinct_rows() const {
  std::vector<int> rows;
  for (int p : parts_)
    if (rows.empty() || rows.back() != p) rows.push_back(p);
  return rows;
}

int Partition::multiplicity(int row_length) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), row_length));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

Partition Partition::parse(const std::string& csv) {
  std::vector<int> parts;
  std::string token;
  std::istringstream is(csv);
  while (std::getline(is, token, ',')) {
    if (token.empty()) continue;
    std::size_t used = 0;
    int v = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument("bad partition entry: " + token);
    parts.push_back(v);
  }
  std::sort(parts.rbegin(), parts.rend());
  return Partition(std::move(parts));
}

std::vector<Partition> partitions_of(int weight) {
  std::vector<Partition> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  if (weight > 0) rec(weight, weight);
  std::sort(out.begin(), out.end());
  return out;
}

SectorShape SectorShape::spin_half(int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("n_sites must be positive");
  return SectorShape{std::vector<int>(static_cast<std::size_t>(n_sites), 1)};
}

bool SectorShape::is_spin_half() const {
  return std::all_of(mu.begin(), mu.end(), [](int m) { return m == 1; });
}

void RiggedConfiguration::canonicalize() {
  const auto& parts = nu.parts();
  std::size_t i = 0;
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    std::sort(riggings.begin() + static_cast<long>(i), riggings.begin() + static_cast<long>(j),
              std::greater<>());
    i = j;
  }
}

bool RiggedConfiguration::is_canonical() const {
  const auto& parts = nu.parts();
  if (riggings.size() != parts.size()) return false;
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (parts[i] == parts[i - 1] && riggings[i] > riggings[i - 1]) return false;
  return true;
}

int vacancy_number(const SectorShape& shape, const Partition& nu, int k) {
  if (k < 0) throw std::invalid_argument("vacancy_number: k must be non-negative");
  int site_sum = 0;
  for (int m : shape.mu) site_sum += std::min(k, m);
  return site_sum - 2 * nu.boxes_in_first_columns(k);
}

std::vector<int> row_vacancies(const SectorShape& shape, const Partition& nu) {
  std::vector<int> out;
  out.reserve(nu.parts().size());
  for (int p : nu.parts()) out.push_back(vacancy_number(shape, nu, p));
  return out;
}

bool is_admissible(const SectorShape& shape, const Partition& nu) {
  for (int row : nu.distinct_rows())
    if (vacancy_number(shape, nu, row) < 0) return false;
  return true;
}

bool is_valid(const SectorShape& shape, const RiggedConfiguration& rc) {
  if (rc.riggings.size() != rc.nu.parts().size() || !rc.is_canonical()) return false;
  const auto vac = row_vacancies(shape, rc.nu);
  for (std::size_t i = 0; i < vac.size(); ++i)
    if (rc.riggings[i] < 0 || rc.riggings[i] > vac[i]) return false;
  return true;
}

namespace {

// Weakly decreasing riggings for every block of equal rows, each in [0, P].
void enumerate_riggings(const Partition& nu, const std::vector<int>& vac,
                        std::vector<RiggedConfiguration>& out) {
  const auto& parts = nu.parts();
  std::vector<int> riggings(parts.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t row) {
    if (row == parts.size()) {
      out.push_back(RiggedConfiguration{nu, riggings});
      return;
    }
    int lo = 0;
    int hi = vac[row];
    if (row > 0 && parts[row] == parts[row - 1]) hi = std::min(hi, riggings[row - 1]);
    for (int r = lo; r <= hi; ++r) {
      riggings[row] = r;
      rec(row + 1);
    }
  };
  rec(0);
}

}  // namespace

std::vector<RiggedConfiguration> enumerate_rigged_configs(const SectorShape& shape, int ell,
                                                          const std::optional<Partition>& content_filter) {
  if (ell < 1) throw std::invalid_argument("enumerate_rigged_configs: ell must be >= 1");
  std::vector<RiggedConfiguration> out;
  for (const auto& nu : partitions_of(ell)) {
    if (content_filter && nu != *content_filter) continue;
    if (!is_admissible(shape, nu)) continue;
    enumerate_riggings(nu, row_vacancies(shape, nu), out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t count_rigged_configs(const SectorShape& shape, const Partition& nu) {
  if (!is_admissible(shape, nu)) return 0;
  std::uint64_t total = 1;
  for (int row : nu.distinct_rows()) {
    const int m = nu.multiplicity(row);
    const int p = vacancy_number(shape, nu, row);
    // multisets of size m drawn from {0..p}
    total *= binomial(p + m, m);
  }
  return total;
}

std::uint64_t count_rigged_configs(const SectorShape& shape, int ell) {
  if (ell < 1) throw std::invalid_argument("count_rigged_configs: ell must be >= 1");
  std::uint64_t total = 0;
  for (const auto& nu : partitions_of(ell)) total += count_rigged_configs(shape, nu);

  const int n = shape.n_sites();
  if (shape.is_spin_half() && 2 * ell <= n) {
    const std::uint64_t expected = binomial(n, ell) - binomial(n, ell - 1);
    if (total != expected)
      throw std::logic_error("rigged configuration count disagrees with C(N,l) - C(N,l-1)");
  }
  return total;
}

RiggedConfiguration flip(const RiggedConfiguration& rc, const SectorShape& shape) {
  RiggedConfiguration out = rc;
  const auto vac = row_vacancies(shape, rc.nu);
  for (std::size_t i = 0; i < vac.size(); ++i) out.riggings[i] = vac[i] - rc.riggings[i];
  out.canonicalize();
  return out;
}

std::string render(const RiggedConfiguration& rc, const SectorShape& shape) {
  const auto vac = row_vacancies(shape, rc.nu);
  std::ostringstream os;
  for (std::size_t i = 0; i < vac.size(); ++i) {
    os.width(3);
    os << vac[i] << ' ';
    for (int b = 0; b < rc.nu.parts()[i]; ++b) os << "[]";
    os << ' ' << rc.riggings[i] << '\n';
  }
  return os.str();
}

}  // namespace brc::rigged
