#pragma once

// Partitions, vacancy numbers and rigged configurations for a chain of
// N sites whose site representations are given by `SectorShape::mu`.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace brc::rigged {

/// Weakly decreasing list of positive row lengths.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const;
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  /// Boxes in the first k columns, i.e. sum_j min(k, nu_j).
  int boxes_in_first_columns(int k) const;

  /// Distinct row lengths, largest first.
  std::vector<int> distinct_rows() const;
  int multiplicity(int row_length) const;

  std::string to_string() const;
  static Partition parse(const std::string& csv);

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of `weight`, ordered lexicographically on the parts vector.
std::vector<Partition> partitions_of(int weight);

struct SectorShape {
  std::vector<int> mu;

  static SectorShape spin_half(int n_sites);
  int n_sites() const { return static_cast<int>(mu.size()); }
  bool is_spin_half() const;
};

struct RiggedConfiguration {
  Partition nu;
  std::vector<int> riggings;

  /// Sorts riggings weakly decreasing within each block of equal rows.
  void canonicalize();
  bool is_canonical() const;

  auto operator<=>(const RiggedConfiguration&) const = default;
};

/// P_k(nu) = sum_j min(k, mu_j) - 2 sum_j min(k, nu_j). May be negative.
int vacancy_number(const SectorShape& shape, const Partition& nu, int k);

/// Vacancy numbers at each row of nu, index-aligned with nu.parts().
std::vector<int> row_vacancies(const SectorShape& shape, const Partition& nu);

bool is_admissible(const SectorShape& shape, const Partition& nu);

/// True when 0 <= J_i <= P_{nu_i} for every row and the form is canonical.
bool is_valid(const SectorShape& shape, const RiggedConfiguration& rc);

/// Canonical rigged configurations with |nu| = ell, ordered by nu then riggings.
std::vector<RiggedConfiguration> enumerate_rigged_configs(
    const SectorShape& shape, int ell,
    const std::optional<Partition>& content_filter = std::nullopt);

/// Number of rigged configurations, from the multiset count per block of equal rows.
std::uint64_t count_rigged_configs(const SectorShape& shape, int ell);

/// Rigged configurations of a single configuration nu.
std::uint64_t count_rigged_configs(const SectorShape& shape, const Partition& nu);

std::uint64_t binomial(int n, int k);

/// Rigging complement r -> P - r, re-canonicalized. Involution.
RiggedConfiguration flip(const RiggedConfiguration& rc, const SectorShape& shape);

/// Diagram text: vacancy numbers on the left, rows of boxes, riggings on the right.
std::string render(const RiggedConfiguration& rc, const SectorShape& shape);

}  // namespace brc::rigged
