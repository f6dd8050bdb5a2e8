#pragma once

// String decomposition of Bethe roots and the ordering procedures that attach
// rigged configurations to the solutions of a sector.

#include <optional>
#include <string>
#include <vector>

#include "brc/bethe.hpp"
#include "brc/rigged.hpp"
#include "brc/solver.hpp"

namespace brc::strings {

struct StringGroup {
  int length = 0;
  double center = 0.0;
  std::vector<Complex> members;  // descending imaginary part
  double deviation = 0.0;
  bool self_conjugate = true;
};

struct StringDecomposition {
  std::vector<StringGroup> groups;  // longest first, then descending centre
  rigged::Partition content;
  bool non_self_conjugate = false;
  double total_deviation = 0.0;
};

inline constexpr double kRungTol = 0.2;

bool conjugation_closed(const std::vector<Complex>& roots, double tol = 1e-6);

/// Untargeted: greedy top-down chaining with rung tolerance `tol`.
/// Targeted: the grouping with the given content of minimum total deviation;
/// DecompositionError when no grouping stays within 10 tol per string.
StringDecomposition decompose(const BetheSolution& sol, const std::optional<rigged::Partition>& target = std::nullopt,
                              double tol = kRungTol);

/// Content of the minimum-deviation grouping over all partitions of ell.
std::optional<rigged::Partition> infer_content(const BetheSolution& sol, double tol = kRungTol);

enum class KeyMode { pair_members, middle_member };

/// Real part of the conjugate-pair members (or of the middle member).
double string_key(const StringGroup& g, KeyMode mode = KeyMode::pair_members);

/// Key of the longest string; ties among equally long strings take the largest.
double longest_string_key(const StringDecomposition& dec, KeyMode mode = KeyMode::pair_members);

/// Per-group keys, longest string first (used for tie-breaking).
std::vector<double> ordering_keys(const StringDecomposition& dec, KeyMode mode = KeyMode::pair_members);

struct RiggingAssignment {
  std::vector<std::size_t> solutions;  // census indices in scope, in procedure order
  std::vector<std::optional<rigged::RiggedConfiguration>> rc;  // aligned with `solutions`
  std::vector<std::size_t> exceptional;  // census indices
  std::vector<std::size_t> exceptional_ordinals;  // 1-based positions in the procedure order
  bool heuristic = false;
  std::string scheme;
};

/// Block structure: contiguous blocks of the given sizes, strictly increasing
/// inner key within a block, a descent at every block start. Returns the
/// positions removed in every minimal-removal fit.
std::vector<std::size_t> forced_removals(const std::vector<double>& inner, const std::vector<int>& block_sizes);

/// Removed positions of the single best fit to the same block structure:
/// fewest removals, ties going to the removals whose outer key lies farthest
/// from its neighbours.
std::vector<std::size_t> best_fit_removals(const std::vector<double>& inner, const std::vector<double>& outer,
                                           const std::vector<int>& block_sizes);

/// Positions (0-based, in the given order) that break the block-monotone
/// structure; run on the larger-root order and on the smaller-root order.
/// `ordered_pairs` hold {smaller, larger} real roots sorted by the larger root descending.
std::vector<std::size_t> detect_exceptional(const std::vector<std::pair<double, double>>& ordered_pairs,
                                            const rigged::Partition& content, int vacancy);

RiggingAssignment assign_riggings(const SectorCensus& census, const rigged::Partition& content,
                                  KeyMode mode = KeyMode::pair_members);

/// Merges the exceptional real solutions into the shape-(2) family, ordered by
/// mean real part, riggings 0..P.
RiggingAssignment assign_exceptional_with_complex(const SectorCensus& census,
                                                  const std::vector<std::size_t>& exceptional_real);

/// Runs every content present in the census and fills census.assignment,
/// census.exceptional and census.assignment_heuristic.
void classify_census(SectorCensus& census, KeyMode mode = KeyMode::pair_members);

}  // namespace brc::strings
