#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "gh/metric_space.hpp"

namespace gh {

struct PairIJ {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  friend bool operator==(const PairIJ&, const PairIJ&) = default;
  friend auto operator<=>(const PairIJ&, const PairIJ&) = default;
};

/// A relation between [0,nx) and [0,ny) whose projections onto both sides
/// are surjective. Pairs are kept sorted ascending by (i, j).
class Correspondence {
 public:
  Correspondence(std::size_t nx, std::size_t ny, std::vector<PairIJ> pairs);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  const std::vector<PairIJ>& pairs() const { return pairs_; }

  friend bool operator==(const Correspondence&,
                         const Correspondence&) = default;

 private:
  std::size_t nx_, ny_;
  std::vector<PairIJ> pairs_;
};

/// Swaps the two sides.
Correspondence transpose(const Correspondence& r);

/// Orders pair sets by the numeric value of their bitmask, where pair (i,j)
/// occupies bit i*ny + j. This is the enumeration order of the oracle.
bool pairset_less(const Correspondence& a, const Correspondence& b);

/// max over related pairs of | d_X(i,i') - d_Y(j,j') |.
double distortion(const Correspondence& r, const FiniteMetricSpace& x,
                  const FiniteMetricSpace& y);

/// Streams every correspondence between [0,nx) and [0,ny) exactly once, in
/// increasing order of the pair-set bitmask. Requires nx*ny <= 25.
class CorrespondenceEnumerator {
 public:
  static constexpr std::size_t kMaxBits = 25;

  CorrespondenceEnumerator(std::size_t nx, std::size_t ny);

  /// Next correspondence, or nullopt when exhausted.
  std::optional<Correspondence> next();

 private:
  std::size_t nx_, ny_;
  std::uint32_t bits_;
  std::uint64_t mask_, end_;
};

inline constexpr std::uint64_t kNoNodeBudget =
    std::numeric_limits<std::uint64_t>::max();

struct SolveOptions {
  std::uint64_t node_budget = kNoNodeBudget;
  unsigned threads = 1;
};

/// Result of a Gromov-Hausdorff computation. `value` equals half the
/// distortion of `certificate`; lower_bound == upper_bound == value unless
/// the run was truncated by the node budget.
struct GHResult {
  double value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::uint64_t nodes_explored = 0;
  bool truncated = false;
  Correspondence certificate;
};

/// Brute force over the full correspondence enumeration; the certificate is
/// the first minimizer in enumeration order. Requires nx*ny <= 25.
GHResult gh_exact_oracle(const FiniteMetricSpace& x,
                         const FiniteMetricSpace& y);

/// Exact branch-and-bound minimization of correspondence distortion.
/// Matches gh_exact_oracle wherever the oracle applies. Single-threaded runs
/// return the certificate with the smallest pair-set bitmask among optima;
/// parallel runs may return any optimal certificate. If the node budget is
/// exhausted the best incumbent is returned with truncated = true and
/// lower_bound < upper_bound.
GHResult gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                  const SolveOptions& options = {});

/// Half the absolute diameter difference; never exceeds gh_exact().value.
double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Completes the graph of `anchor` (a total map from X-indices to Y-indices)
/// to a correspondence: each uncovered Y-point is attached to the X-point
/// whose image lies nearest to it (smallest index on ties).
Correspondence nearest_point_correspondence(
    const FiniteMetricSpace& x, const FiniteMetricSpace& y,
    const std::vector<std::size_t>& anchor);

}  // namespace gh
