#pragma once

#include <cstdint>
#include <vector>

#include "gh/metric_space.hpp"

namespace gh {

/// A finite point set in a finite-dimensional slice of the sup-norm sequence
/// space. Coordinates beyond `dim` are implicitly zero.
struct SupNormPointSet {
  std::size_t dim = 0;
  std::vector<std::vector<double>> points;
};

/// Sup-norm distance; the shorter vector is treated as zero-padded.
double supnorm_distance(const std::vector<double>& u,
                        const std::vector<double>& v);

/// Point i maps to row i of the distance matrix. The triangle inequality
/// forces every coordinate difference below d(i,j); coordinate j attains it,
/// so pairwise sup-norm distances reproduce the matrix exactly.
SupNormPointSet kuratowski_embed(const FiniteMetricSpace& x);

/// Hausdorff distance of two finite sup-norm point sets (max-min formula);
/// unequal dimensions are reconciled by zero padding.
double supnorm_hausdorff(const SupNormPointSet& a, const SupNormPointSet& b);

struct AlignOptions {
  std::size_t restarts = 16;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct AlignResult {
  double value = 0.0;
  std::vector<double> shift;  // translation applied to the second embedding
  std::size_t best_restart = 0;
};

/// Upper bound on the Gromov-Hausdorff distance: both spaces are embedded by
/// kuratowski_embed into a common zero-padded dimension and the sup-norm
/// Hausdorff distance is minimized over translations of the second image by
/// exact coordinate descent from several starts (restart 0 starts at zero,
/// the rest at seeded random shifts). Translations are sup-norm isometries,
/// so every evaluated value bounds the distance from above.
AlignResult align_upper_bound(const FiniteMetricSpace& x,
                              const FiniteMetricSpace& y,
                              const AlignOptions& options = {});

}  // namespace gh
