#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gh/errors.hpp"

namespace gh {

/// Absolute tolerance on triangle-inequality slack during validation.
inline constexpr double kDefaultTolMetric = 1e-9;
/// Absolute tolerance used by numeric property assertions.
inline constexpr double kDefaultTolNum = 1e-9;

using Matrix = std::vector<std::vector<double>>;

/// A finite metric space: labeled points plus a validated distance matrix.
/// Immutable after construction; safe to share across threads.
class FiniteMetricSpace {
 public:
  /// Checks all metric axioms and returns the space, or throws a
  /// ValidationError naming the offending entries. Symmetry is canonicalized
  /// by averaging the matrix with its transpose; asymmetry beyond tol_metric
  /// is rejected first.
  static FiniteMetricSpace validate(const Matrix& dist,
                                    double tol_metric = kDefaultTolMetric);
  static FiniteMetricSpace validate(std::vector<std::string> labels,
                                    const Matrix& dist,
                                    double tol_metric = kDefaultTolMetric);

  std::size_t size() const { return n_; }
  double dist(std::size_t i, std::size_t j) const {
    return flat_[i * n_ + j];
  }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Largest pairwise distance (0 for a single point).
  double diameter() const { return diameter_; }
  /// Largest distance from point i to any other point.
  double eccentricity(std::size_t i) const;

  Matrix matrix() const;
  bool same_matrix(const FiniteMetricSpace& other) const;

 private:
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> flat,
                    std::size_t n);

  std::vector<std::string> labels_;
  std::vector<double> flat_;  // row-major n x n
  std::size_t n_ = 0;
  double diameter_ = 0.0;
};

/// Multiplies every distance by lambda > 0; labels are preserved.
FiniteMetricSpace scale_space(const FiniteMetricSpace& x, double lambda);

/// "p0".."p{n-1}".
std::vector<std::string> default_labels(std::size_t n);

/// Nonempty set of point indices inside one space. Holds a pointer to the
/// ambient space; the space must outlive the subset.
class PointSubset {
 public:
  PointSubset(const FiniteMetricSpace& space, std::vector<std::size_t> members);

  const FiniteMetricSpace& space() const { return *space_; }
  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(std::size_t index) const;

  /// Whole space as a subset.
  static PointSubset whole(const FiniteMetricSpace& space);

 private:
  const FiniteMetricSpace* space_;
  std::vector<std::size_t> members_;  // sorted, unique
};

/// min over a in A of dist(x, a).
double point_set_distance(std::size_t x, const PointSubset& a);

/// True iff every point of the ambient space is strictly closer than eps
/// to A. The inequality is strict.
bool is_eps_net(const PointSubset& a, double eps);

/// max( max_{a in A} |aB|, max_{b in B} |bA| ) for subsets of one space.
double hausdorff_distance(const PointSubset& a, const PointSubset& b);

/// True iff some relabeling bijection matches the two distance matrices
/// entrywise within tol. Brute force; sizes must not exceed 8 points.
bool permutation_isometric(const FiniteMetricSpace& x,
                           const FiniteMetricSpace& y, double tol = 1e-12);

}  // namespace gh
