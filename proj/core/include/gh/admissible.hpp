#pragma once

#include <cstdint>
#include <vector>

#include "gh/correspondence.hpp"
#include "gh/metric_space.hpp"

namespace gh {

/// A metric on the disjoint union of two spaces that restricts to the
/// original metric on each part. Stored as the cross-distance block; holds
/// pointers to both component spaces.
class AdmissibleMetric {
 public:
  AdmissibleMetric(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                   std::vector<double> cross);

  const FiniteMetricSpace& x() const { return *x_; }
  const FiniteMetricSpace& y() const { return *y_; }
  double cross(std::size_t i, std::size_t j) const {
    return cross_[i * y_->size() + j];
  }

  /// Hausdorff distance between the X part and the Y part, straight from
  /// the cross block.
  double hausdorff_between_parts() const;

  /// Assembles the full (nx+ny) x (nx+ny) glued space and validates it.
  /// Labels are prefixed "x:" / "y:". X occupies indices [0, nx).
  FiniteMetricSpace to_space(double tol_metric = kDefaultTolMetric) const;

 private:
  const FiniteMetricSpace* x_;
  const FiniteMetricSpace* y_;
  std::vector<double> cross_;  // nx * ny, row-major
};

/// The minimal admissible extension along R at radius r:
/// cross(i,j) = min over (i',j') in R of d_X(i,i') + r + d_Y(j',j).
/// Requires r > 0 and r >= half the distortion of R; the result satisfies
/// hausdorff_between_parts() <= r.
AdmissibleMetric glue_from_correspondence(const FiniteMetricSpace& x,
                                          const FiniteMetricSpace& y,
                                          const Correspondence& r,
                                          double radius);

/// Randomly glued and convexly combined admissible metrics; every emitted
/// object is revalidated. Deterministic for a fixed seed.
std::vector<AdmissibleMetric> sample_admissible(const FiniteMetricSpace& x,
                                                const FiniteMetricSpace& y,
                                                std::size_t trials,
                                                std::uint64_t seed);

/// Interpolated space along an optimal correspondence: points are the pairs
/// of `r`, pre-distances (1-t) d_X + t d_Y, then the quotient by (transitive)
/// identification of pairs closer than tol_quotient. At t = 0 the result is
/// isometric to X, at t = 1 to Y.
FiniteMetricSpace midpoint_from_certificate(const FiniteMetricSpace& x,
                                            const FiniteMetricSpace& y,
                                            const Correspondence& r, double t,
                                            double tol_quotient = 1e-12);

/// midpoint_from_certificate over the certificate of gh_exact(x, y).
FiniteMetricSpace midpoint_space(const FiniteMetricSpace& x,
                                 const FiniteMetricSpace& y, double t,
                                 const SolveOptions& options = {});

}  // namespace gh
