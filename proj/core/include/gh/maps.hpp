#pragma once

#include <cstdint>
#include <vector>

#include "gh/correspondence.hpp"
#include "gh/metric_space.hpp"

namespace gh {

/// A total map between the point sets of two spaces. Holds pointers to both
/// spaces; they must outlive the map.
class PointMap {
 public:
  PointMap(const FiniteMetricSpace& source, const FiniteMetricSpace& target,
           std::vector<std::uint32_t> image);

  const FiniteMetricSpace& source() const { return *source_; }
  const FiniteMetricSpace& target() const { return *target_; }
  const std::vector<std::uint32_t>& image() const { return image_; }
  std::uint32_t operator()(std::size_t i) const { return image_[i]; }

 private:
  const FiniteMetricSpace* source_;
  const FiniteMetricSpace* target_;
  std::vector<std::uint32_t> image_;
};

/// max over i,i' of | d_X(i,i') - d_Y(f(i),f(i')) |.
double map_distortion(const PointMap& f);

/// max over target points y of the distance from y to the image of f.
/// f carries an eps-net iff this value is strictly below eps.
double covering_radius(const PointMap& f);

enum class IsometrySense {
  kModern,   // distortion <= eps and image is an eps-net (strict radius)
  kEdwards,  // distortion <= eps only
};

bool is_eps_isometry(const PointMap& f, double eps, IsometrySense sense);

struct MapSearchOptions {
  std::uint64_t node_budget = kNoNodeBudget;
  /// Exhaustive scan is used when ny^nx does not exceed this; otherwise
  /// branch-and-bound. Both return the same lexicographically smallest
  /// optimal image array.
  std::uint64_t exhaustive_cap = std::uint64_t{1} << 20;
};

struct MapSearchResult {
  PointMap map;
  double value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::uint64_t nodes = 0;
  bool truncated = false;
};

/// A map of minimal distortion. Budget exhaustion is reported in-band via
/// truncated = true and lower_bound < upper_bound.
MapSearchResult min_distortion_map(const FiniteMetricSpace& x,
                                   const FiniteMetricSpace& y,
                                   const MapSearchOptions& options = {});

struct EdwardsResult {
  double value = 0.0;
  MapSearchResult forward, backward;
  bool truncated = false;
};

/// Edwards distance d_E: the larger of the two minimal map distortions.
/// The two searches are independent; the infimum is attained.
EdwardsResult edwards_dE(const FiniteMetricSpace& x,
                         const FiniteMetricSpace& y,
                         const MapSearchOptions& options = {});

struct HatDirection {
  double value = 0.0;
  bool attained = false;
  std::vector<std::uint32_t> witness;  // image array of a minimizing map
};

struct HatResult {
  double value = 0.0;
  /// True iff maps witnessing the value exist at eps = value itself; the
  /// eps-net inequality is strict, so the infimum may be unattained.
  bool attained = false;
  HatDirection forward, backward;
};

/// The infimum of eps admitting modern eps-isometries in both directions:
/// max over the two directions of min over maps of
/// max(distortion, covering radius). Throws EnumerationTooLarge when a
/// direction exceeds enumeration_cap maps.
HatResult hat_dGH(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                  std::uint64_t enumeration_cap = std::uint64_t{1} << 24);

/// f(i) = smallest j with (i,j) in R. Its distortion and covering radius
/// are bounded by the distortion of R.
PointMap correspondence_to_map(const Correspondence& r,
                               const FiniteMetricSpace& x,
                               const FiniteMetricSpace& y);

}  // namespace gh
