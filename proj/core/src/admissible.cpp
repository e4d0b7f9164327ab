#include "gh/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace gh {

AdmissibleMetric::AdmissibleMetric(const FiniteMetricSpace& x,
                                   const FiniteMetricSpace& y,
                                   std::vector<double> cross)
    : x_(&x), y_(&y), cross_(std::move(cross)) {
  if (cross_.size() != x.size() * y.size())
    throw SizeMismatch(x.size() * y.size(), cross_.size());
  for (double c : cross_)
    if (!(c > 0.0)) throw Error("cross distances must be positive");
}

double AdmissibleMetric::hausdorff_between_parts() const {
  double h = 0.0;
  for (std::size_t i = 0; i < x_->size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < y_->size(); ++j)
      nearest = std::min(nearest, cross(i, j));
    h = std::max(h, nearest);
  }
  for (std::size_t j = 0; j < y_->size(); ++j) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x_->size(); ++i)
      nearest = std::min(nearest, cross(i, j));
    h = std::max(h, nearest);
  }
  return h;
}

FiniteMetricSpace AdmissibleMetric::to_space(double tol_metric) const {
  const std::size_t nx = x_->size(), ny = y_->size(), n = nx + ny;
  Matrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t k = 0; k < nx; ++k) m[i][k] = x_->dist(i, k);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t k = 0; k < ny; ++k) m[nx + j][nx + k] = y_->dist(j, k);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      m[i][nx + j] = m[nx + j][i] = cross(i, j);

  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < nx; ++i) labels.push_back("x:" + x_->label(i));
  for (std::size_t j = 0; j < ny; ++j) labels.push_back("y:" + y_->label(j));
  return FiniteMetricSpace::validate(std::move(labels), m, tol_metric);
}

AdmissibleMetric glue_from_correspondence(const FiniteMetricSpace& x,
                                          const FiniteMetricSpace& y,
                                          const Correspondence& r,
                                          double radius) {
  if (!(radius > 0.0)) throw NonPositiveRadius(radius);
  const double dis = distortion(r, x, y);
  if (radius < 0.5 * dis) throw RadiusTooSmall(radius, 0.5 * dis);

  const std::size_t nx = x.size(), ny = y.size();
  std::vector<double> cross(nx * ny,
                            std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      for (const PairIJ& p : r.pairs())
        cross[i * ny + j] = std::min(
            cross[i * ny + j], x.dist(i, p.i) + radius + y.dist(p.j, j));
  return AdmissibleMetric(x, y, std::move(cross));
}

namespace {

// Deterministic, implementation-independent uniform sampling.
struct Rng64 {
  std::mt19937_64 eng;
  explicit Rng64(std::uint64_t seed) : eng(seed) {}

  double uniform(double a, double b) {
    const double u =
        static_cast<double>(eng() >> 11) * 0x1.0p-53;  // [0, 1)
    return a + (b - a) * u;
  }

  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
      v = eng();
    } while (v >= limit);
    return v % n;
  }
};

Correspondence random_correspondence(const FiniteMetricSpace& x,
                                     const FiniteMetricSpace& y, Rng64& rng) {
  const std::size_t nx = x.size(), ny = y.size();
  std::vector<PairIJ> pairs;
  std::vector<bool> covered(ny, false);
  for (std::size_t i = 0; i < nx; ++i) {
    const auto j = static_cast<std::uint32_t>(rng.below(ny));
    pairs.push_back({static_cast<std::uint32_t>(i), j});
    covered[j] = true;
  }
  for (std::size_t j = 0; j < ny; ++j) {
    if (covered[j]) continue;
    pairs.push_back({static_cast<std::uint32_t>(rng.below(nx)),
                     static_cast<std::uint32_t>(j)});
  }
  // A sprinkle of extra pairs explores fatter relations.
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      if (rng.uniform(0.0, 1.0) < 0.25)
        pairs.push_back(
            {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  return Correspondence(nx, ny, std::move(pairs));
}

}  // namespace

std::vector<AdmissibleMetric> sample_admissible(const FiniteMetricSpace& x,
                                                const FiniteMetricSpace& y,
                                                std::size_t trials,
                                                std::uint64_t seed) {
  if (trials == 0) throw Error("trials must be at least 1");
  Rng64 rng(seed);
  double spread = std::max(x.diameter(), y.diameter());
  if (spread == 0.0) spread = 1.0;  // two singletons
  const std::size_t block = x.size() * y.size();

  std::vector<AdmissibleMetric> samples;
  samples.reserve(trials);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    if (samples.size() >= 2 && rng.uniform(0.0, 1.0) < 0.5) {
      // Convex combinations of admissible metrics stay admissible.
      const auto& a = samples[rng.below(samples.size())];
      const auto& b = samples[rng.below(samples.size())];
      const double alpha = rng.uniform(0.0, 1.0);
      std::vector<double> cross(block);
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
          cross[i * y.size() + j] =
              alpha * a.cross(i, j) + (1.0 - alpha) * b.cross(i, j);
      samples.emplace_back(x, y, std::move(cross));
    } else {
      const Correspondence r = random_correspondence(x, y, rng);
      const double half_dis = 0.5 * distortion(r, x, y);
      double radius = rng.uniform(half_dis, half_dis + spread);
      if (!(radius > 0.0)) radius = spread;
      samples.push_back(glue_from_correspondence(x, y, r, radius));
    }
    samples.back().to_space();  // revalidate every emitted metric
  }
  return samples;
}

FiniteMetricSpace midpoint_from_certificate(const FiniteMetricSpace& x,
                                            const FiniteMetricSpace& y,
                                            const Correspondence& r, double t,
                                            double tol_quotient) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error("t must lie in [0, 1]");
  if (x.size() != r.nx()) throw SizeMismatch(r.nx(), x.size());
  if (y.size() != r.ny()) throw SizeMismatch(r.ny(), y.size());

  const auto& pairs = r.pairs();
  const std::size_t m = pairs.size();
  auto pre_dist = [&](std::size_t a, std::size_t b) {
    return (1.0 - t) * x.dist(pairs[a].i, pairs[b].i) +
           t * y.dist(pairs[a].j, pairs[b].j);
  };

  // Union-find quotient over pairs at (transitively) vanishing pre-distance.
  std::vector<std::size_t> root(m);
  std::iota(root.begin(), root.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (root[a] != a) a = root[a] = root[root[a]];
    return a;
  };
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (pre_dist(a, b) <= tol_quotient) root[find(a)] = find(b);

  // Representatives in pair order keep t = 0 aligned with X's point order.
  std::vector<std::size_t> reps;
  for (std::size_t a = 0; a < m; ++a)
    if (find(a) == a) reps.push_back(a);

  Matrix dist(reps.size(), std::vector<double>(reps.size(), 0.0));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < reps.size(); ++a) {
    labels.push_back(x.label(pairs[reps[a]].i) + "|" +
                     y.label(pairs[reps[a]].j));
    for (std::size_t b = 0; b < reps.size(); ++b)
      if (a != b) dist[a][b] = pre_dist(reps[a], reps[b]);
  }
  return FiniteMetricSpace::validate(std::move(labels), dist);
}

FiniteMetricSpace midpoint_space(const FiniteMetricSpace& x,
                                 const FiniteMetricSpace& y, double t,
                                 const SolveOptions& options) {
  const GHResult result = gh_exact(x, y, options);
  return midpoint_from_certificate(x, y, result.certificate, t);
}

}  // namespace gh
