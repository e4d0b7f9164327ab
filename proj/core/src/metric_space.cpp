#include "gh/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gh {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<double> flat, std::size_t n)
    : labels_(std::move(labels)), flat_(std::move(flat)), n_(n) {
  diameter_ = *std::max_element(flat_.begin(), flat_.end());
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return labels;
}

FiniteMetricSpace FiniteMetricSpace::validate(const Matrix& dist,
                                              double tol_metric) {
  return validate(default_labels(dist.size()), dist, tol_metric);
}

FiniteMetricSpace FiniteMetricSpace::validate(std::vector<std::string> labels,
                                              const Matrix& dist,
                                              double tol_metric) {
  const std::size_t n = dist.size();
  if (n == 0) throw ZeroDimension();
  for (const auto& row : dist) {
    if (row.size() != n) throw SizeMismatch(n, row.size());
  }
  if (labels.size() != n) throw SizeMismatch(n, labels.size());

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double delta = std::abs(dist[i][j] - dist[j][i]);
      if (delta > tol_metric) throw ViolatedSymmetry(i, j, delta);
    }
  }

  // Canonicalize: average the two halves, then check the remaining axioms
  // against exactly symmetric entries.
  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = 0.5 * (dist[i][j] + dist[j][i]);
      flat[i * n + j] = d;
      flat[j * n + i] = d;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] != 0.0) {
      if (std::abs(dist[i][i]) > tol_metric)
        throw NonZeroDiagonal(i, dist[i][i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && flat[i * n + j] <= 0.0)
        throw NonPositiveOffDiagonal(i, j, flat[i * n + j]);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double slack =
            flat[i * n + k] - flat[i * n + j] - flat[j * n + k];
        if (slack > tol_metric) throw ViolatedTriangle(i, j, k, slack);
      }
    }
  }

  return FiniteMetricSpace(std::move(labels), std::move(flat), n);
}

double FiniteMetricSpace::eccentricity(std::size_t i) const {
  if (i >= n_) throw IndexOutOfRange(i, n_);
  double e = 0.0;
  for (std::size_t j = 0; j < n_; ++j) e = std::max(e, dist(i, j));
  return e;
}

Matrix FiniteMetricSpace::matrix() const {
  Matrix m(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m[i][j] = dist(i, j);
  return m;
}

bool FiniteMetricSpace::same_matrix(const FiniteMetricSpace& other) const {
  return n_ == other.n_ && flat_ == other.flat_;
}

FiniteMetricSpace scale_space(const FiniteMetricSpace& x, double lambda) {
  if (!(lambda > 0.0)) throw NonPositiveScale(lambda);
  Matrix m = x.matrix();
  for (auto& row : m)
    for (double& d : row) d *= lambda;
  return FiniteMetricSpace::validate(x.labels(), m);
}

PointSubset::PointSubset(const FiniteMetricSpace& space,
                         std::vector<std::size_t> members)
    : space_(&space), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
  if (members_.empty()) throw Error("point subset must be nonempty");
  if (members_.back() >= space.size())
    throw IndexOutOfRange(members_.back(), space.size());
}

bool PointSubset::contains(std::size_t index) const {
  return std::binary_search(members_.begin(), members_.end(), index);
}

PointSubset PointSubset::whole(const FiniteMetricSpace& space) {
  std::vector<std::size_t> all(space.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return PointSubset(space, std::move(all));
}

double point_set_distance(std::size_t x, const PointSubset& a) {
  const FiniteMetricSpace& space = a.space();
  if (x >= space.size()) throw IndexOutOfRange(x, space.size());
  double best = space.dist(x, a.members().front());
  for (std::size_t m : a.members()) best = std::min(best, space.dist(x, m));
  return best;
}

bool is_eps_net(const PointSubset& a, double eps) {
  if (!(eps > 0.0)) throw Error("eps must be positive");
  for (std::size_t x = 0; x < a.space().size(); ++x) {
    if (!(point_set_distance(x, a) < eps)) return false;
  }
  return true;
}

double hausdorff_distance(const PointSubset& a, const PointSubset& b) {
  if (&a.space() != &b.space()) throw DifferentAmbientSpaces();
  double h = 0.0;
  for (std::size_t m : a.members()) h = std::max(h, point_set_distance(m, b));
  for (std::size_t m : b.members()) h = std::max(h, point_set_distance(m, a));
  return h;
}

namespace {

bool isometry_extends(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                      std::vector<std::size_t>& image, std::vector<bool>& used,
                      std::size_t depth, double tol) {
  const std::size_t n = x.size();
  if (depth == n) return true;
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j]) continue;
    bool ok = true;
    for (std::size_t t = 0; t < depth; ++t) {
      if (std::abs(x.dist(depth, t) - y.dist(j, image[t])) > tol) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    image[depth] = j;
    used[j] = true;
    if (isometry_extends(x, y, image, used, depth + 1, tol)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

bool permutation_isometric(const FiniteMetricSpace& x,
                           const FiniteMetricSpace& y, double tol) {
  if (x.size() != y.size()) return false;
  if (x.size() > 8)
    throw EnumerationTooLarge("permutation isometry test limited to 8 points");
  std::vector<std::size_t> image(x.size());
  std::vector<bool> used(x.size(), false);
  return isometry_extends(x, y, image, used, 0, tol);
}

}  // namespace gh
