#include "gh/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace gh {

PointMap::PointMap(const FiniteMetricSpace& source,
                   const FiniteMetricSpace& target,
                   std::vector<std::uint32_t> image)
    : source_(&source), target_(&target), image_(std::move(image)) {
  if (image_.size() != source.size())
    throw SizeMismatch(source.size(), image_.size());
  for (std::uint32_t j : image_)
    if (j >= target.size()) throw IndexOutOfRange(j, target.size());
}

double map_distortion(const PointMap& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  double dis = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = i + 1; k < x.size(); ++k)
      dis = std::max(dis, std::abs(x.dist(i, k) - y.dist(f(i), f(k))));
  return dis;
}

double covering_radius(const PointMap& f) {
  const auto& y = f.target();
  double radius = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.source().size(); ++i)
      nearest = std::min(nearest, y.dist(j, f(i)));
    radius = std::max(radius, nearest);
  }
  return radius;
}

bool is_eps_isometry(const PointMap& f, double eps, IsometrySense sense) {
  if (!(eps > 0.0)) throw Error("eps must be positive");
  if (map_distortion(f) > eps) return false;
  if (sense == IsometrySense::kEdwards) return true;
  return covering_radius(f) < eps;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Number of maps ny^nx, capped.
std::optional<std::uint64_t> map_count(std::size_t nx, std::size_t ny,
                                       std::uint64_t cap) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < nx; ++i) {
    if (count > cap / ny) return std::nullopt;
    count *= ny;
  }
  return count;
}

std::vector<std::size_t> ecc_order(const FiniteMetricSpace& x) {
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ea = x.eccentricity(a), eb = x.eccentricity(b);
    return ea != eb ? ea > eb : a < b;
  });
  return order;
}

double radius_of_image(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                       const std::vector<std::uint32_t>& image) {
  double radius = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    double nearest = kInf;
    for (std::size_t i = 0; i < x.size(); ++i)
      nearest = std::min(nearest, y.dist(j, image[i]));
    radius = std::max(radius, nearest);
  }
  return radius;
}

// Branch-and-bound over total maps. Partial distortion is monotone under
// extension, so it prunes both the plain-distortion objective and the
// max(distortion, radius) objective (radius only enters at leaves).
struct MapSearch {
  const FiniteMetricSpace& x;
  const FiniteMetricSpace& y;
  std::vector<std::size_t> order;

  bool with_radius = false;           // objective max(dis, radius)
  bool feasibility = false;           // stop at first admissible leaf
  double cut = kInf;                  // feasibility: keep dis <= cut
  double radius_below = -1.0;         // feasibility: require radius < this
  const std::vector<std::int64_t>* fixed = nullptr;  // per x index, -1 free

  std::uint64_t budget = kNoNodeBudget;
  std::uint64_t nodes = 0;
  bool exhausted = false;

  double best = kInf;
  std::vector<std::uint32_t> best_image;
  bool found = false;

  std::vector<std::uint32_t> image;

  MapSearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y)
      : x(x), y(y), order(ecc_order(x)), image(x.size(), 0) {}

  bool pruned(double dis) const { return feasibility ? dis > cut : dis >= best; }

  bool tick() {
    if (nodes++ >= budget) {
      exhausted = true;
      return false;
    }
    return true;
  }

  void leaf(double dis) {
    if (feasibility) {
      if (dis <= cut &&
          (radius_below < 0.0 || radius_of_image(x, y, image) < radius_below))
        found = true;
      return;
    }
    double obj = dis;
    if (with_radius) obj = std::max(obj, radius_of_image(x, y, image));
    if (obj < best) {
      best = obj;
      best_image = image;
    }
  }

  void assign(std::size_t depth, double dis) {
    if (exhausted || (feasibility && found)) return;
    if (depth == x.size()) {
      leaf(dis);
      return;
    }
    const std::size_t xi = order[depth];

    struct Cand {
      double bound;
      std::uint32_t image;
    };
    std::vector<Cand> cands;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (fixed && (*fixed)[xi] >= 0 &&
          (*fixed)[xi] != static_cast<std::int64_t>(j))
        continue;
      double bound = dis;
      for (std::size_t t = 0; t < depth; ++t)
        bound = std::max(
            bound, std::abs(x.dist(xi, order[t]) - y.dist(j, image[order[t]])));
      if (!pruned(bound))
        cands.push_back({bound, static_cast<std::uint32_t>(j)});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return a.bound != b.bound ? a.bound < b.bound : a.image < b.image;
    });

    for (const Cand& c : cands) {
      if (exhausted || (feasibility && found)) return;
      if (pruned(c.bound)) continue;
      if (!tick()) return;
      image[xi] = c.image;
      assign(depth + 1, c.bound);
    }
  }
};

double distortion_of_image(const FiniteMetricSpace& x,
                           const FiniteMetricSpace& y,
                           const std::vector<std::uint32_t>& image,
                           double abort_at) {
  double dis = 0.0;
  for (std::size_t i = 0; i < x.size() && dis < abort_at; ++i)
    for (std::size_t k = i + 1; k < x.size(); ++k)
      dis = std::max(dis, std::abs(x.dist(i, k) - y.dist(image[i], image[k])));
  return dis;
}

// Seed: rank matching along sorted eccentricities.
std::vector<std::uint32_t> seed_image(const FiniteMetricSpace& x,
                                      const FiniteMetricSpace& y) {
  auto by_ecc = [](const FiniteMetricSpace& s) {
    std::vector<std::size_t> idx(s.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const double ea = s.eccentricity(a), eb = s.eccentricity(b);
      return ea != eb ? ea < eb : a < b;
    });
    return idx;
  };
  const auto xs = by_ecc(x), ys = by_ecc(y);
  std::vector<std::uint32_t> image(x.size());
  for (std::size_t r = 0; r < xs.size(); ++r) {
    const std::size_t pos =
        xs.size() == 1
            ? 0
            : (r * (ys.size() - 1) + (xs.size() - 1) / 2) / (xs.size() - 1);
    image[xs[r]] =
        static_cast<std::uint32_t>(ys[std::min(pos, ys.size() - 1)]);
  }
  return image;
}

// Lexicographically smallest image array among maps with distortion <= value.
std::vector<std::uint32_t> polish_map(const FiniteMetricSpace& x,
                                      const FiniteMetricSpace& y,
                                      double value, std::uint64_t& nodes) {
  std::vector<std::int64_t> fixed(x.size(), -1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      fixed[i] = static_cast<std::int64_t>(j);
      MapSearch s(x, y);
      s.feasibility = true;
      s.cut = value;
      s.fixed = &fixed;
      s.assign(0, 0.0);
      nodes += s.nodes;
      if (s.found) break;
      fixed[i] = -1;
    }
    if (fixed[i] < 0)
      throw Error("internal: map polish lost feasibility");
  }
  std::vector<std::uint32_t> image(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    image[i] = static_cast<std::uint32_t>(fixed[i]);
  return image;
}

}  // namespace

MapSearchResult min_distortion_map(const FiniteMetricSpace& x,
                                   const FiniteMetricSpace& y,
                                   const MapSearchOptions& options) {
  const std::size_t nx = x.size(), ny = y.size();

  if (auto count = map_count(nx, ny, options.exhaustive_cap)) {
    // Odometer scan in lexicographic image order; strict improvement keeps
    // the first (lexicographically smallest) minimizer.
    std::vector<std::uint32_t> image(nx, 0), best_image(nx, 0);
    double best = kInf;
    std::uint64_t visited = 0;
    for (;;) {
      ++visited;
      const double dis = distortion_of_image(x, y, image, best);
      if (dis < best) {
        best = dis;
        best_image = image;
      }
      std::size_t pos = nx;
      while (pos > 0) {
        --pos;
        if (++image[pos] < ny) break;
        image[pos] = 0;
        if (pos == 0) {
          MapSearchResult result{PointMap(x, y, best_image), best, best,
                                 best, visited, false};
          return result;
        }
      }
    }
  }

  MapSearch search(x, y);
  search.budget = options.node_budget;
  search.best_image = seed_image(x, y);
  search.best = distortion_of_image(x, y, search.best_image, kInf);
  search.assign(0, 0.0);

  std::uint64_t nodes = search.nodes;
  const double one_sided_lower = std::max(0.0, x.diameter() - y.diameter());
  const bool exact = !search.exhausted || one_sided_lower >= search.best;

  std::vector<std::uint32_t> image = search.best_image;
  if (!search.exhausted) image = polish_map(x, y, search.best, nodes);

  MapSearchResult result{PointMap(x, y, std::move(image)),
                         search.best,
                         exact ? search.best : one_sided_lower,
                         search.best,
                         nodes,
                         !exact};
  return result;
}

EdwardsResult edwards_dE(const FiniteMetricSpace& x,
                         const FiniteMetricSpace& y,
                         const MapSearchOptions& options) {
  EdwardsResult result{0.0, min_distortion_map(x, y, options),
                       min_distortion_map(y, x, options), false};
  result.value = std::max(result.forward.value, result.backward.value);
  result.truncated = result.forward.truncated || result.backward.truncated;
  return result;
}

namespace {

HatDirection hat_direction(const FiniteMetricSpace& x,
                           const FiniteMetricSpace& y,
                           std::uint64_t enumeration_cap) {
  if (!map_count(x.size(), y.size(), enumeration_cap))
    throw EnumerationTooLarge(
        "eps-isometry search needs ny^nx <= " +
        std::to_string(enumeration_cap) + " maps per direction");

  MapSearch search(x, y);
  search.with_radius = true;
  search.best_image = seed_image(x, y);
  search.best =
      std::max(distortion_of_image(x, y, search.best_image, kInf),
               radius_of_image(x, y, search.best_image));
  search.assign(0, 0.0);

  HatDirection dir;
  dir.value = search.best;
  dir.witness = search.best_image;

  if (dir.value == 0.0) {
    dir.attained = true;
    return dir;
  }

  MapSearch feas(x, y);
  feas.feasibility = true;
  feas.cut = dir.value;
  feas.radius_below = dir.value;
  feas.assign(0, 0.0);
  dir.attained = feas.found;
  if (feas.found) dir.witness = feas.image;
  return dir;
}

}  // namespace

HatResult hat_dGH(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                  std::uint64_t enumeration_cap) {
  HatResult result;
  result.forward = hat_direction(x, y, enumeration_cap);
  result.backward = hat_direction(y, x, enumeration_cap);
  result.value = std::max(result.forward.value, result.backward.value);
  // Attained iff every direction reaching the max admits a minimizing map
  // whose image is a strict eps-net at eps = value.
  result.attained = true;
  if (result.forward.value == result.value && !result.forward.attained)
    result.attained = false;
  if (result.backward.value == result.value && !result.backward.attained)
    result.attained = false;
  return result;
}

PointMap correspondence_to_map(const Correspondence& r,
                               const FiniteMetricSpace& x,
                               const FiniteMetricSpace& y) {
  if (x.size() != r.nx()) throw SizeMismatch(r.nx(), x.size());
  if (y.size() != r.ny()) throw SizeMismatch(r.ny(), y.size());
  std::vector<std::uint32_t> image(r.nx(),
                                   std::numeric_limits<std::uint32_t>::max());
  for (const PairIJ& p : r.pairs())
    image[p.i] = std::min(image[p.i], p.j);
  return PointMap(x, y, std::move(image));
}

}  // namespace gh
