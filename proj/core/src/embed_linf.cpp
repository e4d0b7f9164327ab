#include "gh/embed_linf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace gh {

double supnorm_distance(const std::vector<double>& u,
                        const std::vector<double>& v) {
  const std::size_t dim = std::max(u.size(), v.size());
  double d = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double uk = k < u.size() ? u[k] : 0.0;
    const double vk = k < v.size() ? v[k] : 0.0;
    d = std::max(d, std::abs(uk - vk));
  }
  return d;
}

SupNormPointSet kuratowski_embed(const FiniteMetricSpace& x) {
  SupNormPointSet out;
  out.dim = x.size();
  out.points.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> row(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) row[k] = x.dist(i, k);
    out.points.push_back(std::move(row));
  }
  return out;
}

double supnorm_hausdorff(const SupNormPointSet& a, const SupNormPointSet& b) {
  double h = 0.0;
  for (const auto& p : a.points) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& q : b.points)
      nearest = std::min(nearest, supnorm_distance(p, q));
    h = std::max(h, nearest);
  }
  for (const auto& q : b.points) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& p : a.points)
      nearest = std::min(nearest, supnorm_distance(p, q));
    h = std::max(h, nearest);
  }
  return h;
}

namespace {

// Coordinate descent state for one (X, Y) pair. The translated copy of the
// second embedding is never materialized; distances are evaluated as
// max_k |a_k - b_k - v_k|, so the translated set stays exactly isometric
// to Y while v moves.
struct Aligner {
  std::vector<std::vector<double>> a, b;
  std::size_t dim = 0;
  std::size_t na = 0, nb = 0;

  Aligner(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    const SupNormPointSet ex = kuratowski_embed(x);
    const SupNormPointSet ey = kuratowski_embed(y);
    dim = ex.dim + ey.dim;
    na = ex.points.size();
    nb = ey.points.size();
    auto pad = [&](const std::vector<double>& p) {
      std::vector<double> q(dim, 0.0);
      std::copy(p.begin(), p.end(), q.begin());
      return q;
    };
    for (const auto& p : ex.points) a.push_back(pad(p));
    for (const auto& p : ey.points) b.push_back(pad(p));
  }

  double pair_dist(std::size_t i, std::size_t j,
                   const std::vector<double>& v) const {
    double d = 0.0;
    for (std::size_t k = 0; k < dim; ++k)
      d = std::max(d, std::abs(a[i][k] - b[j][k] - v[k]));
    return d;
  }

  double objective(const std::vector<double>& v) const {
    double h = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < nb; ++j)
        nearest = std::min(nearest, pair_dist(i, j, v));
      h = std::max(h, nearest);
    }
    for (std::size_t j = 0; j < nb; ++j) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < na; ++i)
        nearest = std::min(nearest, pair_dist(i, j, v));
      h = std::max(h, nearest);
    }
    return h;
  }

  // Exact minimization over one coordinate. Each pair contributes
  // max(|t - vc|, M) with t, M constant in vc; the envelope's vertices and
  // crossings are all of the form t, (t+t')/2 or t +- M'. Flat optima are
  // re-centered to the midpoint of the tie interval so that later
  // coordinates can keep improving.
  double scan_coordinate(std::vector<double>& v, std::size_t c) const {
    const std::size_t pairs = na * nb;
    std::vector<double> t(pairs), floor_m(pairs);
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        double m = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          if (k == c) continue;
          m = std::max(m, std::abs(a[i][k] - b[j][k] - v[k]));
        }
        t[i * nb + j] = a[i][c] - b[j][c];
        floor_m[i * nb + j] = m;
      }
    }

    auto eval = [&](double vc) {
      double h = 0.0;
      for (std::size_t i = 0; i < na; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < nb; ++j) {
          const std::size_t p = i * nb + j;
          nearest =
              std::min(nearest, std::max(std::abs(t[p] - vc), floor_m[p]));
        }
        h = std::max(h, nearest);
      }
      for (std::size_t j = 0; j < nb; ++j) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < na; ++i) {
          const std::size_t p = i * nb + j;
          nearest =
              std::min(nearest, std::max(std::abs(t[p] - vc), floor_m[p]));
        }
        h = std::max(h, nearest);
      }
      return h;
    };

    std::vector<double> cands;
    cands.reserve(3 * pairs * pairs + pairs + 1);
    cands.push_back(v[c]);
    for (std::size_t p = 0; p < pairs; ++p) cands.push_back(t[p]);
    for (std::size_t p = 0; p < pairs; ++p) {
      for (std::size_t q = 0; q < pairs; ++q) {
        cands.push_back(0.5 * (t[p] + t[q]));
        cands.push_back(t[p] + floor_m[q]);
        cands.push_back(t[p] - floor_m[q]);
      }
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    double best = std::numeric_limits<double>::infinity();
    for (double vc : cands) best = std::min(best, eval(vc));

    const double tie_tol = 4e-16 * (1.0 + std::abs(best));
    double lo = 0.0, hi = 0.0, first = 0.0;
    bool have_tie = false;
    for (double vc : cands) {
      if (eval(vc) <= best + tie_tol) {
        if (!have_tie) {
          lo = hi = first = vc;
          have_tie = true;
        } else {
          hi = vc;
        }
      }
    }
    double chosen = first;
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) <= best + tie_tol) chosen = mid;

    v[c] = chosen;
    return eval(chosen);
  }

  double descend(std::vector<double>& v) const {
    double current = objective(v);
    for (int cycle = 0; cycle < 200; ++cycle) {
      const double before = current;
      for (std::size_t c = 0; c < dim; ++c) current = scan_coordinate(v, c);
      if (before - current <= 1e-12) break;
    }
    return current;
  }
};

}  // namespace

AlignResult align_upper_bound(const FiniteMetricSpace& x,
                              const FiniteMetricSpace& y,
                              const AlignOptions& options) {
  if (options.restarts == 0) throw Error("restarts must be at least 1");
  const Aligner aligner(x, y);
  const double spread = std::max({x.diameter(), y.diameter(), 1.0});

  struct Run {
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> shift;
  };
  std::vector<Run> runs(options.restarts);

  auto run_restart = [&](std::size_t r) {
    std::vector<double> v(aligner.dim, 0.0);
    if (r > 0) {
      // Restart-indexed seeding keeps results independent of threading.
      std::mt19937_64 eng(options.seed + 0x9E3779B97F4A7C15ull * r);
      for (double& vc : v) {
        const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
        vc = (2.0 * u - 1.0) * spread;
      }
    }
    runs[r].value = aligner.descend(v);
    runs[r].shift = std::move(v);
  };

  const unsigned threads = std::max(
      1u,
      std::min<unsigned>(options.threads,
                         static_cast<unsigned>(options.restarts)));
  if (threads == 1) {
    for (std::size_t r = 0; r < options.restarts; ++r) run_restart(r);
  } else {
    std::vector<std::thread> pool;
    for (unsigned tid = 0; tid < threads; ++tid) {
      pool.emplace_back([&, tid] {
        for (std::size_t r = tid; r < options.restarts; r += threads)
          run_restart(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  AlignResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < options.restarts; ++r) {
    if (runs[r].value < best.value) {
      best.value = runs[r].value;
      best.shift = runs[r].shift;
      best.best_restart = r;
    }
  }
  return best;
}

}  // namespace gh
