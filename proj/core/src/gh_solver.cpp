#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "gh/correspondence.hpp"

// Exact minimization of correspondence distortion. The search runs over
// total maps from X to Y (branch order: X points by decreasing eccentricity,
// candidate images by increasing partial distortion) followed by an exact
// completion layer that attaches every still-uncovered Y point to a single
// owner. Every pair-minimal correspondence has this form, and dropping pairs
// never increases distortion, so the optimum over the searched family equals
// the optimum over all correspondences.

namespace gh {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SharedState {
  std::atomic<double> best_dis{kInf};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
  std::uint64_t budget = kNoNodeBudget;
};

struct Searcher {
  const FiniteMetricSpace& x;
  const FiniteMetricSpace& y;
  const std::vector<std::size_t>& order;
  SharedState& shared;

  // Feasibility mode answers "is there a correspondence inside `allowed`
  // with distortion <= cut" and stops at the first witness; value mode
  // minimizes against the shared incumbent.
  bool feasibility = false;
  double cut = 0.0;
  const std::vector<char>* allowed = nullptr;

  std::vector<PairIJ> cur;
  std::vector<int> cover;
  double local_best = kInf;
  std::vector<PairIJ> local_best_pairs;
  bool found = false;

  Searcher(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
           const std::vector<std::size_t>& order, SharedState& shared)
      : x(x), y(y), order(order), shared(shared) {
    cover.assign(y.size(), 0);
    cur.reserve(x.size() + y.size());
  }

  bool allowed_pair(std::size_t i, std::size_t j) const {
    return allowed == nullptr || (*allowed)[i * y.size() + j] != 0;
  }

  bool pruned(double dis) const {
    if (feasibility) return dis > cut;
    return dis >= shared.best_dis.load(std::memory_order_relaxed);
  }

  bool stop() const {
    return shared.exhausted.load(std::memory_order_relaxed) ||
           (feasibility && found);
  }

  // Counts one expanded node; flips the shared exhausted flag when the
  // budget runs out.
  bool tick() {
    const std::uint64_t c =
        shared.nodes.fetch_add(1, std::memory_order_relaxed);
    if (c >= shared.budget) {
      shared.exhausted.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }

  void leaf(double dis) {
    if (feasibility) {
      if (dis <= cut) found = true;
      return;
    }
    if (dis < local_best) {
      local_best = dis;
      local_best_pairs = cur;
    }
    double g = shared.best_dis.load(std::memory_order_relaxed);
    while (dis < g && !shared.best_dis.compare_exchange_weak(
                          g, dis, std::memory_order_relaxed)) {
    }
  }

  void attach(const std::vector<std::uint32_t>& uncovered, std::size_t idx,
              double dis) {
    if (stop()) return;
    if (idx == uncovered.size()) {
      leaf(dis);
      return;
    }
    const std::uint32_t u = uncovered[idx];

    struct Cand {
      double bound;
      std::uint32_t owner;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!allowed_pair(i, u)) continue;
      double bound = dis;
      for (const PairIJ& p : cur)
        bound = std::max(bound, std::abs(x.dist(i, p.i) - y.dist(u, p.j)));
      if (!pruned(bound))
        cands.push_back({bound, static_cast<std::uint32_t>(i)});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return a.bound != b.bound ? a.bound < b.bound : a.owner < b.owner;
    });

    for (const Cand& c : cands) {
      if (stop()) return;
      if (pruned(c.bound)) continue;
      if (!tick()) return;
      cur.push_back({c.owner, u});
      attach(uncovered, idx + 1, c.bound);
      cur.pop_back();
    }
  }

  void assign(std::size_t depth, double dis) {
    if (stop()) return;
    if (depth == x.size()) {
      std::vector<std::uint32_t> uncovered;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (cover[j] == 0) uncovered.push_back(static_cast<std::uint32_t>(j));
      attach(uncovered, 0, dis);
      return;
    }
    const std::size_t xi = order[depth];

    struct Cand {
      double bound;
      std::uint32_t image;
    };
    std::vector<Cand> cands;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!allowed_pair(xi, j)) continue;
      double bound = dis;
      for (std::size_t t = 0; t < depth; ++t)
        bound = std::max(bound,
                         std::abs(x.dist(xi, order[t]) - y.dist(j, cur[t].j)));
      if (!pruned(bound))
        cands.push_back({bound, static_cast<std::uint32_t>(j)});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return a.bound != b.bound ? a.bound < b.bound : a.image < b.image;
    });

    for (const Cand& c : cands) {
      if (stop()) return;
      if (pruned(c.bound)) continue;
      if (!tick()) return;
      cur.push_back({static_cast<std::uint32_t>(xi), c.image});
      ++cover[c.image];
      assign(depth + 1, c.bound);
      --cover[c.image];
      cur.pop_back();
    }
  }
};

std::vector<std::size_t> branch_order(const FiniteMetricSpace& x) {
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ea = x.eccentricity(a), eb = x.eccentricity(b);
    return ea != eb ? ea > eb : a < b;
  });
  return order;
}

// Rank-matching anchor along sorted eccentricities; its completed
// correspondence seeds the incumbent.
Correspondence seed_correspondence(const FiniteMetricSpace& x,
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
  std::vector<std::size_t> anchor(x.size());
  for (std::size_t r = 0; r < xs.size(); ++r) {
    const std::size_t pos =
        xs.size() == 1
            ? 0
            : (r * (ys.size() - 1) + (xs.size() - 1) / 2) / (xs.size() - 1);
    anchor[xs[r]] = ys[std::min(pos, ys.size() - 1)];
  }
  return nearest_point_correspondence(x, y, anchor);
}

bool feasible_within(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                     const std::vector<std::size_t>& order,
                     const std::vector<char>& allowed, double cut,
                     SharedState& shared) {
  const std::size_t nx = x.size(), ny = y.size();
  for (std::size_t i = 0; i < nx; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < ny && !any; ++j) any = allowed[i * ny + j];
    if (!any) return false;
  }
  for (std::size_t j = 0; j < ny; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < nx && !any; ++i) any = allowed[i * ny + j];
    if (!any) return false;
  }
  Searcher s(x, y, order, shared);
  s.feasibility = true;
  s.cut = cut;
  s.allowed = &allowed;
  s.assign(0, 0.0);
  return s.found;
}

// Lexicographic-smallest optimal pair set: walk the bits from the highest
// down, dropping each pair whenever a correspondence of optimal distortion
// still exists without it. The feasibility runs must never be truncated, so
// they use their own un-budgeted state; the caller adds `nodes` to its count.
std::vector<PairIJ> polish_certificate(const FiniteMetricSpace& x,
                                       const FiniteMetricSpace& y,
                                       const std::vector<std::size_t>& order,
                                       double best_dis,
                                       std::uint64_t& nodes) {
  SharedState shared;
  const std::size_t nx = x.size(), ny = y.size();
  std::vector<char> allowed(nx * ny, 1);
  for (std::size_t p = nx * ny; p-- > 0;) {
    allowed[p] = 0;
    if (!feasible_within(x, y, order, allowed, best_dis, shared))
      allowed[p] = 1;
  }
  nodes = shared.nodes.load();
  std::vector<PairIJ> pairs;
  for (std::size_t p = 0; p < nx * ny; ++p)
    if (allowed[p])
      pairs.push_back({static_cast<std::uint32_t>(p / ny),
                       static_cast<std::uint32_t>(p % ny)});
  return pairs;
}

}  // namespace

GHResult gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                  const SolveOptions& options) {
  const auto order = branch_order(x);

  Correspondence seed = seed_correspondence(x, y);
  const double seed_dis = distortion(seed, x, y);

  SharedState shared;
  shared.budget = options.node_budget;
  shared.best_dis.store(seed_dis);

  // Depth-0 branches, one per candidate image of the most eccentric X point.
  std::vector<std::uint32_t> branches;
  for (std::size_t j = 0; j < y.size(); ++j)
    branches.push_back(static_cast<std::uint32_t>(j));

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads,
                                      static_cast<unsigned>(branches.size())));

  std::vector<Searcher> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    workers.emplace_back(x, y, order, shared);

  auto run_branch = [&](Searcher& w, std::uint32_t j) {
    if (w.pruned(0.0)) return;
    if (!w.tick()) return;
    w.cur.push_back({static_cast<std::uint32_t>(order[0]), j});
    ++w.cover[j];
    w.assign(1, 0.0);
    --w.cover[j];
    w.cur.pop_back();
  };

  if (threads == 1) {
    for (std::uint32_t j : branches) {
      if (shared.exhausted.load()) break;
      run_branch(workers[0], j);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (;;) {
          const std::size_t b = next.fetch_add(1);
          if (b >= branches.size() || shared.exhausted.load()) return;
          run_branch(workers[t], branches[b]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  double best_dis = seed_dis;
  std::vector<PairIJ> best_pairs = seed.pairs();
  for (const Searcher& w : workers) {
    if (w.local_best < best_dis) {
      best_dis = w.local_best;
      best_pairs = w.local_best_pairs;
    }
  }

  const bool exhausted = shared.exhausted.load();
  const double diam_lower = std::abs(x.diameter() - y.diameter());
  const bool exact = !exhausted || diam_lower >= best_dis;

  std::uint64_t polish_nodes = 0;
  if (!exhausted && threads == 1)
    best_pairs = polish_certificate(x, y, order, best_dis, polish_nodes);

  GHResult result{0.5 * best_dis,
                  exact ? 0.5 * best_dis : 0.5 * diam_lower,
                  0.5 * best_dis,
                  shared.nodes.load() + polish_nodes,
                  !exact,
                  Correspondence(x.size(), y.size(), std::move(best_pairs))};
  return result;
}

}  // namespace gh
