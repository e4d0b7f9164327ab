#include "gh/correspondence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace gh {

Correspondence::Correspondence(std::size_t nx, std::size_t ny,
                               std::vector<PairIJ> pairs)
    : nx_(nx), ny_(ny), pairs_(std::move(pairs)) {
  if (nx_ == 0 || ny_ == 0) throw ZeroDimension();
  if (pairs_.empty()) throw Error("correspondence must contain pairs");
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());

  std::vector<bool> x_hit(nx_, false), y_hit(ny_, false);
  for (const PairIJ& p : pairs_) {
    if (p.i >= nx_) throw IndexOutOfRange(p.i, nx_);
    if (p.j >= ny_) throw IndexOutOfRange(p.j, ny_);
    x_hit[p.i] = true;
    y_hit[p.j] = true;
  }
  for (std::size_t i = 0; i < nx_; ++i)
    if (!x_hit[i])
      throw Error("projection onto X not surjective: point " +
                  std::to_string(i) + " uncovered");
  for (std::size_t j = 0; j < ny_; ++j)
    if (!y_hit[j])
      throw Error("projection onto Y not surjective: point " +
                  std::to_string(j) + " uncovered");
}

Correspondence transpose(const Correspondence& r) {
  std::vector<PairIJ> flipped;
  flipped.reserve(r.pairs().size());
  for (const PairIJ& p : r.pairs()) flipped.push_back({p.j, p.i});
  return Correspondence(r.ny(), r.nx(), std::move(flipped));
}

bool pairset_less(const Correspondence& a, const Correspondence& b) {
  // Numeric bitmask comparison: walk both sorted pair lists from the highest
  // bit index down; the first side missing a high bit is the smaller one.
  auto bit = [](const Correspondence& c, const PairIJ& p) {
    return static_cast<std::uint64_t>(p.i) * c.ny() + p.j;
  };
  auto ia = a.pairs().rbegin(), ib = b.pairs().rbegin();
  while (ia != a.pairs().rend() && ib != b.pairs().rend()) {
    const std::uint64_t ba = bit(a, *ia), bb = bit(b, *ib);
    if (ba != bb) return ba < bb;
    ++ia;
    ++ib;
  }
  return ia == a.pairs().rend() && ib != b.pairs().rend();
}

double distortion(const Correspondence& r, const FiniteMetricSpace& x,
                  const FiniteMetricSpace& y) {
  if (x.size() != r.nx()) throw SizeMismatch(r.nx(), x.size());
  if (y.size() != r.ny()) throw SizeMismatch(r.ny(), y.size());
  double dis = 0.0;
  const auto& pairs = r.pairs();
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      const double diff = std::abs(x.dist(pairs[a].i, pairs[b].i) -
                                   y.dist(pairs[a].j, pairs[b].j));
      dis = std::max(dis, diff);
    }
  }
  return dis;
}

CorrespondenceEnumerator::CorrespondenceEnumerator(std::size_t nx,
                                                   std::size_t ny)
    : nx_(nx), ny_(ny) {
  if (nx == 0 || ny == 0) throw ZeroDimension();
  if (nx * ny > kMaxBits) throw OracleTooLarge(nx, ny, kMaxBits);
  bits_ = static_cast<std::uint32_t>(nx * ny);
  mask_ = 0;
  end_ = std::uint64_t{1} << bits_;
}

std::optional<Correspondence> CorrespondenceEnumerator::next() {
  while (++mask_ < end_) {
    bool covered = true;
    for (std::size_t i = 0; i < nx_ && covered; ++i) {
      const std::uint64_t row = ((std::uint64_t{1} << ny_) - 1) << (i * ny_);
      covered = (mask_ & row) != 0;
    }
    for (std::size_t j = 0; j < ny_ && covered; ++j) {
      std::uint64_t col = 0;
      for (std::size_t i = 0; i < nx_; ++i)
        col |= std::uint64_t{1} << (i * ny_ + j);
      covered = (mask_ & col) != 0;
    }
    if (!covered) continue;

    std::vector<PairIJ> pairs;
    pairs.reserve(static_cast<std::size_t>(std::popcount(mask_)));
    for (std::uint64_t rest = mask_; rest != 0; rest &= rest - 1) {
      const auto p = static_cast<std::uint32_t>(std::countr_zero(rest));
      pairs.push_back({p / static_cast<std::uint32_t>(ny_),
                       p % static_cast<std::uint32_t>(ny_)});
    }
    return Correspondence(nx_, ny_, std::move(pairs));
  }
  return std::nullopt;
}

GHResult gh_exact_oracle(const FiniteMetricSpace& x,
                         const FiniteMetricSpace& y) {
  const std::size_t nx = x.size(), ny = y.size();
  if (nx * ny > CorrespondenceEnumerator::kMaxBits)
    throw OracleTooLarge(nx, ny, CorrespondenceEnumerator::kMaxBits);

  // Distortion terms indexed by flattened pair ids p = i*ny + j.
  const std::size_t bits = nx * ny;
  std::vector<double> term(bits * bits, 0.0);
  for (std::size_t p = 0; p < bits; ++p) {
    for (std::size_t q = 0; q < bits; ++q) {
      term[p * bits + q] = std::abs(x.dist(p / ny, q / ny) -
                                    y.dist(p % ny, q % ny));
    }
  }

  double best = std::numeric_limits<double>::infinity();
  std::optional<Correspondence> best_r;
  std::uint64_t evaluated = 0;

  CorrespondenceEnumerator en(nx, ny);
  std::vector<std::size_t> ids;
  while (auto r = en.next()) {
    ++evaluated;
    ids.clear();
    for (const PairIJ& p : r->pairs())
      ids.push_back(static_cast<std::size_t>(p.i) * ny + p.j);
    double dis = 0.0;
    for (std::size_t a = 0; a < ids.size() && dis < best; ++a)
      for (std::size_t b = a + 1; b < ids.size(); ++b)
        dis = std::max(dis, term[ids[a] * bits + ids[b]]);
    if (dis < best) {
      best = dis;
      best_r = std::move(*r);
    }
  }

  GHResult result{0.5 * best, 0.5 * best, 0.5 * best, evaluated, false,
                  std::move(*best_r)};
  return result;
}

double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  return 0.5 * std::abs(x.diameter() - y.diameter());
}

Correspondence nearest_point_correspondence(
    const FiniteMetricSpace& x, const FiniteMetricSpace& y,
    const std::vector<std::size_t>& anchor) {
  if (anchor.size() != x.size()) throw SizeMismatch(x.size(), anchor.size());
  std::vector<PairIJ> pairs;
  std::vector<bool> covered(y.size(), false);
  for (std::size_t i = 0; i < anchor.size(); ++i) {
    if (anchor[i] >= y.size()) throw IndexOutOfRange(anchor[i], y.size());
    pairs.push_back({static_cast<std::uint32_t>(i),
                     static_cast<std::uint32_t>(anchor[i])});
    covered[anchor[i]] = true;
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (covered[j]) continue;
    std::size_t owner = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < anchor.size(); ++i) {
      const double d = y.dist(anchor[i], j);
      if (d < best) {
        best = d;
        owner = i;
      }
    }
    pairs.push_back({static_cast<std::uint32_t>(owner),
                     static_cast<std::uint32_t>(j)});
  }
  return Correspondence(x.size(), y.size(), std::move(pairs));
}

}  // namespace gh
