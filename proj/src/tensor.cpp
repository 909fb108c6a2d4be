#include "tenrank/tensor.hpp"

#include <algorithm>
#include <stdexcept>

#include "tenrank/rng.hpp"

namespace tenrank {

Shape::Shape(std::size_t a, std::size_t b, std::size_t c) : m1(a), m2(b), m3(c) {
  if (a < 1 || b < 1 || c < 1)
    throw std::invalid_argument("Shape: dimensions must be positive");
}

std::size_t Shape::dim(int axis) const {
  switch (axis) {
    case 1: return m1;
    case 2: return m2;
    case 3: return m3;
    default: throw std::invalid_argument("Shape: axis must be 1, 2 or 3");
  }
}

Shape Shape::canonical() const {
  std::array<std::size_t, 3> d{m1, m2, m3};
  std::sort(d.begin(), d.end());
  return Shape(d[0], d[1], d[2]);
}

void FactorList::validate_for(const Shape& s) const {
  for (const auto& term : terms)
    for (int j = 0; j < 3; ++j)
      if (term[j].size() != s.dim(j + 1))
        throw std::invalid_argument("FactorList: factor length does not match shape");
}

std::array<std::size_t, 3> MlRank::sorted() const {
  std::array<std::size_t, 3> d{r1, r2, r3};
  std::sort(d.begin(), d.end());
  return d;
}

std::array<int, 2> complement_axes(int axis) {
  switch (axis) {
    case 1: return {2, 3};
    case 2: return {1, 3};
    case 3: return {1, 2};
    default: throw std::invalid_argument("axis must be 1, 2 or 3");
  }
}

IntMatrix unfold(const IntTensor3& t, int axis) {
  const auto [p, q] = complement_axes(axis);
  const std::size_t mp = t.shape.dim(p);
  const std::size_t mq = t.shape.dim(q);
  const std::size_t mj = t.shape.dim(axis);
  IntMatrix a(mp * mq, mj);
  std::array<std::size_t, 3> idx{};
  for (std::size_t ip = 0; ip < mp; ++ip)
    for (std::size_t iq = 0; iq < mq; ++iq)
      for (std::size_t ij = 0; ij < mj; ++ij) {
        idx[static_cast<std::size_t>(p) - 1] = ip;
        idx[static_cast<std::size_t>(q) - 1] = iq;
        idx[static_cast<std::size_t>(axis) - 1] = ij;
        a.at(ip * mq + iq, ij) = t.at(idx[0], idx[1], idx[2]);
      }
  return a;
}

IntMatrix slice(const IntTensor3& t, int axis, std::size_t index) {
  const auto [p, q] = complement_axes(axis);
  if (index < 1 || index > t.shape.dim(axis))
    throw std::out_of_range("slice: index out of range");
  const std::size_t mp = t.shape.dim(p);
  const std::size_t mq = t.shape.dim(q);
  IntMatrix a(mp, mq);
  std::array<std::size_t, 3> idx{};
  idx[static_cast<std::size_t>(axis) - 1] = index - 1;
  for (std::size_t ip = 0; ip < mp; ++ip)
    for (std::size_t iq = 0; iq < mq; ++iq) {
      idx[static_cast<std::size_t>(p) - 1] = ip;
      idx[static_cast<std::size_t>(q) - 1] = iq;
      a.at(ip, iq) = t.at(idx[0], idx[1], idx[2]);
    }
  return a;
}

namespace {

// Exact rank for small matrices; for larger ones the max of a few modular
// ranks, which still never exceeds the true rank and misses it only if every
// chosen prime divides the same nonzero minor.
std::size_t matrix_rank(const IntMatrix& m) {
  constexpr std::size_t kRationalLimit = 128;
  if (m.rows <= kRationalLimit && m.cols <= kRationalLimit)
    return rational_rank(m, kRationalLimit);
  std::size_t best = 0;
  for (std::uint64_t trial = 0; trial < 3; ++trial) {
    const std::uint64_t p =
        random_prime(61, derive_seed(0x6d6c72616e6bull, {trial}));
    best = std::max(best, fp_rank(reduce_mod(m, p)));
  }
  return best;
}

}  // namespace

MlRank mlrank(const IntTensor3& t) {
  return MlRank{matrix_rank(unfold(t, 1)), matrix_rank(unfold(t, 2)),
                matrix_rank(unfold(t, 3))};
}

RankBounds rank_bounds(const IntTensor3& t) {
  const auto s = mlrank(t).sorted();
  RankBounds b;
  b.lower = s[2];
  b.upper = s[0] * s[1];
  if (b.lower == b.upper) b.exact = b.lower;
  return b;
}

IntTensor3 change_basis(const IntTensor3& t, const IntMatrix& q1,
                        const IntMatrix& q2, const IntMatrix& q3) {
  const std::array<const IntMatrix*, 3> q{&q1, &q2, &q3};
  for (int j = 0; j < 3; ++j) {
    const std::size_t mj = t.shape.dim(j + 1);
    if (q[j]->rows != mj || q[j]->cols != mj)
      throw std::invalid_argument("change_basis: matrix size does not match shape");
    if (rational_rank(*q[j]) != mj)
      throw std::invalid_argument("change_basis: singular basis change");
  }
  const Shape& s = t.shape;
  IntTensor3 u(s);
  for (std::size_t a = 0; a < s.m1; ++a)
    for (std::size_t j = 0; j < s.m2; ++j)
      for (std::size_t k = 0; k < s.m3; ++k) {
        Int acc = 0;
        for (std::size_t i = 0; i < s.m1; ++i) {
          const Int& c = q1.at(a, i);
          if (c != 0) acc += c * t.at(i, j, k);
        }
        u.at(a, j, k) = std::move(acc);
      }
  IntTensor3 v(s);
  for (std::size_t a = 0; a < s.m1; ++a)
    for (std::size_t b = 0; b < s.m2; ++b)
      for (std::size_t k = 0; k < s.m3; ++k) {
        Int acc = 0;
        for (std::size_t j = 0; j < s.m2; ++j) {
          const Int& c = q2.at(b, j);
          if (c != 0) acc += c * u.at(a, j, k);
        }
        v.at(a, b, k) = std::move(acc);
      }
  IntTensor3 w(s);
  for (std::size_t a = 0; a < s.m1; ++a)
    for (std::size_t b = 0; b < s.m2; ++b)
      for (std::size_t c = 0; c < s.m3; ++c) {
        Int acc = 0;
        for (std::size_t k = 0; k < s.m3; ++k) {
          const Int& f = q3.at(c, k);
          if (f != 0) acc += f * v.at(a, b, k);
        }
        w.at(a, b, c) = std::move(acc);
      }
  return w;
}

IntTensor3 build_from_factors(const Shape& s, const FactorList& f) {
  f.validate_for(s);
  IntTensor3 t(s);
  for (const auto& term : f.terms)
    for (std::size_t i1 = 0; i1 < s.m1; ++i1) {
      if (term[0][i1] == 0) continue;
      for (std::size_t i2 = 0; i2 < s.m2; ++i2) {
        if (term[1][i2] == 0) continue;
        const Int pre = term[0][i1] * term[1][i2];
        for (std::size_t i3 = 0; i3 < s.m3; ++i3)
          if (term[2][i3] != 0) t.at(i1, i2, i3) += pre * term[2][i3];
      }
    }
  return t;
}

IntTensor3 permute_axes(const IntTensor3& t, const std::array<int, 3>& perm) {
  std::array<bool, 3> seen{};
  for (int a : perm) {
    if (a < 1 || a > 3) throw std::invalid_argument("permute_axes: bad axis");
    seen[static_cast<std::size_t>(a) - 1] = true;
  }
  if (!(seen[0] && seen[1] && seen[2]))
    throw std::invalid_argument("permute_axes: not a permutation");
  IntTensor3 out(Shape(t.shape.dim(perm[0]), t.shape.dim(perm[1]),
                       t.shape.dim(perm[2])));
  std::array<std::size_t, 3> in{};
  for (in[0] = 0; in[0] < t.shape.m1; ++in[0])
    for (in[1] = 0; in[1] < t.shape.m2; ++in[1])
      for (in[2] = 0; in[2] < t.shape.m3; ++in[2])
        out.at(in[static_cast<std::size_t>(perm[0]) - 1],
               in[static_cast<std::size_t>(perm[1]) - 1],
               in[static_cast<std::size_t>(perm[2]) - 1]) =
            t.at(in[0], in[1], in[2]);
  return out;
}

}  // namespace tenrank
