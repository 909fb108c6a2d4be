#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "tenrank/exact_linalg.hpp"

namespace tenrank {

// Dimensions (m1, m2, m3) of an order-3 tensor space. Axes are numbered
// 1..3 throughout the public API.
struct Shape {
  std::size_t m1 = 1;
  std::size_t m2 = 1;
  std::size_t m3 = 1;

  Shape() = default;
  Shape(std::size_t a, std::size_t b, std::size_t c);

  std::size_t dim(int axis) const;
  std::size_t ambient() const { return m1 * m2 * m3; }
  // Dimension of the cone of rank-one tensors: m1 + m2 + m3 - 2.
  std::size_t rank_one_dim() const { return m1 + m2 + m3 - 2; }
  Shape canonical() const;
  bool is_canonical() const { return m1 <= m2 && m2 <= m3; }

  bool operator==(const Shape&) const = default;
};

// Dense integer tensor, entries stored in lexicographic (i1, i2, i3) order.
// Entry access is 0-based; axis arguments on the free functions below are
// 1-based and slice indices follow the 1-based convention of the interface.
struct IntTensor3 {
  Shape shape;
  std::vector<Int> entries;

  IntTensor3() : entries(1) {}
  explicit IntTensor3(const Shape& s) : shape(s), entries(s.ambient()) {}

  std::size_t offset(std::size_t i1, std::size_t i2, std::size_t i3) const {
    return (i1 * shape.m2 + i2) * shape.m3 + i3;
  }
  Int& at(std::size_t i1, std::size_t i2, std::size_t i3) {
    return entries[offset(i1, i2, i3)];
  }
  const Int& at(std::size_t i1, std::size_t i2, std::size_t i3) const {
    return entries[offset(i1, i2, i3)];
  }

  bool operator==(const IntTensor3&) const = default;
};

// k rank-one terms; terms[l][j] is the axis-(j+1) factor of term l.
struct FactorList {
  std::vector<std::array<std::vector<Int>, 3>> terms;

  std::size_t k() const { return terms.size(); }
  void validate_for(const Shape& s) const;
};

// Ranks of the three unfoldings. rj <= min(mj, product of the other two).
struct MlRank {
  std::size_t r1 = 0;
  std::size_t r2 = 0;
  std::size_t r3 = 0;

  std::array<std::size_t, 3> sorted() const;
  bool operator==(const MlRank&) const = default;
};

struct RankBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::optional<std::size_t> exact;
};

// The two axes other than `axis`, in increasing order.
std::array<int, 2> complement_axes(int axis);

// Mode-j unfolding: rows are indexed by the other two axes (p < q, q fastest),
// columns by axis j. Column i of unfold(t, j) is the vectorised slice(t, j, i+1).
IntMatrix unfold(const IntTensor3& t, int axis);

// Slice with axis-j index fixed to i (1-based, 1 <= i <= mj); rows run over
// the smaller remaining axis p, columns over q, p < q.
IntMatrix slice(const IntTensor3& t, int axis, std::size_t index);

MlRank mlrank(const IntTensor3& t);

// Tensor rank bounds from the multilinear rank: max rj <= rank <= r1 * r2
// for the two smallest sorted values; exact is set when the bounds meet or
// the tensor is zero or rank one.
RankBounds rank_bounds(const IntTensor3& t);

// Simultaneous change of basis on all three axes; each qj must be an
// invertible mj x mj integer matrix. Tensor rank and multilinear rank are
// preserved when the qj are invertible over Q.
IntTensor3 change_basis(const IntTensor3& t, const IntMatrix& q1,
                        const IntMatrix& q2, const IntMatrix& q3);

// Sum of the k rank-one terms.
IntTensor3 build_from_factors(const Shape& s, const FactorList& f);

// Reorder axes: output axis a carries input axis perm[a-1].
IntTensor3 permute_axes(const IntTensor3& t, const std::array<int, 3>& perm);

}  // namespace tenrank
