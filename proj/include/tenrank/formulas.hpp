#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tenrank/exact_linalg.hpp"
#include "tenrank/tensor.hpp"

namespace tenrank {

enum class ValueStatus { Proved, Claimed, Conjectured };

const char* to_string(ValueStatus s);

// A closed-form rank value together with the family it comes from and how
// firmly it is established.
struct KnownValue {
  std::size_t value = 0;
  std::string provenance;
  ValueStatus status = ValueStatus::Proved;
};

// Largest proved lower bound for the generic rank: the dimension count
// ceil(m1*m2*m3 / (m1+m2+m3-2)) improved by the equal-pair bound m+2 (for
// (l, m, m), l >= 3, m >= 4) and by the unbalanced value min(m3, m1*m2)
// when m3 >= (m1-1)(m2-1)+1. Shape order does not matter.
std::size_t grank_lower_bound(const Shape& s);

// Exact generic rank where a closed form is established. Covers: matrix-like
// shapes (some mi = 1), the unbalanced regime m3 >= (m1-1)(m2-1)+1, the
// critical slab m3 = (m1-1)(m2-1) with m1 >= 3, the families (3, m, m),
// (4, m, m) and the cubes (n, n, n), n != 3.
std::optional<KnownValue> known_grank(const Shape& s);

// The dimension-count value ceil(m1*m2*m3 / (m1+m2+m3-2)) for shapes inside
// the window 3 <= m1 <= m2 <= m3 <= (m1-1)(m2-1), excluding the exceptional
// equal-odd-pair family (3, 2p+1, 2p+1) where the generic rank is one higher.
std::optional<KnownValue> conjectured_grank(const Shape& s);

// Exact maximal rank where established: min(m3, m1*m2) when m1*m2 <= m3,
// the two-slice formula m2 + min(m2, floor(m3/2)) for m1 = 2, and the
// claimed value 5 for (3, 3, 3).
std::optional<KnownValue> known_mrank(const Shape& s);

// A k-secant strictly below the ceiling whose dimension is proved to fall
// short of the count min(k(m1+m2+m3-2), m1*m2*m3); rank is the exact value.
struct SubCeilingDefect {
  std::size_t k = 0;
  std::size_t rank = 0;
};

// Proved sub-ceiling secant defects, keyed by canonical shape. The one
// desk-scale case is (3, 4, 4) at k = 5 with rank 44 instead of 45: exact
// elimination reaches 44 at random integer points, and Strassen's commutator
// bound caps the 5-secant there, because five terms force
// rank(B adj(A) C - C adj(A) B) <= 2 on the three 4x4 slices A, B, C, a
// codimension-4 condition in the 48-dimensional ambient space.
std::vector<SubCeilingDefect> known_subceiling_defects(const Shape& s);

// Number of rank-k matrices (up to scale) in a generic linear subspace of
// dimension (m-k)(n-k)+1 of m x n matrices: with M = max(m, n), N = min(m, n),
// the product over j = 0 .. N-k-1 of (M+j)! j! / ((k+j)! (M-k+j)!).
Int gamma(std::size_t k, std::size_t m, std::size_t n);

// Upper bounds for shapes (n, m, m), n, m >= 3, from explicit slice
// decompositions. grank_upper_nmm takes the best applicable of three
// branches; mrank_upper_nmm is the staircase sum with l = floor(sqrt(n-1)).
std::size_t grank_upper_nmm(std::size_t n, std::size_t m);
std::size_t mrank_upper_nmm(std::size_t n, std::size_t m);

struct PerfectExpectation {
  Shape shape;
  std::string family;
};

// Shapes with all dimensions <= max_dim expected to be perfect (the
// dimension count is exact and divides evenly): (n, n, n+2) for n not
// congruent to 2 mod 3, (n-1, n, n) for n divisible by 3, and the critical
// slab boundary (m1, m2, (m1-1)(m2-1)+1).
std::vector<PerfectExpectation> perfectness_expectations(std::size_t max_dim);

}  // namespace tenrank
