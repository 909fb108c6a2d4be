#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tenrank {

using Int = boost::multiprecision::cpp_int;

// Thrown when an exact computation would exceed its configured size cap.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense row-major matrix over the integers (arbitrary precision).
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  Int& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static IntMatrix identity(std::size_t n);
  IntMatrix transposed() const;

  bool operator==(const IntMatrix&) const = default;
};

IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix add(const IntMatrix& a, const IntMatrix& b);

// Dense row-major matrix over F_p. Invariants enforced on construction and
// kept by every operation: prime is a verified prime < 2^62 and every entry
// is a canonical residue in [0, prime).
struct FpMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> data;

  FpMatrix(std::size_t r, std::size_t c, std::uint64_t p);

  std::uint64_t& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  void set(std::size_t i, std::size_t j, std::uint64_t v);
};

// Modular helpers (p < 2^62, operands already reduced).
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_probable_prime(std::uint64_t n);

// Deterministic prime of exactly `bits` bits derived from `seed`.
// 30 <= bits <= 62.
std::uint64_t random_prime(unsigned bits, std::uint64_t seed);

// Entry-wise reduction to canonical residues (negative entries wrap).
FpMatrix reduce_mod(const IntMatrix& m, std::uint64_t prime);

// Rank by Gaussian elimination over F_p. Never exceeds the rank over Q of
// any integer lift; equals it for all but finitely many primes.
std::size_t fp_rank(FpMatrix m);

// Exact rank over Q via fraction-free (Bareiss) elimination. Intermediate
// entries are determinants of square submatrices of the input, which bounds
// their growth; `dim_cap` guards against misuse on large inputs.
std::size_t rational_rank(const IntMatrix& m, std::size_t dim_cap = 200);

}  // namespace tenrank
