#include "tenrank/exact_linalg.hpp"

#include <algorithm>
#include <utility>

#include "tenrank/rng.hpp"

namespace tenrank {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("mul: shape mismatch");
  IntMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

IntMatrix add(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("add: shape mismatch");
  IntMatrix c(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] + b.data[i];
  return c;
}

FpMatrix::FpMatrix(std::size_t r, std::size_t c, std::uint64_t p)
    : rows(r), cols(c), prime(p), data(r * c, 0) {
  if (p >= (1ull << 62) || !is_probable_prime(p))
    throw std::invalid_argument("FpMatrix: modulus must be a prime < 2^62");
}

void FpMatrix::set(std::size_t i, std::size_t j, std::uint64_t v) {
  data[i * cols + j] = v % prime;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::invalid_argument("invmod: zero element");
  return powmod(a, p - 2, p);
}

bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set decides primality exactly for every n < 3.3e24, far
  // beyond the 64-bit range.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(unsigned bits, std::uint64_t seed) {
  if (bits < 30 || bits > 62)
    throw std::invalid_argument("random_prime: bits must be in [30, 62]");
  Rng rng(derive_seed(seed, {0x7072696d65ull, bits}));
  const std::uint64_t half = 1ull << (bits - 1);
  for (;;) {
    std::uint64_t v = (half | rng.below(half)) | 1;
    if (is_probable_prime(v)) return v;
  }
}

FpMatrix reduce_mod(const IntMatrix& m, std::uint64_t prime) {
  FpMatrix r(m.rows, m.cols, prime);
  const Int p = prime;
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    Int v = m.data[i] % p;
    if (v < 0) v += p;
    r.data[i] = v.convert_to<std::uint64_t>();
  }
  return r;
}

std::size_t fp_rank(FpMatrix m) {
  const std::uint64_t p = m.prime;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t piv = rank;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank)
      for (std::size_t c = col; c < m.cols; ++c)
        std::swap(m.at(piv, c), m.at(rank, c));
    const std::uint64_t inv = invmod(m.at(rank, col), p);
    const std::uint64_t* src = &m.data[rank * m.cols];
    for (std::size_t r = rank + 1; r < m.rows; ++r) {
      std::uint64_t* dst = &m.data[r * m.cols];
      if (dst[col] == 0) continue;
      const std::uint64_t f = p - mulmod(dst[col], inv, p);
      for (std::size_t c = col; c < m.cols; ++c) {
        const std::uint64_t t = dst[c] + mulmod(f, src[c], p);
        dst[c] = t >= p ? t - p : t;
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t rational_rank(const IntMatrix& m, std::size_t dim_cap) {
  if (m.rows > dim_cap || m.cols > dim_cap)
    throw ResourceError("rational_rank: matrix exceeds dimension cap");
  IntMatrix a = m;
  Int prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols && rank < a.rows; ++col) {
    std::size_t piv = rank;
    while (piv < a.rows && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows) continue;
    if (piv != rank)
      for (std::size_t c = col; c < a.cols; ++c)
        std::swap(a.at(piv, c), a.at(rank, c));
    // Fraction-free update: every produced entry is a minor of the input, so
    // the division below is exact and growth stays polynomial. Entries in
    // columns that were skipped as all-zero stay zero under this update.
    const Int& pivot = a.at(rank, col);
    for (std::size_t r = rank + 1; r < a.rows; ++r) {
      const Int lead = a.at(r, col);
      for (std::size_t c = col + 1; c < a.cols; ++c)
        a.at(r, c) = (pivot * a.at(r, c) - lead * a.at(rank, c)) / prev;
      a.at(r, col) = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

}  // namespace tenrank
