#include "tenrank/formulas.hpp"

#include <algorithm>
#include <stdexcept>

namespace tenrank {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

Int factorial(std::size_t n) {
  Int f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::size_t isqrt(std::size_t n) {
  std::size_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

const char* to_string(ValueStatus s) {
  switch (s) {
    case ValueStatus::Proved: return "PROVED";
    case ValueStatus::Claimed: return "CLAIMED";
    case ValueStatus::Conjectured: return "CONJECTURED";
  }
  return "?";
}

std::size_t grank_lower_bound(const Shape& sh) {
  const Shape s = sh.canonical();
  std::size_t lb = ceil_div(s.ambient(), s.rank_one_dim());
  if (s.m1 >= 3 && s.m2 == s.m3 && s.m2 >= 4) lb = std::max(lb, s.m2 + 2);
  if (s.m1 == s.m2 && s.m1 >= 4) lb = std::max(lb, s.m1 + 2);
  if (s.m3 >= (s.m1 - 1) * (s.m2 - 1) + 1)
    lb = std::max(lb, std::min(s.m3, s.m1 * s.m2));
  return lb;
}

std::optional<KnownValue> known_grank(const Shape& sh) {
  const Shape s = sh.canonical();
  const std::size_t dim_count = ceil_div(s.ambient(), s.rank_one_dim());
  if (s.m3 >= (s.m1 - 1) * (s.m2 - 1) + 1)
    return KnownValue{std::min(s.m3, s.m1 * s.m2),
                      "unbalanced min(m3, m1*m2)", ValueStatus::Proved};
  if (s.m1 >= 3 && s.m3 == (s.m1 - 1) * (s.m2 - 1))
    return KnownValue{dim_count, "critical slab ceil(m1*m2*m3/(m1+m2+m3-2))",
                      ValueStatus::Proved};
  if (s.m1 == 3 && s.m2 == s.m3) {
    if (s.m2 % 2 == 0)
      return KnownValue{ceil_div(3 * s.m2 * s.m2, 2 * s.m2 + 1),
                        "three-slice even pair", ValueStatus::Proved};
    return KnownValue{ceil_div(3 * s.m2 * s.m2, 2 * s.m2 + 1) + 1,
                      "three-slice odd pair (dimension count plus one)",
                      ValueStatus::Proved};
  }
  if (s.m1 == 4 && s.m2 == s.m3)
    return KnownValue{ceil_div(4 * s.m2 * s.m2, 2 * s.m2 + 2),
                      "four-slice equal pair", ValueStatus::Proved};
  if (s.m1 == s.m2 && s.m2 == s.m3 && s.m1 != 3)
    return KnownValue{ceil_div(s.m1 * s.m1 * s.m1, 3 * s.m1 - 2),
                      "cube ceil(n^3/(3n-2))", ValueStatus::Proved};
  return std::nullopt;
}

std::optional<KnownValue> conjectured_grank(const Shape& sh) {
  const Shape s = sh.canonical();
  if (s.m1 < 3 || s.m3 > (s.m1 - 1) * (s.m2 - 1)) return std::nullopt;
  if (s.m1 == 3 && s.m2 == s.m3 && s.m2 % 2 == 1) return std::nullopt;
  return KnownValue{ceil_div(s.ambient(), s.rank_one_dim()),
                    "dimension count on the regular window",
                    ValueStatus::Conjectured};
}

std::optional<KnownValue> known_mrank(const Shape& sh) {
  const Shape s = sh.canonical();
  if (s.m1 * s.m2 <= s.m3)
    return KnownValue{s.m1 * s.m2, "tall shapes fill the slice span",
                      ValueStatus::Proved};
  if (s.m1 == 2)
    return KnownValue{s.m2 + std::min(s.m2, s.m3 / 2),
                      "two-slice normal form", ValueStatus::Proved};
  if (s.m1 == 3 && s.m2 == 3 && s.m3 == 3)
    return KnownValue{5, "reported 3x3x3 maximum", ValueStatus::Claimed};
  return std::nullopt;
}

std::vector<SubCeilingDefect> known_subceiling_defects(const Shape& sh) {
  const Shape s = sh.canonical();
  if (s == Shape(3, 4, 4)) return {{5, 44}};
  return {};
}

Int gamma(std::size_t k, std::size_t m, std::size_t n) {
  // The product form needs the larger dimension first; the count itself is
  // transpose-symmetric.
  if (m < n) std::swap(m, n);
  if (k < 1 || k > n)
    throw std::invalid_argument("gamma: need 1 <= k <= min(m, n)");
  Int num = 1, den = 1;
  for (std::size_t j = 0; j + k < n; ++j) {
    num *= factorial(m + j) * factorial(j);
    den *= factorial(k + j) * factorial(m - k + j);
  }
  Int q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) throw std::logic_error("gamma: product is not integral");
  return q;
}

std::size_t grank_upper_nmm(std::size_t n, std::size_t m) {
  if (n < 3 || m < 3)
    throw std::invalid_argument("grank_upper_nmm: need n, m >= 3");
  const std::size_t l = isqrt(n - 1);
  std::size_t best = static_cast<std::size_t>(-1);
  if (m >= 2 * l)
    best = std::min(best, (n / 2) * m + (n - 2 * (n / 2)) * (m - l));
  if (m < 2 * l && l < m - 1) best = std::min(best, n * (m - l));
  if (n >= (m - 1) * (m - 1) + 1) best = std::min(best, std::min(n, m * m));
  return best;
}

std::size_t mrank_upper_nmm(std::size_t n, std::size_t m) {
  if (n < 3 || m < 3)
    throw std::invalid_argument("mrank_upper_nmm: need n, m >= 3");
  const std::size_t l = isqrt(n - 1);
  std::size_t sum = 0;
  for (std::size_t i = 1; i <= l; ++i)
    sum += (2 * i - 1) * (m >= i - 1 ? m - i + 1 : 0);
  sum += (n - l * l) * (m > l ? m - l : 0);
  return sum;
}

std::vector<PerfectExpectation> perfectness_expectations(std::size_t max_dim) {
  std::vector<PerfectExpectation> out;
  auto push = [&out](const Shape& s, const std::string& family) {
    for (auto& e : out)
      if (e.shape == s) {
        e.family += "; " + family;
        return;
      }
    out.push_back({s, family});
  };
  for (std::size_t n = 2; n + 2 <= max_dim; ++n)
    if (n % 3 != 2) push(Shape(n, n, n + 2), "(n, n, n+2), n != 2 mod 3");
  for (std::size_t n = 3; n <= max_dim; n += 3)
    push(Shape(n - 1, n, n), "(n-1, n, n), 3 | n");
  for (std::size_t m1 = 2; m1 <= max_dim; ++m1)
    for (std::size_t m2 = m1; m2 <= max_dim; ++m2) {
      const std::size_t m3 = (m1 - 1) * (m2 - 1) + 1;
      if (m2 <= m3 && m3 <= max_dim)
        push(Shape(m1, m2, m3), "critical slab boundary");
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::array{a.shape.m1, a.shape.m2, a.shape.m3} <
           std::array{b.shape.m1, b.shape.m2, b.shape.m3};
  });
  return out;
}

}  // namespace tenrank
