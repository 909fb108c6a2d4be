#include "tenrank/terracini.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "tenrank/formulas.hpp"
#include "tenrank/rng.hpp"

namespace tenrank {

void ProbeConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("ProbeConfig: trials must be >= 1");
  if (entry_lo >= entry_hi)
    throw std::invalid_argument("ProbeConfig: entry_lo must be < entry_hi");
  if (prime_bits < 30 || prime_bits > 62)
    throw std::invalid_argument("ProbeConfig: prime_bits must be in [30, 62]");
}

std::size_t expected_rank(const Shape& s, std::size_t k) {
  return std::min(k * s.rank_one_dim(), s.ambient());
}

IntMatrix jacobian(const Shape& s, const FactorList& f) {
  f.validate_for(s);
  const std::size_t cols_per_term = s.m1 + s.m2 + s.m3;
  IntMatrix j(s.ambient(), f.k() * cols_per_term);
  for (std::size_t l = 0; l < f.k(); ++l) {
    const auto& x1 = f.terms[l][0];
    const auto& x2 = f.terms[l][1];
    const auto& x3 = f.terms[l][2];
    std::size_t col = l * cols_per_term;
    for (std::size_t p = 0; p < s.m1; ++p, ++col)
      for (std::size_t i2 = 0; i2 < s.m2; ++i2)
        for (std::size_t i3 = 0; i3 < s.m3; ++i3)
          j.at((p * s.m2 + i2) * s.m3 + i3, col) = x2[i2] * x3[i3];
    for (std::size_t q = 0; q < s.m2; ++q, ++col)
      for (std::size_t i1 = 0; i1 < s.m1; ++i1)
        for (std::size_t i3 = 0; i3 < s.m3; ++i3)
          j.at((i1 * s.m2 + q) * s.m3 + i3, col) = x1[i1] * x3[i3];
    for (std::size_t r = 0; r < s.m3; ++r, ++col)
      for (std::size_t i1 = 0; i1 < s.m1; ++i1)
        for (std::size_t i2 = 0; i2 < s.m2; ++i2)
          j.at((i1 * s.m2 + i2) * s.m3 + r, col) = x1[i1] * x2[i2];
  }
  return j;
}

namespace {

std::vector<Int> random_nonzero_vector(Rng& rng, std::size_t len,
                                       std::int64_t lo, std::int64_t hi) {
  std::vector<Int> v(len);
  for (;;) {
    bool nonzero = false;
    for (auto& e : v) {
      const std::int64_t draw = rng.uniform(lo, hi);
      e = draw;
      nonzero = nonzero || draw != 0;
    }
    if (nonzero) return v;
  }
}

}  // namespace

TrialResult run_probe_trial(const Shape& s, std::size_t k,
                            const ProbeConfig& cfg, unsigned trial_index) {
  cfg.validate();
  if (k < 1) throw std::invalid_argument("run_probe_trial: k must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t trial_seed =
      derive_seed(cfg.seed, {s.m1, s.m2, s.m3, k, trial_index});
  const std::uint64_t prime =
      random_prime(cfg.prime_bits, derive_seed(trial_seed, {0x70ull}));
  Rng rng(derive_seed(trial_seed, {0x78ull}));
  FactorList f;
  f.terms.resize(k);
  for (std::size_t l = 0; l < k; ++l)
    for (int j = 0; j < 3; ++j)
      f.terms[l][j] =
          random_nonzero_vector(rng, s.dim(j + 1), cfg.entry_lo, cfg.entry_hi);
  const std::size_t r = fp_rank(reduce_mod(jacobian(s, f), prime));
  const auto stop = std::chrono::steady_clock::now();
  return TrialResult{
      trial_seed, prime, r,
      static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::milliseconds>(stop - start)
              .count())};
}

ProbePoint probe_r(const Shape& s, std::size_t k, const ProbeConfig& cfg) {
  cfg.validate();
  if (k < 1) throw std::invalid_argument("probe_r: k must be >= 1");
  ProbePoint point;
  point.k = k;
  point.expected = expected_rank(s, k);
  for (unsigned t = 0; t < cfg.trials; ++t) {
    TrialResult trial = run_probe_trial(s, k, cfg, t);
    if (!point.trials.empty() && trial.rank != point.trials.front().rank)
      point.unanimous = false;
    point.r_hat = std::max(point.r_hat, trial.rank);
    point.trials.push_back(std::move(trial));
    if (point.r_hat == point.expected) break;
  }
  point.certified = point.r_hat == point.expected;
  return point;
}

GrankVerdict estimate_grank(const Shape& sh, const ProbeConfig& cfg) {
  cfg.validate();
  const Shape s = sh.canonical();
  GrankVerdict v;
  v.shape = s;
  v.curve.shape = s;
  if (s.m1 == 1) {
    v.grank_estimate = s.m2;
    v.certified = true;
    return v;
  }
  const std::size_t start = grank_lower_bound(s);
  const std::size_t cap =
      std::min(std::max(s.m3, (s.m1 - 1) * (s.m2 - 1) + 1), s.m1 * s.m2);
  for (std::size_t k = start;; ++k) {
    if (k > cap)
      throw ResourceError("estimate_grank: no fill up to the search cap");
    ProbePoint point = probe_r(s, k, cfg);
    const bool filled = point.r_hat == s.ambient();
    if (point.r_hat < point.expected) v.defective_ks.push_back(k);
    v.curve.points.push_back(std::move(point));
    if (filled) {
      v.grank_estimate = k;
      const auto& pts = v.curve.points;
      v.certified = k == start ||
                    (pts.size() >= 2 && pts[pts.size() - 2].unanimous &&
                     pts[pts.size() - 2].trials.size() >= cfg.trials);
      return v;
    }
  }
}

KClassification classify_k(const Shape& sh, std::size_t k,
                           const ProbeConfig& cfg) {
  const Shape s = sh.canonical();
  KClassification c;
  c.k = k;
  c.probe = probe_r(s, k, cfg);
  c.small = c.probe.r_hat == k * s.rank_one_dim() &&
            k * s.rank_one_dim() <= s.ambient();
  c.big = c.probe.r_hat == s.ambient();
  c.defective = c.probe.r_hat < c.probe.expected;
  return c;
}

bool shape_is_perfect(const Shape& sh, const ProbeConfig& cfg) {
  const Shape s = sh.canonical();
  if (s.ambient() % s.rank_one_dim() != 0) return false;
  return classify_k(s, s.ambient() / s.rank_one_dim(), cfg).small;
}

}  // namespace tenrank
