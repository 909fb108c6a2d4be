#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tenrank/exact_linalg.hpp"
#include "tenrank/tensor.hpp"

namespace tenrank {

struct ProbeConfig {
  unsigned trials = 3;
  std::int64_t entry_lo = -99;
  std::int64_t entry_hi = 99;
  unsigned prime_bits = 61;
  std::uint64_t seed = 0;

  void validate() const;
};

// min(k * (m1+m2+m3-2), m1*m2*m3): the rank the Jacobian attains at a
// generic point unless the secant is defective.
std::size_t expected_rank(const Shape& s, std::size_t k);

// One modular rank evaluation at a fresh random point.
struct TrialResult {
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;
  std::size_t rank = 0;
  std::uint64_t wall_time_ms = 0;
};

// Outcome of probing one k: r_hat is the max over trials, a certified lower
// bound on r(k). certified means r_hat == expected_rank (exact equality, by
// the one-sided modular argument). Probing stops early once certified;
// otherwise all trials run and unanimous says whether they agreed.
struct ProbePoint {
  std::size_t k = 0;
  std::size_t r_hat = 0;
  std::size_t expected = 0;
  bool certified = false;
  bool unanimous = true;
  std::vector<TrialResult> trials;
};

struct RankCurve {
  Shape shape;
  std::vector<ProbePoint> points;
};

// certified semantics: the estimate k* is exact-with-certificate when the
// ambient hit at k* is exact (always, one-sided) and either k* equals the
// proved lower bound, or every trial at k*-1 agreed on the same shortfall
// value. A unanimous shortfall is strong evidence, not proof, that k*-1 is
// defective; the flag records that nothing contradicted the estimate.
struct GrankVerdict {
  Shape shape;
  std::size_t grank_estimate = 0;
  bool certified = false;
  RankCurve curve;
  std::vector<std::size_t> defective_ks;
};

struct KClassification {
  std::size_t k = 0;
  bool small = false;
  bool big = false;
  bool defective = false;
  ProbePoint probe;
};

// Jacobian of the sum of k rank-one terms, size m1*m2*m3 x k*(m1+m2+m3).
// For term l the columns are, in axis order: e_p (x) x_{l,2} (x) x_{l,3}
// for p = 1..m1, then x_{l,1} (x) e_q (x) x_{l,3}, then x_{l,1} (x) x_{l,2}
// (x) e_r, each flattened in lexicographic entry order.
IntMatrix jacobian(const Shape& s, const FactorList& f);

// One trial: a fresh random point with entries in [entry_lo, entry_hi]
// (factor vectors redrawn if all zero) and a fresh prime of cfg.prime_bits
// bits. Deterministic given (cfg.seed, shape, k, trial_index): everything
// derives from derive_seed(cfg.seed, {m1, m2, m3, k, trial_index}).
TrialResult run_probe_trial(const Shape& s, std::size_t k,
                            const ProbeConfig& cfg, unsigned trial_index);

// Modular rank of the Jacobian, max over up to cfg.trials runs of
// run_probe_trial (stopping early once the expected rank is certified).
ProbePoint probe_r(const Shape& s, std::size_t k, const ProbeConfig& cfg);

// Scan k upward from grank_lower_bound until the probe fills the ambient
// space. Shapes with some dimension 1 are matrix spaces and bypass probing.
// The scan cannot pass min(max(m3, (m1-1)(m2-1)+1), m1*m2) for the sorted
// shape; hitting that cap without filling raises ResourceError.
GrankVerdict estimate_grank(const Shape& s, const ProbeConfig& cfg);

KClassification classify_k(const Shape& s, std::size_t k, const ProbeConfig& cfg);

// True when the dimension count is an exact integer k0 and k0 is small.
bool shape_is_perfect(const Shape& s, const ProbeConfig& cfg);

}  // namespace tenrank
