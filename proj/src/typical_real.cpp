#include "tenrank/typical_real.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tenrank/rng.hpp"

namespace tenrank {

const char* to_string(Confidence c) {
  return c == Confidence::Exact ? "EXACT" : "HEURISTIC";
}

SubspaceBasis traceless_symmetric_basis(std::size_t m) {
  if (m < 2)
    throw std::invalid_argument("traceless_symmetric_basis: need m >= 2");
  SubspaceBasis b;
  b.m = m;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    IntMatrix d(m, m);
    d.at(i, i) = 1;
    d.at(i + 1, i + 1) = -1;
    b.matrices.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      IntMatrix e(m, m);
      e.at(i, j) = 1;
      e.at(j, i) = 1;
      b.matrices.push_back(std::move(e));
    }
  return b;
}

SubspaceBasis quaternion_skew_basis(std::size_t l) {
  if (l < 1 || l > 3)
    throw std::invalid_argument("quaternion_skew_basis: l must be in {1,2,3}");
  static const int t1[4][4] = {
      {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
  static const int t2[4][4] = {
      {0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}};
  static const int t3[4][4] = {
      {0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}};
  const int(*tables[3])[4] = {t1, t2, t3};
  SubspaceBasis b;
  b.m = 4;
  for (std::size_t t = 0; t < l; ++t) {
    IntMatrix x(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) x.at(i, j) = tables[t][i][j];
    b.matrices.push_back(std::move(x));
  }
  return b;
}

namespace {

bool is_skew(const IntMatrix& x) {
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (x.at(i, j) != -x.at(j, i)) return false;
  return true;
}

bool is_symmetric(const IntMatrix& x) {
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (x.at(i, j) != x.at(j, i)) return false;
  return true;
}

Int trace(const IntMatrix& x) {
  Int t = 0;
  for (std::size_t i = 0; i < x.rows; ++i) t += x.at(i, i);
  return t;
}

bool is_zero(const IntMatrix& x) {
  return std::all_of(x.data.begin(), x.data.end(),
                     [](const Int& v) { return v == 0; });
}

// Stack the matrices as rows of a (count x m^2) matrix and compare exact
// rank with count.
bool independent(const std::vector<const SubspaceBasis*>& parts) {
  std::size_t count = 0, m = 0;
  for (const auto* p : parts) {
    count += p->dim();
    m = std::max(m, p->m);
  }
  if (count == 0) return true;
  IntMatrix stack(count, m * m);
  std::size_t r = 0;
  for (const auto* p : parts)
    for (const auto& x : p->matrices) {
      for (std::size_t i = 0; i < m * m; ++i) stack.at(r, i) = x.data[i];
      ++r;
    }
  return rational_rank(stack) == count;
}

// T_i^T T_j + T_j^T T_i == 2 kappa_i delta_ij I with kappa_i > 0. Any real
// combination B then satisfies B^T B = (sum c_i^2 kappa_i) I, so B is a
// positive multiple of an orthogonal matrix unless all c_i vanish.
bool orthogonality_identity(const SubspaceBasis& b) {
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = i; j < b.dim(); ++j) {
      const IntMatrix s = add(mul(b.matrices[i].transposed(), b.matrices[j]),
                              mul(b.matrices[j].transposed(), b.matrices[i]));
      if (i == j) {
        const Int kappa2 = s.at(0, 0);
        if (kappa2 <= 0) return false;
        IntMatrix expect(b.m, b.m);
        for (std::size_t d = 0; d < b.m; ++d) expect.at(d, d) = kappa2;
        if (!(s == expect)) return false;
      } else if (!is_zero(s)) {
        return false;
      }
    }
  return b.dim() > 0;
}

Int pfaffian4(const IntMatrix& a) {
  return a.at(0, 1) * a.at(2, 3) - a.at(0, 2) * a.at(1, 3) +
         a.at(0, 3) * a.at(1, 2);
}

struct Sigma3Stats {
  bool ok = true;
  double sigma3_min = 0.0;
  double sigma1_at_min = 0.0;
};

double sigma_ratio_target(const SubspaceBasis& b,
                          const std::vector<double>& c, double* s1, double* s3) {
  const std::size_t m = b.m;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t t = 0; t < b.dim(); ++t)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        sum(i, j) +=
            c[t] * b.matrices[t].at(i, j).convert_to<double>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sum);
  *s1 = svd.singularValues()(0);
  *s3 = svd.singularValues()(2);
  return *s3;
}

// Multi-start pattern search for the minimum of sigma_3 over the unit
// coefficient sphere. Skew matrices have even rank, so a combination with
// sigma_3 = 0 would have rank <= 2; a minimum safely above zero at every
// local optimum is the heuristic evidence of rank-2-freeness.
Sigma3Stats minimize_sigma3(const SubspaceBasis& b, std::uint64_t seed) {
  const std::size_t d = b.dim();
  Sigma3Stats stats;
  stats.sigma3_min = std::numeric_limits<double>::infinity();
  Rng rng(derive_seed(seed, {0x7369676d61ull, b.m, d}));
  auto normalize = [](std::vector<double>& c) {
    double n = 0;
    for (double v : c) n += v * v;
    n = std::sqrt(n);
    for (double& v : c) v /= n;
  };
  for (int start = 0; start < 64; ++start) {
    std::vector<double> c(d);
    do {
      for (auto& v : c) {
        // Box-Muller, deterministic through Rng.
        const double u1 = std::max(rng.unit_real(), 1e-300);
        const double u2 = rng.unit_real();
        v = std::sqrt(-2.0 * std::log(u1)) *
            std::cos(6.283185307179586 * u2);
      }
    } while (std::all_of(c.begin(), c.end(),
                         [](double v) { return v == 0.0; }));
    normalize(c);
    double s1 = 0, s3 = 0;
    double best = sigma_ratio_target(b, c, &s1, &s3);
    double best_s1 = s1;
    double step = 0.25;
    int evals = 0;
    while (step > 1e-10 && evals < 20000) {
      bool improved = false;
      for (std::size_t t = 0; t < d && !improved; ++t)
        for (double dir : {1.0, -1.0}) {
          std::vector<double> cand = c;
          cand[t] += dir * step;
          normalize(cand);
          const double val = sigma_ratio_target(b, cand, &s1, &s3);
          ++evals;
          if (val < best) {
            best = val;
            best_s1 = s1;
            c = std::move(cand);
            improved = true;
            break;
          }
        }
      if (!improved) step *= 0.5;
    }
    if (best < stats.sigma3_min) {
      stats.sigma3_min = best;
      stats.sigma1_at_min = best_s1;
    }
    if (best <= 1e-6 * best_s1) stats.ok = false;
  }
  return stats;
}

}  // namespace

SubspaceBasis generic_skew_subspace(std::size_t m, std::size_t dim,
                                    std::uint64_t seed) {
  if (m < 4) throw std::invalid_argument("generic_skew_subspace: need m >= 4");
  if (dim != (m - 2) * (m - 3) / 2)
    throw std::invalid_argument(
        "generic_skew_subspace: dim must be (m-2)(m-3)/2");
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Rng rng(derive_seed(seed, {0x736b6577ull, m, dim, attempt}));
    SubspaceBasis b;
    b.m = m;
    for (std::size_t t = 0; t < dim; ++t) {
      IntMatrix x(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
          const std::int64_t v = rng.uniform(-99, 99);
          x.at(i, j) = v;
          x.at(j, i) = -v;
        }
      if (is_zero(x)) {
        b.matrices.clear();
        break;
      }
      b.matrices.push_back(std::move(x));
    }
    if (b.dim() == dim && independent({&b})) return b;
  }
  throw std::runtime_error(
      "generic_skew_subspace: no independent draw within the retry budget");
}

AuditResult rank_one_free_check(const SubspaceBasis& skew,
                                const SubspaceBasis& symmetric_part) {
  AuditResult a;
  const std::size_t m = symmetric_part.m;
  a.symmetric_part_ok =
      m >= 2 && symmetric_part.dim() == m * (m + 1) / 2 - 1 &&
      std::all_of(symmetric_part.matrices.begin(),
                  symmetric_part.matrices.end(),
                  [](const IntMatrix& x) {
                    return is_symmetric(x) && trace(x) == 0;
                  }) &&
      independent({&symmetric_part});
  a.independence_ok = (skew.dim() == 0 || skew.m == m) &&
                      independent({&symmetric_part, &skew});
  const bool all_skew = std::all_of(skew.matrices.begin(), skew.matrices.end(),
                                    is_skew);
  if (skew.dim() == 0) {
    a.skew_part_ok = true;
    a.skew_method = "empty";
  } else if (!all_skew) {
    a.skew_part_ok = false;
    a.skew_method = "not-skew";
  } else if (skew.m < 4) {
    // Any nonzero skew matrix of size 2 or 3 has rank exactly 2.
    a.skew_part_ok = false;
    a.skew_method = "small-skew-has-rank-2";
  } else if (orthogonality_identity(skew)) {
    a.skew_part_ok = true;
    a.skew_method = "orthogonality-identity";
  } else if (skew.m == 4 && skew.dim() == 1) {
    a.skew_part_ok = pfaffian4(skew.matrices[0]) != 0;
    a.skew_method = "pfaffian";
  } else {
    const Sigma3Stats stats = minimize_sigma3(skew, 0x61756469ull);
    a.skew_part_ok = stats.ok;
    a.skew_method = "sigma3-minimization";
    a.sigma3_min = stats.sigma3_min;
    a.sigma1_at_min = stats.sigma1_at_min;
    a.confidence = Confidence::Heuristic;
  }
  if (a.skew_method != "sigma3-minimization") a.confidence = Confidence::Exact;
  return a;
}

GapCertificate build_gap_certificate(std::size_t m, SkewSource source,
                                     std::uint64_t seed,
                                     std::size_t quaternion_level) {
  if (m < 2) throw std::invalid_argument("build_gap_certificate: need m >= 2");
  GapCertificate cert;
  cert.symmetric_part = traceless_symmetric_basis(m);
  if (m >= 4) {
    if (source == SkewSource::Quaternion) {
      if (m != 4)
        throw std::invalid_argument(
            "build_gap_certificate: quaternion source needs m = 4");
      cert.skew_part = quaternion_skew_basis(quaternion_level);
    } else {
      cert.skew_part = generic_skew_subspace(m, (m - 2) * (m - 3) / 2, seed);
    }
  } else {
    cert.skew_part.m = m;
  }
  cert.audit = rank_one_free_check(cert.skew_part, cert.symmetric_part);
  if (!cert.audit.passed())
    throw std::runtime_error("build_gap_certificate: audit failed");
  cert.confidence = cert.audit.confidence;
  const std::size_t dim_l = cert.symmetric_part.dim() + cert.skew_part.dim();
  cert.shape = Shape(m, m, dim_l);
  cert.claimed_lower = dim_l + 1;
  cert.tensor = IntTensor3(cert.shape);
  std::size_t s = 0;
  for (const auto* part : {&cert.symmetric_part, &cert.skew_part})
    for (const auto& x : part->matrices) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) cert.tensor.at(i, j, s) = x.at(i, j);
      ++s;
    }
  return cert;
}

}  // namespace tenrank
