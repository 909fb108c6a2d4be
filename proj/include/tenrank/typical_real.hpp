#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tenrank/exact_linalg.hpp"
#include "tenrank/tensor.hpp"

namespace tenrank {

// A list of linearly independent m x m integer matrices.
struct SubspaceBasis {
  std::size_t m = 0;
  std::vector<IntMatrix> matrices;

  std::size_t dim() const { return matrices.size(); }
};

enum class Confidence { Exact, Heuristic };

const char* to_string(Confidence c);

// Outcome of auditing a combined symmetric + skew basis for freedom from
// rank-one matrices. FAIL (passed() == false) is a result, not an error.
struct AuditResult {
  bool symmetric_part_ok = false;
  bool skew_part_ok = false;
  bool independence_ok = false;
  Confidence confidence = Confidence::Exact;
  // How the skew part was certified rank-2-free: "empty",
  // "orthogonality-identity", "pfaffian" or "sigma3-minimization".
  std::string skew_method;
  double sigma3_min = 0.0;
  double sigma1_at_min = 0.0;

  bool passed() const {
    return symmetric_part_ok && skew_part_ok && independence_ok;
  }
};

enum class SkewSource { Quaternion, Generic };

// A tensor whose real rank provably exceeds the complex generic rank of its
// shape: the axis-3 slices span a subspace of R^{m x m} of dimension
// claimed_lower - 1 that contains no real rank-one matrix, so any subspace
// spanned by rank-one matrices that contains the slice span is strictly
// larger.
struct GapCertificate {
  Shape shape;
  IntTensor3 tensor;
  std::size_t claimed_lower = 0;
  SubspaceBasis symmetric_part;
  SubspaceBasis skew_part;
  AuditResult audit;
  Confidence confidence = Confidence::Exact;
};

// Basis of the trace-zero symmetric m x m matrices: E_ii - E_{i+1,i+1} for
// i < m and E_ij + E_ji for i < j. Dimension m(m+1)/2 - 1. No nonzero
// member is rank one: a symmetric rank-one matrix is +-xx^T with trace
// +-|x|^2 != 0.
SubspaceBasis traceless_symmetric_basis(std::size_t m);

// The first l of the three fixed skew 4x4 matrices T1, T2, T3 satisfying
// Ti^T Tj + Tj^T Ti = 2 delta_ij I, so every nonzero real combination is a
// multiple of an orthogonal matrix (rank 4). l in {1, 2, 3}.
SubspaceBasis quaternion_skew_basis(std::size_t l);

// dim random skew m x m matrices with entries in [-99, 99], redrawn (bounded)
// until linearly independent and nonzero. dim must be (m-2)(m-3)/2, the
// largest dimension for which a generic skew subspace avoids rank-2 matrices.
SubspaceBasis generic_skew_subspace(std::size_t m, std::size_t dim,
                                    std::uint64_t seed);

// Audit that span(symmetric_part + skew) contains no real rank-one matrix.
// The symmetric side is unconditional (trace argument) once the part is
// verified symmetric, traceless, independent and of full dimension
// m(m+1)/2 - 1. The skew side needs rank-2-freeness: exact routes are an
// empty part, the pairwise orthogonality identity, and the Pfaffian for a
// single 4x4 matrix; otherwise sigma_3 minimization over the coefficient
// sphere gives a HEURISTIC pass (min sigma3 > 1e-6 * sigma1 at every local
// optimum found from 64 starts).
AuditResult rank_one_free_check(const SubspaceBasis& skew,
                                const SubspaceBasis& symmetric_part);

// Certificate for shape (m, m, dim L) where L = traceless symmetric + skew
// part: quaternion level l gives dim L = m(m+1)/2 - 1 + l (m = 4 only),
// generic gives dim L = (m-1)^2 + 1, and m in {2, 3} need no skew part.
// claimed_lower = dim L + 1. Throws if the audit fails.
GapCertificate build_gap_certificate(std::size_t m, SkewSource source,
                                     std::uint64_t seed,
                                     std::size_t quaternion_level = 3);

}  // namespace tenrank
