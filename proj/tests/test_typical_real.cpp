#include <doctest.h>

#include <string>

#include "tenrank/formulas.hpp"
#include "tenrank/rng.hpp"
#include "tenrank/serialize.hpp"
#include "tenrank/typical_real.hpp"

using namespace tenrank;

namespace {

IntMatrix combine(const SubspaceBasis& b, const std::vector<Int>& c) {
  IntMatrix sum(b.m, b.m);
  for (std::size_t t = 0; t < b.dim(); ++t)
    for (std::size_t i = 0; i < b.m * b.m; ++i)
      sum.data[i] += c[t] * b.matrices[t].data[i];
  return sum;
}

bool is_skew(const IntMatrix& x) {
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (x.at(i, j) != -x.at(j, i)) return false;
  return true;
}

}  // namespace

TEST_SUITE("typical_real") {

TEST_CASE("traceless symmetric basis spans the full space") {
  for (std::size_t m = 2; m <= 6; ++m) {
    const SubspaceBasis b = traceless_symmetric_basis(m);
    CHECK(b.m == m);
    CHECK(b.dim() == m * (m + 1) / 2 - 1);
    for (const auto& x : b.matrices) {
      Int tr = 0;
      for (std::size_t i = 0; i < m; ++i) {
        tr += x.at(i, i);
        for (std::size_t j = 0; j < m; ++j) CHECK(x.at(i, j) == x.at(j, i));
      }
      CHECK(tr == 0);
    }
    const AuditResult a = rank_one_free_check(SubspaceBasis{m, {}}, b);
    CHECK(a.symmetric_part_ok);
    CHECK(a.skew_part_ok);
    CHECK(a.independence_ok);
    CHECK(a.skew_method == "empty");
    CHECK(a.confidence == Confidence::Exact);
  }
  CHECK_THROWS_AS(traceless_symmetric_basis(1), std::invalid_argument);
}

TEST_CASE("quaternion matrices anticommute and square to minus one") {
  const SubspaceBasis b = quaternion_skew_basis(3);
  REQUIRE(b.dim() == 3);
  const IntMatrix id = IntMatrix::identity(4);
  IntMatrix two_id(4, 4);
  for (std::size_t i = 0; i < 4; ++i) two_id.at(i, i) = 2;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(is_skew(b.matrices[i]));
    CHECK(rational_rank(b.matrices[i]) == 4);
    for (std::size_t j = 0; j < 3; ++j) {
      const IntMatrix s = add(mul(b.matrices[i].transposed(), b.matrices[j]),
                              mul(b.matrices[j].transposed(), b.matrices[i]));
      CHECK(s == (i == j ? two_id : IntMatrix(4, 4)));
    }
  }
  CHECK(quaternion_skew_basis(1).dim() == 1);
  CHECK(quaternion_skew_basis(2).dim() == 2);
  CHECK_THROWS_AS(quaternion_skew_basis(0), std::invalid_argument);
  CHECK_THROWS_AS(quaternion_skew_basis(4), std::invalid_argument);
}

TEST_CASE("every nonzero quaternion combination has full rank") {
  const SubspaceBasis b = quaternion_skew_basis(3);
  Rng rng(51);
  int nonzero = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const std::vector<Int> c{rng.uniform(-9, 9), rng.uniform(-9, 9),
                             rng.uniform(-9, 9)};
    if (c[0] == 0 && c[1] == 0 && c[2] == 0) continue;
    ++nonzero;
    CHECK(rational_rank(combine(b, c)) == 4);
  }
  CHECK(nonzero > 900);
}

TEST_CASE("generic skew subspaces are reproducible and independent") {
  const SubspaceBasis a = generic_skew_subspace(5, 3, 7);
  const SubspaceBasis b = generic_skew_subspace(5, 3, 7);
  CHECK(a.dim() == 3);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(is_skew(a.matrices[t]));
    CHECK(a.matrices[t] == b.matrices[t]);
  }
  const SubspaceBasis c = generic_skew_subspace(5, 3, 8);
  CHECK(c.matrices[0] == c.matrices[0]);
  CHECK_FALSE(a.matrices[0] == c.matrices[0]);  // different seed, new draw
  CHECK(generic_skew_subspace(6, 6, 7).dim() == 6);
  CHECK_THROWS_AS(generic_skew_subspace(3, 0, 7), std::invalid_argument);
  CHECK_THROWS_AS(generic_skew_subspace(5, 2, 7), std::invalid_argument);
}

TEST_CASE("skew audit routes: orthogonality identity") {
  const SubspaceBasis sym = traceless_symmetric_basis(4);
  for (std::size_t l = 1; l <= 3; ++l) {
    const AuditResult a = rank_one_free_check(quaternion_skew_basis(l), sym);
    CHECK(a.passed());
    CHECK(a.skew_method == "orthogonality-identity");
    CHECK(a.confidence == Confidence::Exact);
  }
}

TEST_CASE("skew audit routes: pfaffian for a single 4x4 matrix") {
  const SubspaceBasis sym = traceless_symmetric_basis(4);
  const SubspaceBasis gen = generic_skew_subspace(4, 1, 9);
  const AuditResult good = rank_one_free_check(gen, sym);
  CHECK(good.passed());
  CHECK(good.skew_method == "pfaffian");
  CHECK(good.confidence == Confidence::Exact);

  // A degenerate skew matrix (zero pfaffian, rank 2) must be rejected.
  SubspaceBasis flat;
  flat.m = 4;
  IntMatrix x(4, 4);
  x.at(0, 1) = 1;
  x.at(1, 0) = -1;
  flat.matrices.push_back(std::move(x));
  const AuditResult bad = rank_one_free_check(flat, sym);
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(bad.skew_part_ok);
  CHECK(bad.skew_method == "pfaffian");
  CHECK(bad.symmetric_part_ok);
  CHECK(bad.independence_ok);
}

TEST_CASE("skew audit routes: sigma3 minimization is heuristic") {
  const SubspaceBasis sym = traceless_symmetric_basis(5);
  const SubspaceBasis gen = generic_skew_subspace(5, 3, 11);
  const AuditResult a = rank_one_free_check(gen, sym);
  CHECK(a.passed());
  CHECK(a.skew_method == "sigma3-minimization");
  CHECK(a.confidence == Confidence::Heuristic);
  CHECK(a.sigma3_min > 0.0);
  CHECK(a.sigma1_at_min > 0.0);
  CHECK(a.sigma3_min > 1e-6 * a.sigma1_at_min);
}

TEST_CASE("skew audit rejects bad parts") {
  const SubspaceBasis sym3 = traceless_symmetric_basis(3);
  SubspaceBasis skew3;
  skew3.m = 3;
  IntMatrix x(3, 3);
  x.at(0, 1) = 2;
  x.at(1, 0) = -2;
  skew3.matrices.push_back(std::move(x));
  const AuditResult small = rank_one_free_check(skew3, sym3);
  CHECK_FALSE(small.passed());
  CHECK(small.skew_method == "small-skew-has-rank-2");

  SubspaceBasis notskew;
  notskew.m = 4;
  notskew.matrices.push_back(IntMatrix::identity(4));
  const AuditResult ns = rank_one_free_check(notskew, traceless_symmetric_basis(4));
  CHECK_FALSE(ns.passed());
  CHECK(ns.skew_method == "not-skew");

  // A repeated matrix is dependent on itself.
  SubspaceBasis dup = quaternion_skew_basis(1);
  dup.matrices.push_back(dup.matrices[0]);
  const AuditResult dep = rank_one_free_check(dup, traceless_symmetric_basis(4));
  CHECK_FALSE(dep.independence_ok);
  CHECK_FALSE(dep.passed());

  // Dropping a symmetric basis vector breaks the dimension requirement.
  SubspaceBasis short_sym = traceless_symmetric_basis(4);
  short_sym.matrices.pop_back();
  const AuditResult sh = rank_one_free_check(SubspaceBasis{4, {}}, short_sym);
  CHECK_FALSE(sh.symmetric_part_ok);
  CHECK_FALSE(sh.passed());
}

TEST_CASE("gap certificates for small sizes are exact") {
  const GapCertificate c2 = build_gap_certificate(2, SkewSource::Generic, 1);
  CHECK(c2.shape == Shape(2, 2, 2));
  CHECK(c2.claimed_lower == 3);
  CHECK(c2.confidence == Confidence::Exact);
  CHECK(c2.skew_part.dim() == 0);
  CHECK(c2.audit.passed());

  const GapCertificate c3 = build_gap_certificate(3, SkewSource::Generic, 1);
  CHECK(c3.shape == Shape(3, 3, 5));
  CHECK(c3.claimed_lower == 6);
  CHECK(c3.confidence == Confidence::Exact);

  const GapCertificate q = build_gap_certificate(4, SkewSource::Quaternion, 1);
  CHECK(q.shape == Shape(4, 4, 12));
  CHECK(q.claimed_lower == 13);
  CHECK(q.confidence == Confidence::Exact);
  CHECK(q.audit.skew_method == "orthogonality-identity");

  const GapCertificate q2 = build_gap_certificate(4, SkewSource::Quaternion, 1, 2);
  CHECK(q2.shape == Shape(4, 4, 11));
  CHECK(q2.claimed_lower == 12);

  const GapCertificate g4 = build_gap_certificate(4, SkewSource::Generic, 5);
  CHECK(g4.shape == Shape(4, 4, 10));
  CHECK(g4.claimed_lower == 11);
  CHECK(g4.audit.skew_method == "pfaffian");
  CHECK(g4.confidence == Confidence::Exact);

  CHECK_THROWS_AS(build_gap_certificate(1, SkewSource::Generic, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_gap_certificate(5, SkewSource::Quaternion, 1),
                  std::invalid_argument);
}

TEST_CASE("a larger generic certificate is heuristic") {
  const GapCertificate g5 = build_gap_certificate(5, SkewSource::Generic, 3);
  CHECK(g5.shape == Shape(5, 5, 17));
  CHECK(g5.claimed_lower == 18);
  CHECK(g5.confidence == Confidence::Heuristic);
  CHECK(g5.audit.skew_method == "sigma3-minimization");
}

TEST_CASE("certificate slices are the basis matrices and beat the generic rank") {
  for (std::size_t m : {2ull, 3ull, 4ull}) {
    const GapCertificate c = build_gap_certificate(
        m, m == 4 ? SkewSource::Quaternion : SkewSource::Generic, 2);
    std::size_t s = 0;
    for (const auto* part : {&c.symmetric_part, &c.skew_part})
      for (const auto& x : part->matrices) {
        CHECK(slice(c.tensor, 3, s + 1) == x);
        ++s;
      }
    CHECK(s == c.shape.m3);
    // Each certificate claims exactly one more than the generic rank of its
    // shape, which the closed forms give independently.
    const auto kg = known_grank(c.shape);
    REQUIRE(kg.has_value());
    CHECK(c.claimed_lower == kg->value + 1);
  }
}

TEST_CASE("certificate json carries the audit and the evidence") {
  const GapCertificate q = build_gap_certificate(4, SkewSource::Quaternion, 1);
  const auto j = to_json(q);
  CHECK(j["shape"] == nlohmann::ordered_json({4, 4, 12}));
  CHECK(j["claimed_lower"] == 13);
  CHECK(j["confidence"] == "EXACT");
  CHECK(j["audit"]["symmetric_part_check"] == true);
  CHECK(j["audit"]["skew_part_check"] == true);
  CHECK(j["audit"]["independence_check"] == true);
  CHECK(j["audit"]["skew_method"] == "orthogonality-identity");
  CHECK_FALSE(j["audit"].contains("sigma3_min"));
  CHECK(j["basis"].size() == 12);
  CHECK(j["basis"][0].size() == 4);
  CHECK(tensor_from_json(j["tensor"]) == q.tensor);
  // The basis arrays mirror the axis-3 slices of the tensor.
  for (std::size_t s = 0; s < 12; ++s) {
    const IntMatrix sl = slice(q.tensor, 3, s + 1);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k)
        CHECK(int_from_json(j["basis"][s][i][k]) == sl.at(i, k));
  }
  // Emission is byte-stable.
  CHECK(j.dump() == to_json(build_gap_certificate(4, SkewSource::Quaternion, 1)).dump());

  const auto h = to_json(build_gap_certificate(5, SkewSource::Generic, 3));
  CHECK(h["confidence"] == "HEURISTIC");
  CHECK(h["audit"]["skew_method"] == "sigma3-minimization");
  CHECK(h["audit"]["sigma3_min"].get<double>() > 0.0);
  CHECK(h["audit"]["sigma1_at_min"].get<double>() > 0.0);
}

TEST_CASE("confidence labels") {
  CHECK(std::string(to_string(Confidence::Exact)) == "EXACT");
  CHECK(std::string(to_string(Confidence::Heuristic)) == "HEURISTIC");
}

}  // TEST_SUITE
