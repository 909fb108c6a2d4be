#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "tenrank/formulas.hpp"
#include "tenrank/serialize.hpp"
#include "tenrank/sweep.hpp"
#include "tenrank/terracini.hpp"
#include "tenrank/typical_real.hpp"

namespace {

using namespace tenrank;

Shape parse_shape(const std::string& text) {
  std::size_t m1 = 0, m2 = 0, m3 = 0;
  char sep1 = 0, sep2 = 0;
  if (std::sscanf(text.c_str(), "%zu%c%zu%c%zu", &m1, &sep1, &m2, &sep2, &m3) != 5 ||
      (sep1 != 'x' && sep1 != 'X') || (sep2 != 'x' && sep2 != 'X'))
    throw CLI::ValidationError("SHAPE", "expected M1xM2xM3, e.g. 3x3x3");
  return Shape(m1, m2, m3);
}

void parse_entry_range(const std::string& text, ProbeConfig& cfg) {
  long lo = 0, hi = 0;
  if (std::sscanf(text.c_str(), "%ld..%ld", &lo, &hi) != 2)
    throw CLI::ValidationError("--entry-range", "expected LO..HI, e.g. -99..99");
  cfg.entry_lo = lo;
  cfg.entry_hi = hi;
}

void add_probe_options(CLI::App* cmd, ProbeConfig& cfg, std::string& range_text) {
  cmd->add_option("--trials", cfg.trials, "random (point, prime) pairs per k")
      ->envname("TENRANK_TRIALS")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "master seed; all draws derive from it")
      ->envname("TENRANK_SEED")
      ->capture_default_str();
  cmd->add_option("--prime-bits", cfg.prime_bits, "bit size of probe primes")
      ->envname("TENRANK_PRIME_BITS")
      ->capture_default_str();
  cmd->add_option("--entry-range", range_text, "factor entry range LO..HI")
      ->envname("TENRANK_ENTRY_RANGE");
}

std::string describe(const KnownValue& kv) {
  return std::to_string(kv.value) + " [" + kv.provenance + ", " +
         to_string(kv.status) + "]";
}

int cmd_grank(const Shape& shape, const ProbeConfig& cfg) {
  const GrankVerdict v = estimate_grank(shape, cfg);
  std::cout << "shape " << v.shape.m1 << "x" << v.shape.m2 << "x" << v.shape.m3
            << "\n";
  std::cout << "probed grank " << v.grank_estimate
            << (v.certified ? " (certified fill)" : " (uncertified)") << "\n";
  for (const auto& p : v.curve.points)
    std::cout << "  k=" << p.k << " r=" << p.r_hat << "/" << p.expected
              << (p.r_hat == p.expected ? "" : " DEFECTIVE") << "\n";
  const auto formula = known_grank(shape);
  if (!formula) {
    std::cout << "formula grank: none known\n";
    const auto conj = conjectured_grank(shape);
    if (conj) std::cout << "conjectured grank " << describe(*conj) << "\n";
    return 0;
  }
  std::cout << "formula grank " << describe(*formula) << "\n";
  const bool mismatch = v.certified && formula->status == ValueStatus::Proved &&
                        formula->value != v.grank_estimate;
  std::cout << "agreement: " << (formula->value == v.grank_estimate ? "yes" : "NO")
            << "\n";
  return mismatch ? 2 : 0;
}

int cmd_bounds(const Shape& shape) {
  const Shape s = shape.canonical();
  std::cout << "shape " << s.m1 << "x" << s.m2 << "x" << s.m3 << "\n";
  std::cout << "grank lower " << grank_lower_bound(s) << "\n";
  std::size_t upper = std::min(std::max(s.m3, (s.m1 - 1) * (s.m2 - 1) + 1),
                               s.m1 * s.m2);
  if (s.m1 >= 3 && s.m2 == s.m3) upper = std::min(upper, grank_upper_nmm(s.m1, s.m2));
  if (s.m1 == s.m2 && s.m1 >= 3 && s.m3 >= 3)
    upper = std::min(upper, grank_upper_nmm(s.m3, s.m1));
  const auto kg = known_grank(s);
  if (kg && kg->status == ValueStatus::Proved) upper = std::min(upper, kg->value);
  std::cout << "grank upper " << upper << "\n";
  std::size_t mupper = s.m1 * s.m2;
  if (s.m1 >= 3 && s.m2 == s.m3) mupper = std::min(mupper, mrank_upper_nmm(s.m1, s.m2));
  if (s.m1 == s.m2 && s.m1 >= 3 && s.m3 >= 3)
    mupper = std::min(mupper, mrank_upper_nmm(s.m3, s.m1));
  std::cout << "mrank upper " << mupper << "\n";
  if (kg) std::cout << "known grank " << describe(*kg) << "\n";
  const auto conj = conjectured_grank(s);
  if (conj) std::cout << "conjectured grank " << describe(*conj) << "\n";
  const auto km = known_mrank(s);
  if (km) std::cout << "known mrank " << describe(*km) << "\n";
  return 0;
}

int cmd_gap(std::size_t m, const std::string& source_name, std::size_t level,
            std::uint64_t seed, const std::string& out_path) {
  SkewSource source;
  if (source_name == "quaternion") source = SkewSource::Quaternion;
  else if (source_name == "generic") source = SkewSource::Generic;
  else if (source_name.empty())
    source = (m == 4) ? SkewSource::Quaternion : SkewSource::Generic;
  else throw CLI::ValidationError("--source", "must be quaternion or generic");
  if (m < 4) source = SkewSource::Generic;  // no skew part is built anyway
  const GapCertificate cert = build_gap_certificate(m, source, seed, level);
  const std::string text = to_json(cert).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << text;
  }
  std::cerr << "shape " << cert.shape.m1 << "x" << cert.shape.m2 << "x"
            << cert.shape.m3 << ": real rank >= " << cert.claimed_lower
            << " > grank " << cert.claimed_lower - 1 << " ["
            << to_string(cert.confidence) << "]\n";
  return 0;
}

int cmd_verify(const SweepOptions& opt, const std::string& report_out) {
  const SweepReport rep = run_conjecture_sweep(opt);
  const std::string text = rep.to_json().dump(2) + "\n";
  std::cout << text;
  if (!report_out.empty()) {
    std::ofstream out(report_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + report_out);
    out << text;
  }
  std::cerr << "shapes " << rep.shapes.size() << ": regular " << rep.tally_regular
            << ", known exceptional " << rep.tally_known_exceptional
            << ", confirmed defects " << rep.tally_confirmed_defects
            << ", unbalanced agree " << rep.tally_unbalanced_agree
            << ", counterexample candidates " << rep.tally_candidates << "\n";
  for (const auto& d : rep.confirmed_defects)
    std::cerr << "confirmed defect: shape (" << d.shape.m1 << ", " << d.shape.m2
              << ", " << d.shape.m3 << ") k " << d.k << " rank " << d.r_hat
              << " below the count " << d.expected << "\n";
  return rep.tally_candidates > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact generic-rank probing and rank certificates for 3-tensors"};
  app.require_subcommand(1);

  std::string shape_text, range_text, cache_path, report_out, out_path, source;
  ProbeConfig cfg;
  SweepOptions sweep;
  std::size_t gamma_k = 0, gamma_m = 0, gamma_n = 0;
  std::size_t gap_m = 0, gap_level = 3;
  std::uint64_t gap_seed = 0;

  auto* grank = app.add_subcommand("grank", "probe the generic rank of SHAPE");
  grank->add_option("SHAPE", shape_text, "tensor shape M1xM2xM3")->required();
  add_probe_options(grank, cfg, range_text);

  auto* verify = app.add_subcommand(
      "verify-conjecture", "probe every shape up to --max-dim against the "
                           "dimension-count expectations");
  verify->add_option("--max-dim", sweep.max_dim, "largest dimension")
      ->envname("TENRANK_MAX_DIM")
      ->capture_default_str();
  add_probe_options(verify, sweep.probe, range_text);
  verify->add_option("--cache", sweep.cache_path, "JSONL cache for resume")
      ->envname("TENRANK_CACHE");
  verify->add_option("--jobs", sweep.jobs, "worker threads")
      ->envname("TENRANK_JOBS")
      ->capture_default_str();
  verify->add_flag("--deterministic", sweep.deterministic,
                   "pin timestamps and wall times for byte-stable output")
      ->envname("TENRANK_DETERMINISTIC");
  verify->add_option("--report-out", report_out, "also write the report here");

  auto* gamma_cmd = app.add_subcommand(
      "gamma", "count rank-K matrices in a generic subspace of M x N matrices "
               "of dimension (M-K)(N-K)+1");
  gamma_cmd->add_option("K", gamma_k)->required();
  gamma_cmd->add_option("M", gamma_m)->required();
  gamma_cmd->add_option("N", gamma_n)->required();

  auto* bounds = app.add_subcommand("bounds", "print rank bounds for SHAPE");
  bounds->add_option("SHAPE", shape_text, "tensor shape M1xM2xM3")->required();

  auto* gap = app.add_subcommand(
      "gap", "emit a certificate that the real typical rank of (M, M, (M-1)^2+1) "
             "shapes exceeds the complex generic rank");
  gap->add_option("M", gap_m, "matrix size")->required();
  gap->add_option("--source", source, "skew part: quaternion or generic");
  gap->add_option("--level", gap_level, "quaternion matrices to use (1-3)")
      ->capture_default_str();
  gap->add_option("--seed", gap_seed, "seed for the generic source")
      ->envname("TENRANK_SEED");
  gap->add_option("--out", out_path, "write the certificate JSON here");

  auto* report = app.add_subcommand("report", "rebuild a report from a cache");
  report->add_option("--cache", cache_path, "JSONL cache path")
      ->envname("TENRANK_CACHE")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!range_text.empty()) {
      parse_entry_range(range_text, cfg);
      parse_entry_range(range_text, sweep.probe);
    }
    if (grank->parsed()) return cmd_grank(parse_shape(shape_text), cfg);
    if (verify->parsed()) return cmd_verify(sweep, report_out);
    if (gamma_cmd->parsed()) {
      std::cout << gamma(gamma_k, gamma_m, gamma_n).str() << "\n";
      return 0;
    }
    if (bounds->parsed()) return cmd_bounds(parse_shape(shape_text));
    if (gap->parsed()) return cmd_gap(gap_m, source, gap_level, gap_seed, out_path);
    if (report->parsed()) {
      const SweepReport rep = report_from_records(load_cache(cache_path));
      std::cout << rep.to_json().dump(2) << "\n";
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
