#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "tenrank/tensor.hpp"
#include "tenrank/terracini.hpp"

namespace tenrank {

// One probe trial as persisted in the JSONL cache. status is CERTIFIED when
// the trial's rank hit the expected value, SHORTFALL otherwise.
struct SweepRecord {
  Shape shape;
  std::size_t k = 0;
  std::uint64_t prime = 0;
  std::uint64_t trial_seed = 0;
  std::size_t r_hat = 0;
  std::size_t expected = 0;
  std::string status;
  std::uint64_t wall_time_ms = 0;
  std::string timestamp;
};

struct SweepOptions {
  std::size_t max_dim = 8;
  ProbeConfig probe;
  std::string cache_path;  // empty disables persistence
  unsigned jobs = 1;
  // Zeroes wall_time_ms and pins timestamps to the epoch so cache files are
  // byte-identical across runs with the same master seed.
  bool deterministic = false;
};

struct CurvePoint {
  std::size_t k = 0;
  std::size_t r_hat = 0;
  std::size_t expected = 0;
  bool small = false;
  bool big = false;
  bool defective = false;
  std::string status;  // SMALL, BIG, SMALL+BIG or DEFECTIVE
};

// Per-shape outcome. Shapes inside the window m3 <= (m1-1)(m2-1) are judged
// against the dimension-count expectation for every k in [2, ceiling], with
// two proved deviations allowed: the equal-odd-pair family (3, 2p+1, 2p+1)
// must match its exceptional pattern (defective at the ceiling, filled one
// above), and a k listed in known_subceiling_defects must probe exactly the
// proved defective rank. Shapes beyond the window are judged against the
// closed form min(m3, m1*m2).
struct ShapeVerdict {
  Shape shape;
  std::string category;  // "window" or "unbalanced"
  std::size_t ceiling = 0;
  std::size_t expected_grank = 0;
  std::size_t probed_grank = 0;
  std::string verdict;  // REGULAR, KNOWN_EXCEPTIONAL, CONFIRMED_DEFECT,
                        // AGREES, COUNTEREXAMPLE_CANDIDATE or INCOMPLETE
  bool candidate = false;
  std::vector<CurvePoint> curve;
};

// A sub-ceiling probe that matched a proved defect instead of the dimension
// count. These break the every-k-small conjecture but need no investigation.
struct DefectFinding {
  Shape shape;
  std::size_t k = 0;
  std::size_t r_hat = 0;
  std::size_t expected = 0;
};

struct SweepReport {
  bool config_known = false;
  std::size_t max_dim = 0;
  ProbeConfig probe;
  std::vector<ShapeVerdict> shapes;
  std::size_t tally_regular = 0;
  std::size_t tally_known_exceptional = 0;
  std::size_t tally_confirmed_defects = 0;
  std::size_t tally_unbalanced_agree = 0;
  std::size_t tally_candidates = 0;
  std::size_t tally_incomplete = 0;
  std::vector<Shape> violations;
  std::vector<DefectFinding> confirmed_defects;

  nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json to_json(const SweepRecord& r);
SweepRecord record_from_json(const nlohmann::json& j);

// Parses a JSONL cache; unparseable lines (e.g. a truncated tail after an
// interrupt) are skipped, and duplicate trial seeds keep the first record.
std::vector<SweepRecord> load_cache(const std::string& path);

// Probes every sorted shape with 3 <= m1 <= m2 <= m3 <= max_dim. Completed
// trials found in the cache are reused instead of recomputed; new records
// are appended in canonical shape order by a single writer as shapes
// complete, so an interrupted run resumes where it left off and the final
// report is byte-identical to an uninterrupted one with the same seed.
SweepReport run_conjecture_sweep(const SweepOptions& opt);

// Rebuilds per-shape verdicts from cached records alone (no probing);
// shapes with missing k values come out INCOMPLETE.
SweepReport report_from_records(const std::vector<SweepRecord>& records);

}  // namespace tenrank
