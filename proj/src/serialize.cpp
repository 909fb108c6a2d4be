#include "tenrank/serialize.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace tenrank {

nlohmann::ordered_json to_json(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi)
    return nlohmann::ordered_json(v.convert_to<std::int64_t>());
  return nlohmann::ordered_json(v.str());
}

Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("int_from_json: expected integer or decimal string");
}

nlohmann::ordered_json to_json(const IntTensor3& t) {
  nlohmann::ordered_json j;
  j["shape"] = {t.shape.m1, t.shape.m2, t.shape.m3};
  auto entries = nlohmann::ordered_json::array();
  for (const Int& e : t.entries) entries.push_back(to_json(e));
  j["entries"] = std::move(entries);
  return j;
}

IntTensor3 tensor_from_json(const nlohmann::json& j) {
  const auto& sh = j.at("shape");
  if (!sh.is_array() || sh.size() != 3)
    throw std::invalid_argument("tensor_from_json: shape must have 3 entries");
  IntTensor3 t(Shape(sh[0].get<std::size_t>(), sh[1].get<std::size_t>(),
                     sh[2].get<std::size_t>()));
  const auto& entries = j.at("entries");
  if (entries.size() != t.entries.size())
    throw std::invalid_argument("tensor_from_json: entry count mismatch");
  for (std::size_t i = 0; i < t.entries.size(); ++i)
    t.entries[i] = int_from_json(entries[i]);
  return t;
}

nlohmann::ordered_json to_json(const GapCertificate& c) {
  nlohmann::ordered_json j;
  j["shape"] = {c.shape.m1, c.shape.m2, c.shape.m3};
  j["claimed_lower"] = c.claimed_lower;
  j["confidence"] = to_string(c.confidence);
  nlohmann::ordered_json audit;
  audit["symmetric_part_check"] = c.audit.symmetric_part_ok;
  audit["skew_part_check"] = c.audit.skew_part_ok;
  audit["independence_check"] = c.audit.independence_ok;
  audit["skew_method"] = c.audit.skew_method;
  if (c.audit.skew_method == "sigma3-minimization") {
    audit["sigma3_min"] = c.audit.sigma3_min;
    audit["sigma1_at_min"] = c.audit.sigma1_at_min;
  }
  j["audit"] = std::move(audit);
  auto basis = nlohmann::ordered_json::array();
  for (const auto* part : {&c.symmetric_part, &c.skew_part})
    for (const auto& x : part->matrices) {
      auto rows = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < x.rows; ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < x.cols; ++k) row.push_back(to_json(x.at(i, k)));
        rows.push_back(std::move(row));
      }
      basis.push_back(std::move(rows));
    }
  j["basis"] = std::move(basis);
  j["tensor"] = to_json(c.tensor);
  return j;
}

}  // namespace tenrank
