#pragma once

#include <json.hpp>

#include "tenrank/tensor.hpp"
#include "tenrank/typical_real.hpp"

namespace tenrank {

// JSON forms. Emission uses ordered_json so serialized output is stable
// byte-for-byte; parsing accepts any key order. Integer entries that fit in
// 64 bits are plain JSON numbers, larger ones are decimal strings.

nlohmann::ordered_json to_json(const Int& v);
Int int_from_json(const nlohmann::json& j);

// {"shape": [m1, m2, m3], "entries": [...]} with entries in lexicographic
// (i1, i2, i3) order.
nlohmann::ordered_json to_json(const IntTensor3& t);
IntTensor3 tensor_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const GapCertificate& c);

}  // namespace tenrank
