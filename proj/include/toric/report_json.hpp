#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "toric/luna.hpp"
#include "toric/strata.hpp"

namespace toric {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct ConeInput {
  std::size_t rank = 0;
  std::vector<IntVector> rays;
  bool normalize = false;
};

/// {"schema":1, "rank":n, "rays":[[...],...], "normalize"?: bool}.
/// Syntax errors report the byte position; all failures throw InputError.
ConeInput parse_cone_file(const std::string& text);

/// {"schema":1, "free_rank":r, "torsion":[...], "weights":[[...],...]}.
/// Torsion must already be a divisibility chain and weights reduced.
WeightSystem parse_weight_file(const std::string& text);

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json to_json(const Integer& x);
Json to_json(const IntVector& v);
Json to_json(const IntegerMatrix& m);
Json to_json(const FgAbGroup& g);
Json to_json(const SubgroupHandle& s);
/// Ray or face positions, written 1-based.
Json positions_to_json(const std::vector<std::size_t>& idx);
Json to_json(const ConnectionVerdict& v);

/// Every field of the report, with 1-based ray, face and stratum numbers.
Json report_to_json(const StratificationReport& r);

/// Rebuilds a report from report_to_json output. Cones, subgroups and root
/// witnesses are revalidated; malformed input throws InputError.
StratificationReport report_from_json(const Json& j);

/// Two-space indented text with a trailing newline.
std::string dump_json(const Json& j);

}  // namespace toric
