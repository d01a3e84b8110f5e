#pragma once

#include "hecke/hecke_algebra.hpp"
#include "hecke/schlichting.hpp"

#include <json.hpp>

#include <string_view>
#include <vector>

namespace hecke {

// {"basis": "chi"|"phi", "terms": [{"rep": <element>, "coeff": "n/d"}, ...]},
// terms sorted by the serialized representative.
nlohmann::json to_json(const HeckeElement& f);
HeckeElement hecke_element_from_json(const HeckePairPtr& pair, const nlohmann::json& j);

// Element text as JSON. Bare rationals such as [1/2,0,0] are accepted and
// read as the quoted strings they stand for.
GroupElement parse_element(const Group& group, std::string_view text);
// A JSON array of elements, in the same lenient syntax.
std::vector<GroupElement> parse_elements(const Group& group, std::string_view text);

nlohmann::json lenient_parse(std::string_view text);

// {"window": [...], "size": k, "rows": [[label, ...], ...]}
nlohmann::json to_json(const LevelQuotient& level, std::span<const GroupElement> window);

}  // namespace hecke
