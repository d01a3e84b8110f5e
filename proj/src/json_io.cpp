#include "hecke/json_io.hpp"

#include <algorithm>
#include <regex>

namespace hecke {

using nlohmann::json;

json to_json(const HeckeElement& f) {
    std::vector<std::pair<std::string, json>> terms;
    for (const auto& [id, coeff] : f.terms()) {
        const auto& rep = f.pair()->coset(id).rep;
        terms.emplace_back(serialize(rep), json{{"rep", to_json(rep)}, {"coeff", to_string(coeff)}});
    }
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    json out = {{"basis", f.basis() == Basis::Chi ? "chi" : "phi"}, {"terms", json::array()}};
    for (auto& t : terms) out["terms"].push_back(std::move(t.second));
    return out;
}

HeckeElement hecke_element_from_json(const HeckePairPtr& pair, const json& j) {
    if (!j.is_object() || !j.contains("basis") || !j.contains("terms") || !j["terms"].is_array())
        fail(ErrorCode::ParseError, "Hecke element needs \"basis\" and a \"terms\" array");
    const auto basis_name = j["basis"].is_string() ? j["basis"].get<std::string>() : "";
    if (basis_name != "chi" && basis_name != "phi")
        fail(ErrorCode::ParseError, "basis must be \"chi\" or \"phi\"");
    const Basis basis = basis_name == "chi" ? Basis::Chi : Basis::Phi;
    HeckeElement out(pair, basis);
    for (const auto& term : j["terms"]) {
        if (!term.is_object() || !term.contains("rep") || !term.contains("coeff"))
            fail(ErrorCode::ParseError, "each term needs \"rep\" and \"coeff\"");
        const auto x = pair->group().from_json(term["rep"]);
        out += basis == Basis::Chi ? HeckeElement::chi(pair, x, rational_from_json(term["coeff"]))
                                   : HeckeElement::phi(pair, x, rational_from_json(term["coeff"]));
    }
    return out;
}

json lenient_parse(std::string_view text) {
    const std::string s(text);
    try {
        return json::parse(s);
    } catch (const json::parse_error&) {
    }
    // Quote bare n/d tokens, leaving string literals alone.
    static const std::regex token(R"(("[^"]*")|([-+]?\d+\s*/\s*\d+))");
    std::string quoted;
    std::size_t last = 0;
    for (auto it = std::sregex_iterator(s.begin(), s.end(), token); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        quoted += s.substr(last, m.position() - last);
        quoted += m[1].matched ? m.str() : "\"" + m.str() + "\"";
        last = m.position() + m.length();
    }
    quoted += s.substr(last);
    try {
        return json::parse(quoted);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::ParseError, "cannot parse '" + s + "': " + e.what());
    }
}

GroupElement parse_element(const Group& group, std::string_view text) { return group.from_json(lenient_parse(text)); }

std::vector<GroupElement> parse_elements(const Group& group, std::string_view text) {
    const auto j = lenient_parse(text);
    if (!j.is_array()) fail(ErrorCode::ParseError, "expected a JSON array of elements");
    std::vector<GroupElement> out;
    for (const auto& e : j) out.push_back(group.from_json(e));
    return out;
}

json to_json(const LevelQuotient& level, std::span<const GroupElement> window) {
    json w = json::array();
    for (const auto& y : window) w.push_back(to_json(y));
    json labels = json::array();
    for (const auto& y : level.table.window) labels.push_back(to_json(y));
    return {{"window", std::move(w)},
            {"saturated_window", std::move(labels)},
            {"size", level.size},
            {"rows", level.table.rows}};
}

}  // namespace hecke
