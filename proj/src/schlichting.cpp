#include "hecke/schlichting.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hecke {

namespace {

LeftCosetRegistry seeded_registry(const HeckePair& pair, std::span<const GroupElement> window) {
    LeftCosetRegistry labels(pair);
    for (const auto& y : window) {
        pair.group().require_backend(y);
        if (!labels.insert(y).second)
            fail(ErrorCode::SpecInvalid, "window lists the coset of " + serialize(y) + " twice");
    }
    return labels;
}

std::vector<GroupElement> with_inverses(const Group& G, std::span<const GroupElement> generators) {
    std::vector<GroupElement> out;
    for (const auto& g : generators) {
        out.push_back(g);
        out.push_back(G.invert(g));
    }
    return out;
}

}  // namespace

std::vector<std::size_t> theta_restrict(const HeckePair& pair, const GroupElement& x,
                                        std::span<const GroupElement> window, LeftCosetRegistry& labels) {
    const Group& G = pair.group();
    std::vector<std::size_t> row;
    row.reserve(window.size());
    for (const auto& y : window) row.push_back(labels.insert(G.multiply(x, y)).first);
    return row;
}

RestrictionTable theta_restrict(const HeckePair& pair, const GroupElement& x, std::span<const GroupElement> window) {
    auto labels = seeded_registry(pair, window);
    RestrictionTable table;
    table.window.assign(window.begin(), window.end());
    table.rows.push_back(theta_restrict(pair, x, window, labels));
    table.labels = labels.reps();
    return table;
}

std::vector<GroupElement> saturate_window(const HeckePair& pair, std::span<const GroupElement> window) {
    auto labels = seeded_registry(pair, window);
    for (const auto& y : window) {
        auto orbit = left_coset_orbit(pair, y, pair.subgroup().generators, pair.max_index(), false);
        if (orbit.overflow) fail(ErrorCode::IndexOverflow, "H-orbit of " + serialize(y) + "H exceeds the cap");
        for (const auto& p : orbit.points) {
            labels.insert(p);
            if (labels.size() > pair.max_index())
                fail(ErrorCode::IndexOverflow, "saturated window exceeds the cap");
        }
    }
    return labels.reps();
}

std::uint64_t window_index(const HeckePair& pair, std::span<const GroupElement> generators,
                           std::span<const GroupElement> window, RestrictionTable* table) {
    const Group& G = pair.group();
    const auto gens = with_inverses(G, generators);
    auto labels = seeded_registry(pair, window);

    std::vector<std::vector<GroupElement>> points{{window.begin(), window.end()}};
    std::vector<std::vector<std::size_t>> rows;
    rows.emplace_back();
    for (std::size_t i = 0; i < window.size(); ++i) rows.back().push_back(i);
    std::set<std::vector<std::size_t>> seen{rows.back()};

    for (std::size_t head = 0; head < points.size(); ++head) {
        for (const auto& g : gens) {
            std::vector<GroupElement> moved;
            std::vector<std::size_t> row;
            moved.reserve(window.size());
            for (const auto& p : points[head]) {
                moved.push_back(G.multiply(g, p));
                row.push_back(labels.insert(moved.back()).first);
            }
            if (!seen.insert(row).second) continue;
            rows.push_back(std::move(row));
            points.push_back(std::move(moved));
            if (points.size() > pair.max_index())
                fail(ErrorCode::IndexOverflow, "more than " + std::to_string(pair.max_index()) +
                                                   " distinct restrictions on the window");
        }
    }
    if (table) {
        table->window.assign(window.begin(), window.end());
        table->labels = labels.reps();
        table->rows = std::move(rows);
    }
    return points.size();
}

LevelQuotient h_level_quotient(const HeckePair& pair, std::span<const GroupElement> window) {
    const auto saturated = saturate_window(pair, window);
    LevelQuotient out;
    out.size = window_index(pair, pair.subgroup().generators, saturated, &out.table);
    return out;
}

Rational haar_index(const HeckePair& pair, const GroupElement& x, std::span<const GroupElement> window) {
    const Group& G = pair.group();
    G.require_backend(x);
    if (window.empty()) fail(ErrorCode::SpecInvalid, "haar_index needs a nonempty window");

    const auto& h_gens = pair.subgroup().generators;
    const std::uint64_t h_index = window_index(pair, h_gens, window);

    // G_F sits inside K = f H f^-1 for the first f in F, so
    // [G_F : H n G_F] = [K : G_{F u {e}}] / [K : G_F].
    const GroupElement& f = window.front();
    std::vector<GroupElement> k_gens;
    for (const auto& g : h_gens) k_gens.push_back(G.conjugate(g, f));

    std::vector<GroupElement> extended(window.begin(), window.end());
    LeftCosetRegistry probe(pair);
    for (const auto& y : window) probe.insert(y);
    if (!probe.find(G.identity())) extended.push_back(G.identity());

    const std::uint64_t k_full = window_index(pair, k_gens, extended);
    const std::uint64_t k_window = window_index(pair, k_gens, window);
    if (k_full % k_window != 0)
        fail(ErrorCode::IndexOverflow, "inconsistent indices; window exceeds what the cap can resolve");
    return ratio(k_full / k_window, h_index);
}

bool OrbitReport::all_finite() const {
    return std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.size.has_value(); });
}

OrbitReport hecke_group_check(const HeckePair& pair,
                              std::span<const std::pair<GroupElement, GroupElement>> samples, std::size_t cap) {
    const Group& G = pair.group();
    OrbitReport report;
    report.cap = cap;
    for (const auto& [s, t] : samples) {
        G.require_backend(s);
        G.require_backend(t);
        std::vector<GroupElement> gens;
        for (const auto& g : pair.subgroup().generators) gens.push_back(G.conjugate(g, s));
        auto orbit = left_coset_orbit(pair, t, gens, cap, false);
        OrbitSample sample{s, t, std::nullopt};
        if (!orbit.overflow) sample.size = orbit.points.size();
        report.samples.push_back(std::move(sample));
    }
    return report;
}

}  // namespace hecke
