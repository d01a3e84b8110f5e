#pragma once

#include "hecke/coset_engine.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hecke {

// Restrictions of the left-translation action to a finite window of G/H.
// Labels 0..window.size()-1 are the window itself; later labels are cosets
// first seen as images, in discovery order.
struct RestrictionTable {
    std::vector<GroupElement> window;
    std::vector<GroupElement> labels;
    std::vector<std::vector<std::size_t>> rows;  // deduplicated, in discovery order
};

// Labels of x*y_i*H for each y_i in the window, resolved against (and
// extending) `labels`. The window must already be registered.
std::vector<std::size_t> theta_restrict(const HeckePair& pair, const GroupElement& x,
                                        std::span<const GroupElement> window, LeftCosetRegistry& labels);

// Convenience form with a fresh registry seeded by the window.
RestrictionTable theta_restrict(const HeckePair& pair, const GroupElement& x, std::span<const GroupElement> window);

// H*F as a list of distinct left-coset representatives (F first).
std::vector<GroupElement> saturate_window(const HeckePair& pair, std::span<const GroupElement> window);

// Number of distinct restrictions k|_F for k in the group generated by
// `generators`, i.e. [K : K n G_F]. IndexOverflow beyond the pair's cap.
std::uint64_t window_index(const HeckePair& pair, std::span<const GroupElement> generators,
                           std::span<const GroupElement> window, RestrictionTable* table = nullptr);

struct LevelQuotient {
    std::uint64_t size = 0;  // [H : H n G_{F'}] with F' = H*F
    RestrictionTable table;
};

LevelQuotient h_level_quotient(const HeckePair& pair, std::span<const GroupElement> window);

// mu(x G_F) = [G_F : H n G_F] / [H : H n G_F]; independent of x.
Rational haar_index(const HeckePair& pair, const GroupElement& x, std::span<const GroupElement> window);

struct OrbitSample {
    GroupElement s;
    GroupElement t;
    std::optional<std::uint64_t> size;  // empty on overflow
};

struct OrbitReport {
    std::vector<OrbitSample> samples;
    std::size_t cap = 0;
    bool all_finite() const;
};

// Orbit of tH under sHs^-1 for each sample, by BFS up to `cap` cosets.
OrbitReport hecke_group_check(const HeckePair& pair,
                              std::span<const std::pair<GroupElement, GroupElement>> samples, std::size_t cap);

}  // namespace hecke
