#pragma once

#include "hecke/group.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hecke {

inline constexpr std::size_t kDefaultMaxIndex = 1'000'000;

using CosetId = std::size_t;

// An interned double coset HxH.
struct DoubleCoset {
    GroupElement rep;                       // first element presented for the class
    std::vector<GroupElement> transversal;  // HxH = disjoint union of z_i H
    std::uint64_t L = 0;                    // |HxH/H| = [H : H_x]
    std::uint64_t R = 0;                    // L(rep^-1)
    Rational delta;                         // L / R
};

struct CosetIndex {
    std::uint64_t L = 0;
    std::vector<GroupElement> reps;         // h_i in H, one per coset of H_x = H n xHx^-1
    std::vector<GroupElement> transversal;  // one representative per left coset in HxH
    std::vector<std::string> keys;          // left-coset normal forms, when the subgroup has them
};

class HeckePair;

// Distinct left cosets gH in discovery order. Uses the subgroup's coset normal
// form when present, otherwise pairwise membership tests.
class LeftCosetRegistry {
public:
    explicit LeftCosetRegistry(const HeckePair& pair) : pair_(&pair) {}

    std::optional<std::size_t> find(const GroupElement& g) const;
    // Returns (label, newly inserted).
    std::pair<std::size_t, bool> insert(const GroupElement& g);

    std::size_t size() const noexcept { return reps_.size(); }
    const GroupElement& rep(std::size_t label) const { return reps_.at(label); }
    const std::vector<GroupElement>& reps() const noexcept { return reps_; }

private:
    const HeckePair* pair_;
    std::vector<GroupElement> reps_;
    std::unordered_map<std::string, std::size_t> keys_;
};

struct OrbitResult {
    std::vector<GroupElement> words;   // acting element k_i with points[i] = k_i * start
    std::vector<GroupElement> points;  // one representative per left coset in the orbit
    std::vector<std::string> keys;     // serialized normal forms, when the subgroup has them
    bool overflow = false;
};

// Orbit of start*H under left multiplication by the group generated by
// `generators` (inverses are added). Stops with overflow once more than `cap`
// cosets are found. Without track_words, `words` stays empty and, when the
// subgroup has coset normal forms, points after the first are normal forms.
OrbitResult left_coset_orbit(const HeckePair& pair, const GroupElement& start,
                             std::span<const GroupElement> generators, std::size_t cap, bool track_words = true);

// A Hecke pair (G, H) together with its double-coset intern table.
//
// Interning operations (double_coset_of, hecke_L/R, delta) mutate the table
// and must be serialized per instance. Once no further classes are interned
// the pair can be shared freely between threads.
class HeckePair {
public:
    HeckePair(GroupPtr group, SubgroupDescriptor subgroup, std::size_t max_index = kDefaultMaxIndex);

    HeckePair(const HeckePair&) = delete;
    HeckePair& operator=(const HeckePair&) = delete;

    const Group& group() const noexcept { return *group_; }
    const GroupPtr& group_ptr() const noexcept { return group_; }
    const SubgroupDescriptor& subgroup() const noexcept { return subgroup_; }
    std::size_t max_index() const noexcept { return max_index_; }
    void set_max_index(std::size_t cap);

    // H generators with inverses, identity removed, duplicates removed.
    const std::vector<GroupElement>& symmetric_generators() const noexcept { return sym_generators_; }

    bool in_H(const GroupElement& g) const { return subgroup_.member(g); }
    bool same_left_coset(const GroupElement& x, const GroupElement& y) const;
    // Hash key of the left coset xH; only meaningful when H has coset labels.
    std::string left_coset_key(const GroupElement& x) const;

    // [H : H_x] by BFS over words in H's generators. Does not intern.
    CosetIndex index_and_transversal(const GroupElement& x, bool with_reps = true) const;

    std::uint64_t hecke_L(const GroupElement& x);
    std::uint64_t hecke_R(const GroupElement& x);
    Rational delta(const GroupElement& x);

    CosetId double_coset_of(const GroupElement& x);
    // Lookup without interning.
    std::optional<CosetId> find_double_coset(const GroupElement& x) const;
    const DoubleCoset& coset(CosetId id) const { return table_.at(id); }
    std::size_t coset_count() const noexcept { return table_.size(); }

    // t in T = {t : tHt^-1 contains H}.
    bool in_T(const GroupElement& t) const;

    // Searches products of at most `search_bound` candidates for s with s and
    // s*x in T; returns (s, s*x). Absence of a witness proves nothing.
    std::optional<std::pair<GroupElement, GroupElement>> directed_witness(
        const GroupElement& x, std::span<const GroupElement> candidates, std::size_t search_bound) const;

    // G_F = intersection of xHx^-1 over x in F (predicate only unless the
    // backend is finite or every x lies in H).
    SubgroupDescriptor conjugate_intersection(std::span<const GroupElement> F) const;

private:
    CosetId intern_without_inverse(const GroupElement& x);

    GroupPtr group_;
    SubgroupDescriptor subgroup_;
    std::size_t max_index_;
    std::vector<GroupElement> sym_generators_;

    std::vector<DoubleCoset> table_;
    std::unordered_map<std::string, CosetId> memo_;         // element key -> class
    std::unordered_map<std::string, CosetId> coset_keys_;   // left-coset key of a transversal member -> class
};

using HeckePairPtr = std::shared_ptr<HeckePair>;

// Subgroup of a finite group given by element indices. Validates closure.
SubgroupDescriptor finite_subgroup(std::shared_ptr<const FiniteGroup> group, std::vector<std::size_t> elements);

struct Reduction {
    HeckePairPtr pair;                 // the input pair itself when already reduced
    bool reduced = false;              // kernel was trivial
    std::vector<std::size_t> kernel;   // indices of ker theta in the input group
    std::vector<std::size_t> quotient_of;  // input index -> quotient index
};

// Quotient by ker theta = intersection of all conjugates of H (finite only).
Reduction core_reduce(const HeckePairPtr& pair);

}  // namespace hecke
