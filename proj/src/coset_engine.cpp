#include "hecke/coset_engine.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

namespace hecke {

namespace {

std::vector<GroupElement> symmetrize(const Group& group, std::span<const GroupElement> generators) {
    std::vector<GroupElement> out;
    std::unordered_set<std::string> seen;
    const auto e = group.identity();
    auto push = [&](const GroupElement& g) {
        if (g == e) return;
        if (seen.insert(serialize(g)).second) out.push_back(g);
    };
    for (const auto& g : generators) {
        push(g);
        push(group.invert(g));
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- registry

std::optional<std::size_t> LeftCosetRegistry::find(const GroupElement& g) const {
    if (pair_->subgroup().has_coset_labels()) {
        auto it = keys_.find(pair_->left_coset_key(g));
        if (it == keys_.end()) return std::nullopt;
        return it->second;
    }
    for (std::size_t i = 0; i < reps_.size(); ++i)
        if (pair_->same_left_coset(reps_[i], g)) return i;
    return std::nullopt;
}

std::pair<std::size_t, bool> LeftCosetRegistry::insert(const GroupElement& g) {
    if (pair_->subgroup().has_coset_labels()) {
        auto [it, fresh] = keys_.emplace(pair_->left_coset_key(g), reps_.size());
        if (fresh) reps_.push_back(g);
        return {it->second, fresh};
    }
    if (auto found = find(g)) return {*found, false};
    reps_.push_back(g);
    return {reps_.size() - 1, true};
}

OrbitResult left_coset_orbit(const HeckePair& pair, const GroupElement& start,
                             std::span<const GroupElement> generators, std::size_t cap, bool track_words) {
    const Group& G = pair.group();
    const SubgroupDescriptor& H = pair.subgroup();
    const auto gens = symmetrize(G, generators);
    const bool labelled = H.has_coset_labels();
    LeftCosetRegistry registry(pair);
    std::unordered_set<std::string> seen;
    OrbitResult out;
    // Records next (reached by `word`) if its coset is new; labelled subgroups
    // key by normal form.
    auto admit = [&](GroupElement next, std::optional<GroupElement> word) {
        if (labelled) {
            GroupElement label = H.canonicalize_coset(next);
            std::string key = serialize(label);
            if (!seen.insert(key).second) return false;
            out.keys.push_back(std::move(key));
            if (!track_words && !out.points.empty()) next = std::move(label);
        } else if (!registry.insert(next).second) {
            return false;
        }
        if (word) out.words.push_back(*std::move(word));
        out.points.push_back(std::move(next));
        return true;
    };
    admit(start, track_words ? std::optional(G.identity()) : std::nullopt);
    if (cap == 0) {
        out.overflow = true;
        return out;
    }
    for (std::size_t head = 0; head < out.points.size(); ++head) {
        for (const auto& g : gens) {
            std::optional<GroupElement> word;
            if (track_words) word = G.multiply(g, out.words[head]);
            if (!admit(G.multiply(g, out.points[head]), std::move(word))) continue;
            if (out.points.size() > cap) {
                out.overflow = true;
                return out;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- HeckePair

HeckePair::HeckePair(GroupPtr group, SubgroupDescriptor subgroup, std::size_t max_index)
    : group_(std::move(group)), subgroup_(std::move(subgroup)), max_index_(max_index) {
    if (!group_) fail(ErrorCode::SpecInvalid, "pair needs a group backend");
    if (!subgroup_.member) fail(ErrorCode::SpecInvalid, "subgroup needs a membership predicate");
    if (max_index_ < 1) fail(ErrorCode::SpecInvalid, "max_index must be at least 1");
    for (const auto& g : subgroup_.generators) {
        group_->require_backend(g);
        if (!subgroup_.member(g)) fail(ErrorCode::SpecInvalid, "generator " + serialize(g) + " is not in H");
    }
    if (!subgroup_.member(group_->identity())) fail(ErrorCode::SpecInvalid, "identity is not in H");
    sym_generators_ = symmetrize(*group_, subgroup_.generators);
}

void HeckePair::set_max_index(std::size_t cap) {
    if (cap < 1) fail(ErrorCode::SpecInvalid, "max_index must be at least 1");
    max_index_ = cap;
}

bool HeckePair::same_left_coset(const GroupElement& x, const GroupElement& y) const {
    if (subgroup_.has_coset_labels()) return left_coset_key(x) == left_coset_key(y);
    return subgroup_.member(group_->multiply(group_->invert(x), y));
}

std::string HeckePair::left_coset_key(const GroupElement& x) const {
    if (!subgroup_.has_coset_labels()) return serialize(x);
    return serialize(subgroup_.canonicalize_coset(x));
}

CosetIndex HeckePair::index_and_transversal(const GroupElement& x, bool with_reps) const {
    group_->require_backend(x);
    auto orbit = left_coset_orbit(*this, x, subgroup_.generators, max_index_, with_reps);
    if (orbit.overflow)
        fail(ErrorCode::IndexOverflow, "more than " + std::to_string(max_index_) + " cosets in H" +
                                           serialize(x) + "H");
    CosetIndex out;
    out.L = orbit.points.size();
    out.reps = std::move(orbit.words);
    out.transversal = std::move(orbit.points);
    out.keys = std::move(orbit.keys);
    return out;
}

std::uint64_t HeckePair::hecke_L(const GroupElement& x) { return table_[double_coset_of(x)].L; }

std::uint64_t HeckePair::hecke_R(const GroupElement& x) { return table_[double_coset_of(x)].R; }

Rational HeckePair::delta(const GroupElement& x) { return table_[double_coset_of(x)].delta; }

std::optional<CosetId> HeckePair::find_double_coset(const GroupElement& x) const {
    if (auto it = memo_.find(serialize(x)); it != memo_.end()) return it->second;
    if (subgroup_.has_coset_labels()) {
        if (auto it = coset_keys_.find(left_coset_key(x)); it != coset_keys_.end()) return it->second;
        return std::nullopt;
    }
    for (CosetId id = 0; id < table_.size(); ++id)
        for (const auto& z : table_[id].transversal)
            if (same_left_coset(z, x)) return id;
    return std::nullopt;
}

CosetId HeckePair::intern_without_inverse(const GroupElement& x) {
    auto index = index_and_transversal(x, false);
    DoubleCoset record{x, std::move(index.transversal), index.L, 0, Rational(0)};
    const CosetId id = table_.size();
    for (auto& key : index.keys) coset_keys_.emplace(std::move(key), id);
    memo_.emplace(serialize(x), id);
    table_.push_back(std::move(record));
    return id;
}

CosetId HeckePair::double_coset_of(const GroupElement& x) {
    if (auto found = find_double_coset(x)) {
        memo_.emplace(serialize(x), *found);
        return *found;
    }
    const std::size_t size_before = table_.size();
    const CosetId id = intern_without_inverse(x);
    const GroupElement inv = group_->invert(x);
    CosetId inv_id;
    try {
        auto found = find_double_coset(inv);
        inv_id = found ? *found : intern_without_inverse(inv);
    } catch (...) {
        // Roll back so every interned class keeps its inverse class and R.
        while (table_.size() > size_before) table_.pop_back();
        std::erase_if(memo_, [&](const auto& kv) { return kv.second >= size_before; });
        std::erase_if(coset_keys_, [&](const auto& kv) { return kv.second >= size_before; });
        throw;
    }
    memo_.emplace(serialize(inv), inv_id);
    table_[id].R = table_[inv_id].L;
    table_[inv_id].R = table_[id].L;
    for (CosetId c : {id, inv_id}) table_[c].delta = ratio(table_[c].L, table_[c].R);
    return id;
}

bool HeckePair::in_T(const GroupElement& t) const {
    const auto t_inv = group_->invert(t);
    return std::all_of(subgroup_.generators.begin(), subgroup_.generators.end(), [&](const auto& g) {
        return subgroup_.member(group_->multiply(group_->multiply(t_inv, g), t));
    });
}

std::optional<std::pair<GroupElement, GroupElement>> HeckePair::directed_witness(
    const GroupElement& x, std::span<const GroupElement> candidates, std::size_t search_bound) const {
    group_->require_backend(x);
    std::vector<GroupElement> layer{group_->identity()};
    std::unordered_set<std::string> seen{serialize(layer.front())};
    std::size_t visited = 1;
    for (std::size_t length = 0;; ++length) {
        for (const auto& s : layer) {
            GroupElement t = group_->multiply(s, x);
            if (in_T(s) && in_T(t)) return std::pair{s, std::move(t)};
        }
        if (length == search_bound) break;
        std::vector<GroupElement> next;
        for (const auto& s : layer)
            for (const auto& c : candidates) {
                GroupElement w = group_->multiply(s, c);
                if (!seen.insert(serialize(w)).second) continue;
                next.push_back(std::move(w));
                if (++visited > max_index_) return std::nullopt;
            }
        if (next.empty()) break;
        layer = std::move(next);
    }
    return std::nullopt;
}

SubgroupDescriptor HeckePair::conjugate_intersection(std::span<const GroupElement> F) const {
    if (F.empty()) fail(ErrorCode::SpecInvalid, "conjugate_intersection needs a nonempty window");
    for (const auto& x : F) group_->require_backend(x);
    if (std::all_of(F.begin(), F.end(), [&](const auto& x) { return in_H(x); })) return subgroup_;

    struct Conjugator {
        GroupElement x, x_inv;
    };
    std::vector<Conjugator> conj;
    for (const auto& x : F) conj.push_back({x, group_->invert(x)});
    SubgroupDescriptor out;
    out.member = [group = group_, member = subgroup_.member, conj](const GroupElement& g) {
        return std::all_of(conj.begin(), conj.end(), [&](const Conjugator& c) {
            return member(group->multiply(group->multiply(c.x_inv, g), c.x));
        });
    };
    if (group_->order()) {
        const auto e = group_->identity();
        for (const auto& g : group_->elements())
            if (g != e && out.member(g)) out.generators.push_back(g);
    }
    return out;
}

// ---------------------------------------------------------------- finite helpers

SubgroupDescriptor finite_subgroup(std::shared_ptr<const FiniteGroup> group, std::vector<std::size_t> elements) {
    const std::size_t n = group->size();
    std::vector<char> in(n, 0);
    for (auto i : elements) {
        if (i >= n) fail(ErrorCode::SpecInvalid, "subgroup element " + std::to_string(i) + " out of range");
        in[i] = 1;
    }
    if (!in[group->identity_index()]) fail(ErrorCode::SpecInvalid, "subgroup must contain the identity");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (in[a] && in[b] && !in[group->product(a, b)])
                fail(ErrorCode::SpecInvalid, "subgroup elements are not closed under the table");

    SubgroupDescriptor out;
    // Greedy generating set: keep an element only if it is outside the
    // subgroup generated so far.
    std::vector<char> generated(n, 0);
    generated[group->identity_index()] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in[i] || generated[i]) continue;
        out.generators.push_back(make_finite(i));
        bool grew = true;
        generated[i] = 1;
        while (grew) {
            grew = false;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (generated[a] && generated[b] && !generated[group->product(a, b)]) {
                        generated[group->product(a, b)] = 1;
                        grew = true;
                    }
        }
    }
    out.member = [in](const GroupElement& g) {
        auto idx = g.as<FiniteIndex>().index;
        return idx < in.size() && in[idx];
    };
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
        if (in[i]) members.push_back(i);
    out.canonicalize_coset = [group, members](const GroupElement& g) {
        auto idx = g.as<FiniteIndex>().index;
        std::size_t best = group->size();
        for (auto h : members) best = std::min(best, group->product(idx, h));
        return make_finite(best);
    };
    return out;
}

Reduction core_reduce(const HeckePairPtr& pair) {
    auto finite = std::dynamic_pointer_cast<const FiniteGroup>(pair->group_ptr());
    if (!finite) fail(ErrorCode::NotFinite, "core_reduce needs a finite backend");
    const std::size_t n = finite->size();

    Reduction out;
    for (std::size_t k = 0; k < n; ++k) {
        bool in_all = true;
        for (std::size_t x = 0; x < n && in_all; ++x) {
            auto conj = finite->product(finite->product(finite->inverse(x), k), x);
            in_all = pair->in_H(make_finite(conj));
        }
        if (in_all) out.kernel.push_back(k);
    }
    if (out.kernel.size() == 1) {
        out.pair = pair;
        out.reduced = true;
        out.quotient_of.resize(n);
        for (std::size_t i = 0; i < n; ++i) out.quotient_of[i] = i;
        return out;
    }

    // Label each element by the least index in its kernel coset.
    std::vector<std::size_t> label(n);
    for (std::size_t g = 0; g < n; ++g) {
        std::size_t best = n;
        for (auto k : out.kernel) best = std::min(best, finite->product(g, k));
        label[g] = best;
    }
    std::vector<std::size_t> classes = label;
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    auto pos = [&](std::size_t l) {
        return static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), l) - classes.begin());
    };
    out.quotient_of.resize(n);
    for (std::size_t g = 0; g < n; ++g) out.quotient_of[g] = pos(label[g]);

    const std::size_t m = classes.size();
    std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) table[i][j] = out.quotient_of[finite->product(classes[i], classes[j])];
    auto quotient = std::make_shared<const FiniteGroup>(std::move(table));

    std::vector<std::size_t> h_image;
    for (std::size_t g = 0; g < n; ++g)
        if (pair->in_H(make_finite(g))) h_image.push_back(out.quotient_of[g]);
    std::sort(h_image.begin(), h_image.end());
    h_image.erase(std::unique(h_image.begin(), h_image.end()), h_image.end());

    out.pair = std::make_shared<HeckePair>(quotient, finite_subgroup(quotient, std::move(h_image)),
                                           pair->max_index());
    return out;
}

}  // namespace hecke
