#include "hecke/corner.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hecke {

namespace {

std::shared_ptr<const FiniteGroup> finite_backend(const HeckePair& pair) {
    auto finite = std::dynamic_pointer_cast<const FiniteGroup>(pair.group_ptr());
    if (!finite) fail(ErrorCode::NotFinite, pair.group().name() + " is not a finite backend");
    return finite;
}

std::vector<std::size_t> generating_set(const FiniteGroup& G) {
    const std::size_t n = G.size();
    std::vector<char> generated(n, 0);
    generated[G.identity_index()] = 1;
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < n; ++i) {
        if (generated[i]) continue;
        gens.push_back(i);
        std::vector<std::size_t> frontier;
        for (std::size_t g = 0; g < n; ++g)
            if (generated[g]) frontier.push_back(g);
        while (!frontier.empty()) {
            std::vector<std::size_t> next;
            for (auto g : frontier)
                for (auto s : gens) {
                    auto h = G.product(g, s);
                    if (!generated[h]) {
                        generated[h] = 1;
                        next.push_back(h);
                    }
                }
            frontier = std::move(next);
        }
    }
    return gens;
}

std::uint64_t element_order(const FiniteGroup& G, std::size_t g) {
    std::uint64_t k = 1;
    for (std::size_t x = g; x != G.identity_index(); x = G.product(x, g)) ++k;
    return k;
}

}  // namespace

RegularRep::RegularRep(std::shared_ptr<const FiniteGroup> group) : group_(std::move(group)) {
    if (!group_) fail(ErrorCode::NotFinite, "regular representation needs a finite group");
    if (group_->size() > kMaxRegularOrder)
        fail(ErrorCode::IndexOverflow, "group order " + std::to_string(group_->size()) + " exceeds " +
                                           std::to_string(kMaxRegularOrder));
    perms_.assign(group_->size(), std::vector<std::size_t>(group_->size()));
    for (std::size_t g = 0; g < group_->size(); ++g)
        for (std::size_t h = 0; h < group_->size(); ++h) perms_[g][h] = group_->product(g, h);
}

RegularRep::RegularRep(const HeckePair& pair) : RegularRep(finite_backend(pair)) {}

RationalMatrix RegularRep::matrix_of(const GroupElement& g) const {
    const auto& perm = permutation(g.as<FiniteIndex>().index);
    RationalMatrix m(order(), order());
    for (std::size_t h = 0; h < order(); ++h) m(perm[h], h) = 1;
    return m;
}

RationalMatrix projection_p(const RegularRep& rep, const SubgroupDescriptor& H) {
    const std::size_t n = rep.order();
    const FiniteGroup& G = rep.group();
    std::vector<char> in_h(n);
    std::size_t order_h = 0;
    for (std::size_t g = 0; g < n; ++g)
        if ((in_h[g] = H.member(make_finite(g)) ? 1 : 0)) ++order_h;
    const Rational weight = ratio(1, order_h);
    RationalMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (in_h[G.product(i, G.inverse(j))]) p(i, j) = weight;
    return p;
}

bool fullness_test(const RegularRep& rep, const SubgroupDescriptor& H, Execution exec) {
    const RationalMatrix sum = kernels::conjugation_sum(rep, projection_p(rep, H), exec);
    return kernels::rank(sum, exec) == rep.order();
}

std::size_t corner_dimension(const RegularRep& rep, const SubgroupDescriptor& H, Execution exec) {
    return kernels::rank(kernels::corner_span(rep, projection_p(rep, H), exec), exec);
}

std::vector<DualCharacter> dual_group(const FiniteGroup& N) {
    if (!N.is_abelian()) fail(ErrorCode::NotAbelian, "dual group needs an abelian group");
    const std::size_t n = N.size();
    std::uint64_t modulus = 1;
    for (std::size_t g = 0; g < n; ++g) modulus = std::lcm(modulus, element_order(N, g));
    const auto gens = generating_set(N);

    std::vector<DualCharacter> out;
    std::vector<std::uint64_t> images(gens.size(), 0);
    while (true) {
        DualCharacter chi{modulus, std::vector<std::uint64_t>(n, 0)};
        std::vector<char> set(n, 0);
        set[N.identity_index()] = 1;
        std::vector<std::size_t> frontier{N.identity_index()};
        bool consistent = true;
        while (!frontier.empty() && consistent) {
            std::vector<std::size_t> next;
            for (auto g : frontier)
                for (std::size_t i = 0; i < gens.size() && consistent; ++i) {
                    auto h = N.product(g, gens[i]);
                    auto value = (chi.exponent[g] + images[i]) % modulus;
                    if (!set[h]) {
                        set[h] = 1;
                        chi.exponent[h] = value;
                        next.push_back(h);
                    } else if (chi.exponent[h] != value) {
                        consistent = false;
                    }
                }
            frontier = std::move(next);
        }
        if (consistent) out.push_back(std::move(chi));

        std::size_t pos = 0;
        while (pos < images.size() && ++images[pos] == modulus) images[pos++] = 0;
        if (pos == images.size()) break;
    }
    return out;
}

void validate_action(const FiniteGroup& N, const FiniteGroup& Q, const std::vector<std::vector<std::size_t>>& action) {
    const std::size_t n = N.size(), q = Q.size();
    if (action.size() != q) fail(ErrorCode::SpecInvalid, "action table needs one row per element of Q");
    for (std::size_t a = 0; a < q; ++a) {
        if (action[a].size() != n) fail(ErrorCode::SpecInvalid, "action row must list the image of every element of N");
        std::vector<char> hit(n, 0);
        for (auto v : action[a]) {
            if (v >= n || hit[v]) fail(ErrorCode::SpecInvalid, "action row is not a permutation of N");
            hit[v] = 1;
        }
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (action[a][N.product(x, y)] != N.product(action[a][x], action[a][y]))
                    fail(ErrorCode::SpecInvalid, "action of Q element " + std::to_string(a) + " is not a homomorphism");
    }
    for (std::size_t x = 0; x < n; ++x)
        if (action[Q.identity_index()][x] != x) fail(ErrorCode::SpecInvalid, "identity of Q must act trivially");
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            for (std::size_t x = 0; x < n; ++x)
                if (action[Q.product(a, b)][x] != action[a][action[b][x]])
                    fail(ErrorCode::SpecInvalid, "action is not compatible with the product of Q");
}

bool omega_is_full_dual(const FiniteGroup& N, const std::vector<std::size_t>& H, const FiniteGroup& Q,
                        const std::vector<std::vector<std::size_t>>& action) {
    for (auto h : H)
        if (h >= N.size()) fail(ErrorCode::SpecInvalid, "H element outside N");
    validate_action(N, Q, action);
    const auto dual = dual_group(N);

    std::vector<DualCharacter> annihilator;
    for (const auto& chi : dual)
        if (std::all_of(H.begin(), H.end(), [&](auto h) { return chi.exponent[h] == 0; })) annihilator.push_back(chi);

    std::set<DualCharacter> omega;
    for (std::size_t a = 0; a < Q.size(); ++a) {
        const auto& inverse_action = action[Q.inverse(a)];
        for (const auto& chi : annihilator) {
            DualCharacter moved{chi.modulus, std::vector<std::uint64_t>(N.size())};
            for (std::size_t x = 0; x < N.size(); ++x) moved.exponent[x] = chi.exponent[inverse_action[x]];
            omega.insert(std::move(moved));
        }
    }
    return omega.size() == dual.size();
}

}  // namespace hecke
