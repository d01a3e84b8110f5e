#pragma once

// Generators and independent oracles shared by the unit and acceptance tests.
// Oracles here never call the coset engine.

#include "hecke/catalog.hpp"
#include "hecke/corner.hpp"
#include "hecke/hecke_algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace hecke::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1)); }

    Rational rational(long max_num, long max_den) { return make_rational(integer(-max_num, max_num), integer(1, max_den)); }
    Rational nonzero_rational(long max_num, long max_den) {
        Rational r = 0;
        while (r == 0) r = rational(max_num, max_den);
        return r;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Random word in `letters` of length <= max_len.
inline GroupElement random_word(const Group& G, Gen& gen, const std::vector<GroupElement>& letters, int max_len) {
    GroupElement g = G.identity();
    const long len = gen.integer(0, max_len);
    for (long i = 0; i < len; ++i) {
        const auto& l = letters[gen.index(letters.size())];
        g = G.multiply(g, gen.coin() ? l : G.invert(l));
    }
    return g;
}

inline GroupElement random_h(const HeckePair& pair, Gen& gen, int max_len = 6) {
    return random_word(pair.group(), gen, pair.subgroup().generators, max_len);
}

// Random element of the pair's group with indices kept at desk scale.
inline GroupElement random_element(const CatalogPair& cp, Gen& gen) {
    const Group& G = cp.pair->group();
    switch (cp.spec.family) {
        case Family::Dihedral: return make_dihedral(gen.integer(-6, 6), gen.coin());
        case Family::AxB: {
            Rational a = make_rational(gen.integer(1, 6), gen.integer(1, 6));
            if (gen.coin()) a = -a;
            return make_axb(a, gen.rational(12, 6));
        }
        case Family::Heisenberg: return make_heisenberg(gen.rational(6, 6), gen.rational(6, 6), gen.rational(6, 6));
        case Family::Psl2: {
            const auto& h = cp.pair->subgroup().generators;
            GroupElement g = random_word(G, gen, h, 4);
            const long steps = gen.integer(0, 2);
            for (long i = 0; i < steps; ++i) {
                g = G.multiply(g, catalog::psl2_x(cp.spec.q, gen.coin() ? 1 : -1));
                g = G.multiply(g, random_word(G, gen, h, 3));
            }
            return g;
        }
        case Family::FiniteSemidirect: return make_finite(gen.index(*G.order()));
        case Family::Brenken: {
            const std::size_t n = cp.spec.dimension;
            RationalMatrix m = RationalMatrix::identity(n + 1);
            const long steps = gen.integer(0, 2);
            for (long i = 0; i < steps; ++i) {
                const auto& a = cp.spec.q_generators[gen.index(cp.spec.q_generators.size())];
                RationalMatrix step = RationalMatrix::identity(n + 1);
                const RationalMatrix lin = gen.coin() ? a : a.inverse();
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c) step(r, c) = lin(r, c);
                m = m * step;
            }
            for (std::size_t r = 0; r < n; ++r) m(r, n) = gen.rational(4, 4);
            return make_matrix(m);
        }
        case Family::ZWreathZ2: {
            RationalMatrix m = RationalMatrix::identity(3);
            if (gen.coin()) m = RationalMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
            m(0, 2) = gen.integer(-5, 5);
            m(1, 2) = gen.integer(-5, 5);
            return make_matrix(m);
        }
    }
    return G.identity();
}

inline HeckeElement random_hecke(const CatalogPair& cp, Gen& gen, int max_terms = 3) {
    HeckeElement f(cp.pair, gen.coin() ? Basis::Chi : Basis::Phi);
    const long terms = gen.integer(1, max_terms);
    for (long i = 0; i < terms; ++i) {
        const auto x = random_element(cp, gen);
        const auto c = gen.nonzero_rational(5, 4);
        f += f.basis() == Basis::Chi ? HeckeElement::chi(cp.pair, x, c) : HeckeElement::phi(cp.pair, x, c);
    }
    return f;
}

// ---------------------------------------------------------------- oracles

// L(x) = |HxH| / |H| by listing HxH.
inline std::size_t oracle_L_finite(const FiniteGroup& G, const std::vector<std::size_t>& H, std::size_t x) {
    std::set<std::size_t> hxh;
    for (auto a : H)
        for (auto b : H) hxh.insert(G.product(G.product(a, x), b));
    return hxh.size() / H.size();
}

inline std::vector<std::size_t> members(const FiniteGroup& G, const SubgroupDescriptor& H) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (H.member(make_finite(i))) out.push_back(i);
    return out;
}

// Group-algebra convolution (f*g)(x) = |H|^-1 sum_y f(y) g(y^-1 x) on
// functions G -> Q given as value vectors.
inline std::vector<Rational> oracle_convolve(const FiniteGroup& G, std::size_t order_h, const std::vector<Rational>& f,
                                             const std::vector<Rational>& g) {
    std::vector<Rational> out(G.size(), 0);
    for (std::size_t x = 0; x < G.size(); ++x) {
        Rational s = 0;
        for (std::size_t y = 0; y < G.size(); ++y)
            if (f[y] != 0) s += f[y] * g[G.product(G.inverse(y), x)];
        out[x] = s / Rational(static_cast<long>(order_h));
    }
    return out;
}

// Values of a chi-basis Hecke element on a finite group.
inline std::vector<Rational> as_function(const HeckeElement& f) {
    const auto chi = to_chi(f);
    const auto& pair = *chi.pair();
    const FiniteGroup& G = dynamic_cast<const FiniteGroup&>(pair.group());
    const auto H = members(G, pair.subgroup());
    std::vector<Rational> out(G.size(), 0);
    for (const auto& [id, c] : chi.terms()) {
        const auto x = pair.coset(id).rep.as<FiniteIndex>().index;
        std::set<std::size_t> hxh;
        for (auto a : H)
            for (auto b : H) hxh.insert(G.product(G.product(a, x), b));
        for (auto g : hxh) out[g] += c;
    }
    return out;
}

// Number of column Hermite forms (a 0; c d) with a d = q^(2n), 0 <= c < d and
// gcd(a, c, d) = 1: the left cosets of PSL(2,Z) inside PSL(2,Z) x_n PSL(2,Z),
// after scaling by q^n.
inline std::uint64_t oracle_psl2_L(unsigned long q, unsigned n) {
    std::uint64_t target = 1;
    for (unsigned i = 0; i < 2 * n; ++i) target *= q;
    std::uint64_t count = 0;
    for (std::uint64_t a = 1; a <= target; ++a) {
        if (target % a) continue;
        const std::uint64_t d = target / a;
        for (std::uint64_t c = 0; c < d; ++c)
            if (std::gcd(std::gcd(a, c), d) == 1) ++count;
    }
    return count;
}

struct ScanResult {
    std::vector<GroupElement> transversal;
    bool disjoint = true;
};

// Orbit of xH under H by BFS with pairwise membership tests only, then an
// all-pairs disjointness check of the transversal.
inline ScanResult oracle_linear_scan(const Group& G, const SubgroupDescriptor& H, const GroupElement& x,
                                     std::size_t cap) {
    std::vector<GroupElement> gens;
    for (const auto& g : H.generators) {
        gens.push_back(g);
        gens.push_back(G.invert(g));
    }
    auto same = [&](const GroupElement& a, const GroupElement& b) { return H.member(G.multiply(G.invert(a), b)); };
    ScanResult out;
    out.transversal.push_back(x);
    for (std::size_t head = 0; head < out.transversal.size() && out.transversal.size() <= cap; ++head)
        for (const auto& g : gens) {
            auto y = G.multiply(g, out.transversal[head]);
            if (std::none_of(out.transversal.begin(), out.transversal.end(), [&](const auto& z) { return same(z, y); }))
                out.transversal.push_back(y);
        }
    for (std::size_t i = 0; i < out.transversal.size(); ++i)
        for (std::size_t j = i + 1; j < out.transversal.size(); ++j)
            if (same(out.transversal[i], out.transversal[j])) out.disjoint = false;
    return out;
}

// ---------------------------------------------------------------- finite corpus

inline std::vector<std::vector<std::size_t>> subgroups(const FiniteGroup& N) {
    const std::size_t n = N.size();
    std::set<std::vector<char>> seen;
    std::vector<std::vector<std::size_t>> out;
    auto close = [&](std::vector<std::size_t> gens) {
        std::vector<char> in(n, 0);
        in[N.identity_index()] = 1;
        for (auto g : gens) in[g] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (in[a] && in[b] && !in[N.product(a, b)]) in[N.product(a, b)] = grew = 1;
        }
        if (!seen.insert(in).second) return;
        std::vector<std::size_t> h;
        for (std::size_t i = 0; i < n; ++i)
            if (in[i]) h.push_back(i);
        out.push_back(std::move(h));
    };
    close({});
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            for (std::size_t c = b; c < n; ++c) close({a, b, c});
    return out;
}

// Automorphisms of N, each as the permutation n -> alpha(n).
inline std::vector<std::vector<std::size_t>> automorphisms(const FiniteGroup& N) {
    const std::size_t n = N.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // Generating set by greedy closure.
    std::vector<std::size_t> gens;
    {
        std::vector<char> in(n, 0);
        in[N.identity_index()] = 1;
        for (std::size_t g = 0; g < n; ++g) {
            if (in[g]) continue;
            gens.push_back(g);
            bool grew = true;
            in[g] = 1;
            while (grew) {
                grew = false;
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        if (in[a] && in[b] && !in[N.product(a, b)]) in[N.product(a, b)] = grew = 1;
            }
        }
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> images(gens.size(), 0);
    while (true) {
        // Extend gens -> images to a map by BFS over words; keep it if consistent and bijective.
        std::vector<std::size_t> map(n, n);
        map[N.identity_index()] = N.identity_index();
        std::vector<std::size_t> frontier{N.identity_index()};
        bool ok = true;
        while (!frontier.empty() && ok) {
            std::vector<std::size_t> next;
            for (auto g : frontier)
                for (std::size_t i = 0; i < gens.size() && ok; ++i) {
                    auto h = N.product(g, gens[i]);
                    auto v = N.product(map[g], images[i]);
                    if (map[h] == n) {
                        map[h] = v;
                        next.push_back(h);
                    } else if (map[h] != v) {
                        ok = false;
                    }
                }
            frontier = std::move(next);
        }
        if (ok) {
            std::vector<char> hit(n, 0);
            for (auto v : map) ok = ok && v < n && !hit[v] && (hit[v] = 1);
            for (std::size_t a = 0; a < n && ok; ++a)
                for (std::size_t b = 0; b < n && ok; ++b)
                    ok = map[N.product(a, b)] == N.product(map[a], map[b]);
        }
        if (ok) out.push_back(map);
        std::size_t pos = 0;
        while (pos < images.size() && ++images[pos] == n) images[pos++] = 0;
        if (pos == images.size()) break;
    }
    return out;
}

// Every (N x| Z_k, H <= N) with N abelian from a fixed list, Z_k acting
// through an automorphism whose order divides k, and |N| k <= max_order.
inline std::vector<nlohmann::json> semidirect_corpus(std::size_t max_order) {
    std::vector<Table> abelian = {cyclic_table(2), cyclic_table(3), cyclic_table(4),
                                  direct_product_table(cyclic_table(2), cyclic_table(2)),
                                  cyclic_table(5), cyclic_table(6), cyclic_table(7), cyclic_table(8),
                                  direct_product_table(cyclic_table(2), cyclic_table(4)),
                                  direct_product_table(direct_product_table(cyclic_table(2), cyclic_table(2)),
                                                       cyclic_table(2)),
                                  direct_product_table(cyclic_table(3), cyclic_table(3)), cyclic_table(12)};
    std::vector<nlohmann::json> out;
    for (const auto& nt : abelian) {
        const FiniteGroup N(nt);
        const auto auts = automorphisms(N);
        const auto subs = subgroups(N);
        for (std::size_t k = 1; k * N.size() <= max_order; ++k) {
            std::set<std::vector<std::vector<std::size_t>>> actions;
            for (const auto& a : auts) {
                std::vector<std::vector<std::size_t>> act(k, std::vector<std::size_t>(N.size()));
                std::iota(act[0].begin(), act[0].end(), 0);
                for (std::size_t j = 1; j < k; ++j)
                    for (std::size_t x = 0; x < N.size(); ++x) act[j][x] = a[act[j - 1][x]];
                bool order_divides = true;
                for (std::size_t x = 0; x < N.size(); ++x) order_divides = order_divides && a[act[k - 1][x]] == x;
                if (order_divides) actions.insert(act);
            }
            for (const auto& act : actions)
                for (const auto& h : subs)
                    out.push_back({{"family", "finite_semidirect"},
                                   {"N", nt},
                                   {"Q", cyclic_table(k)},
                                   {"action", act},
                                   {"H", h}});
        }
    }
    return out;
}

}  // namespace hecke::testing
