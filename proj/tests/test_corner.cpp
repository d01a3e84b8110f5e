#include "support.hpp"

#include <doctest.h>

using namespace hecke;
using namespace hecke::testing;

namespace {

nlohmann::json plain_finite(const Table& t, std::vector<std::size_t> h) {
    std::vector<std::size_t> id(t.size());
    std::iota(id.begin(), id.end(), 0);
    return {{"family", "finite_semidirect"}, {"N", t}, {"Q", cyclic_table(1)}, {"action", {id}}, {"H", h}};
}

Rational trace(const RationalMatrix& m) {
    Rational t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

std::size_t double_coset_count(HeckePair& p) {
    for (const auto& g : p.group().elements()) p.double_coset_of(g);
    return p.coset_count();
}

}  // namespace

TEST_CASE("projection_p examples") {
    auto trivial = build_pair(plain_finite(cyclic_table(6), {0}));
    RegularRep rep6(*trivial.pair);
    CHECK(projection_p(rep6, trivial.pair->subgroup()) == RationalMatrix::identity(6));

    auto t = build_pair(catalog::tetrahedral());
    RegularRep rep(*t.pair);
    auto p = projection_p(rep, t.pair->subgroup());
    CHECK(p * p == p);
    CHECK(trace(p) == 6);
    // H = {e, h} with h = (1, 0) in N
    auto half = make_rational(1, 2) * (RationalMatrix::identity(12) + rep.matrix_of(make_finite(1)));
    CHECK(p == half);
}

TEST_CASE("fullness_test examples") {
    auto t = build_pair(catalog::tetrahedral());
    CHECK(fullness_test(RegularRep(*t.pair), t.pair->subgroup()));
    auto trivial = build_pair(plain_finite(cyclic_table(5), {0}));
    CHECK(fullness_test(RegularRep(*trivial.pair), trivial.pair->subgroup()));
    auto klein = build_pair(plain_finite(direct_product_table(cyclic_table(2), cyclic_table(2)), {0, 1}));
    CHECK_FALSE(fullness_test(RegularRep(*klein.pair), klein.pair->subgroup()));

    auto d = build_pair(catalog::dihedral());
    CHECK_THROWS_AS(RegularRep(*d.pair), Error);
}

TEST_CASE("corner_dimension examples") {
    auto t = build_pair(catalog::tetrahedral());
    RegularRep rep(*t.pair);
    CHECK(corner_dimension(rep, t.pair->subgroup()) == double_coset_count(*t.pair));
    std::vector<std::size_t> all(12);
    std::iota(all.begin(), all.end(), 0);
    CHECK(corner_dimension(rep, finite_subgroup(std::dynamic_pointer_cast<const FiniteGroup>(t.pair->group_ptr()), all)) == 1);
    auto trivial = build_pair(plain_finite(cyclic_table(7), {0}));
    CHECK(corner_dimension(RegularRep(*trivial.pair), trivial.pair->subgroup()) == 7);
}

TEST_CASE("omega_is_full_dual examples") {
    auto t = build_pair(catalog::tetrahedral());
    const auto& s = *t.semidirect;
    CHECK(omega_is_full_dual(*s.N, s.h, *s.Q, s.action));
    CHECK_FALSE(omega_is_full_dual(*s.N, {0, 1, 2, 3}, *s.Q, s.action));
    FiniteGroup trivial_q(cyclic_table(1));
    CHECK_FALSE(omega_is_full_dual(*s.N, {0, 1}, trivial_q, {{0, 1, 2, 3}}));
    CHECK(omega_is_full_dual(*s.N, {0}, trivial_q, {{0, 1, 2, 3}}));

    FiniteGroup s3(semidirect_table(FiniteGroup(cyclic_table(3)), FiniteGroup(cyclic_table(2)), {{0, 1, 2}, {0, 2, 1}}));
    CHECK_THROWS_AS(dual_group(s3), Error);
    CHECK_THROWS_AS(validate_action(*s.N, *s.Q, {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 1, 2, 3}}), Error);
}

TEST_CASE("dual group") {
    for (const auto& t : {cyclic_table(6), direct_product_table(cyclic_table(2), cyclic_table(4)),
                          direct_product_table(cyclic_table(3), cyclic_table(3))}) {
        FiniteGroup N(t);
        auto dual = dual_group(N);
        CHECK(dual.size() == N.size());
        for (const auto& chi : dual)
            for (std::size_t a = 0; a < N.size(); ++a)
                for (std::size_t b = 0; b < N.size(); ++b)
                    CHECK(chi.exponent[N.product(a, b)] == (chi.exponent[a] + chi.exponent[b]) % chi.modulus);
        CHECK(std::set<DualCharacter>(dual.begin(), dual.end()).size() == dual.size());
    }
}

TEST_CASE("property: regular representation is a homomorphism") {
    for (const auto& spec : {catalog::tetrahedral(), plain_finite(cyclic_table(8), {0, 4})}) {
        auto cp = build_pair(spec);
        RegularRep rep(*cp.pair);
        const auto& G = rep.group();
        CHECK(rep.matrix_of(make_finite(G.identity_index())) == RationalMatrix::identity(G.size()));
        for (std::size_t g = 0; g < G.size(); ++g)
            for (std::size_t h = 0; h < G.size(); ++h)
                CHECK(rep.matrix_of(make_finite(G.product(g, h))) ==
                      rep.matrix_of(make_finite(g)) * rep.matrix_of(make_finite(h)));
    }
}

TEST_CASE("property: p idempotent and symmetric, corner = double cosets, fullness criteria agree") {
    std::size_t full = 0, not_full = 0;
    for (const auto& spec : semidirect_corpus(16)) {
        auto cp = build_pair(spec);
        RegularRep rep(*cp.pair);
        auto p = projection_p(rep, cp.pair->subgroup());
        CHECK(p * p == p);
        CHECK(p.transpose() == p);
        CHECK(corner_dimension(rep, cp.pair->subgroup()) == double_coset_count(*cp.pair));
        const auto& s = *cp.semidirect;
        const bool f = fullness_test(rep, cp.pair->subgroup());
        CHECK(f == omega_is_full_dual(*s.N, s.h, *s.Q, s.action));
        (f ? full : not_full)++;
    }
    CHECK(full > 0);
    CHECK(not_full > 0);
}

TEST_CASE("regular representation cap") {
    CHECK_THROWS_AS(RegularRep(std::make_shared<const FiniteGroup>(cyclic_table(kMaxRegularOrder + 1))), Error);
}
