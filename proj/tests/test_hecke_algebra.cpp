#include "support.hpp"

#include <doctest.h>

using namespace hecke;
using namespace hecke::testing;

namespace {

HeckeElement chi(const CatalogPair& cp, const GroupElement& x, const Rational& c = 1) {
    return HeckeElement::chi(cp.pair, x, c);
}

HeckeElement phi(const CatalogPair& cp, const GroupElement& x, const Rational& c = 1) {
    return HeckeElement::phi(cp.pair, x, c);
}

std::vector<CatalogPair> axiom_pairs() {
    std::vector<CatalogPair> out;
    for (auto spec : {catalog::dihedral(), catalog::axb(), catalog::tetrahedral(), catalog::psl2(2)})
        out.push_back(build_pair(spec));
    return out;
}

}  // namespace

TEST_CASE("convolve examples") {
    auto d = build_pair(catalog::dihedral());
    const auto a = catalog::dihedral_a(1);
    const auto e = d.pair->group().identity();
    CHECK(convolve(chi(d, a), chi(d, a)) == chi(d, catalog::dihedral_a(2)) + chi(d, e, 2));

    auto p = build_pair(catalog::psl2(2));
    const auto x1 = catalog::psl2_x(2, 1);
    auto lhs = convolve(phi(p, x1), phi(p, x1));
    auto rhs = phi(p, catalog::psl2_x(2, 2), make_rational(2, 3)) + phi(p, x1, make_rational(1, 6)) +
               phi(p, p.pair->group().identity(), make_rational(1, 6));
    CHECK(lhs == rhs);
    CHECK(lhs.basis() == Basis::Phi);
}

TEST_CASE("unit") {
    Gen gen(31);
    for (const auto& cp : axiom_pairs()) {
        auto u = HeckeElement::unit(cp.pair);
        for (int i = 0; i < 20; ++i) {
            auto f = to_chi(random_hecke(cp, gen));
            CHECK(convolve(u, f) == f);
            CHECK(convolve(f, u) == f);
        }
    }
}

TEST_CASE("involute examples") {
    auto d = build_pair(catalog::dihedral());
    CHECK(involute(chi(d, catalog::dihedral_a(1))) == chi(d, catalog::dihedral_a(1)));
    CHECK(involute(HeckeElement::unit(d.pair)) == HeckeElement::unit(d.pair));
    auto a = build_pair(catalog::axb());
    const auto x = make_axb(2, 0);
    CHECK(involute(chi(a, x)) == chi(a, a.pair->group().invert(x), 2));
}

TEST_CASE("l1_norm examples") {
    auto d = build_pair(catalog::dihedral());
    CHECK(l1_norm(chi(d, catalog::dihedral_a(1))) == 2);
    CHECK(l1_norm(HeckeElement(d.pair)) == 0);
    Gen gen(32);
    for (const auto& cp : axiom_pairs())
        for (int i = 0; i < 20; ++i) CHECK(l1_norm(phi(cp, random_element(cp, gen))) == 1);
}

TEST_CASE("project_P examples") {
    auto d = build_pair(catalog::dihedral());
    const auto a = catalog::dihedral_a(1);
    CHECK(project_P(d.pair, {{a, 1}}) == chi(d, a, make_rational(1, 2)));
    CHECK(project_P(d.pair, {{d.pair->group().identity(), 1}}) == HeckeElement::unit(d.pair));
    CHECK(project_P(d.pair, {{a, 1}, {catalog::dihedral_a(-1), 1}}) == chi(d, a));
}

TEST_CASE("basis conversion") {
    auto d = build_pair(catalog::dihedral());
    CHECK(to_phi(chi(d, catalog::dihedral_a(1))) == phi(d, catalog::dihedral_a(1), 2));
    CHECK(to_phi(HeckeElement::unit(d.pair)) == HeckeElement::unit(d.pair, Basis::Phi));
    Gen gen(33);
    for (const auto& cp : axiom_pairs())
        for (int i = 0; i < 50; ++i) {
            auto f = random_hecke(cp, gen);
            CHECK(in_basis(to_chi(to_phi(f)), f.basis()) == f);
            CHECK(in_basis(to_phi(to_chi(f)), f.basis()) == f);
        }
}

TEST_CASE("pair mismatch") {
    auto a = build_pair(catalog::dihedral());
    auto b = build_pair(catalog::dihedral());
    try {
        convolve(HeckeElement::unit(a.pair), HeckeElement::unit(b.pair));
        FAIL("expected PairMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PairMismatch);
    }
}

TEST_CASE("property: algebra axioms") {
    Gen gen(34);
    for (const auto& cp : axiom_pairs()) {
        for (int i = 0; i < 30; ++i) {
            auto f = random_hecke(cp, gen, 2), g = random_hecke(cp, gen, 2), h = random_hecke(cp, gen, 2);
            CHECK(to_chi(convolve(convolve(f, g), h)) == to_chi(convolve(f, convolve(g, h))));
            CHECK(to_chi(involute(convolve(f, g))) == to_chi(convolve(involute(g), involute(f))));
            CHECK(to_chi(involute(involute(f))) == to_chi(f));
            CHECK(l1_norm(involute(f)) == l1_norm(f));
            CHECK(l1_norm(convolve(f, g)) <= l1_norm(f) * l1_norm(g));
        }
    }
}

TEST_CASE("dihedral closed form") {
    auto d = build_pair(catalog::dihedral());
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; n <= m; ++n) {
            auto lhs = convolve(phi(d, catalog::dihedral_a(m)), phi(d, catalog::dihedral_a(n)));
            auto rhs = phi(d, catalog::dihedral_a(m + n), make_rational(1, 2)) +
                       phi(d, catalog::dihedral_a(m - n), make_rational(1, 2));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("oracle: brute-force convolution on finite pairs") {
    std::vector<nlohmann::json> specs = {catalog::tetrahedral()};
    for (const auto& s : semidirect_corpus(12)) specs.push_back(s);
    for (const auto& spec : specs) {
        auto cp = build_pair(spec);
        auto& p = *cp.pair;
        const auto& G = dynamic_cast<const FiniteGroup&>(p.group());
        const std::size_t order_h = members(G, p.subgroup()).size();
        for (std::size_t x = 0; x < G.size(); ++x) p.double_coset_of(make_finite(x));
        for (CosetId i = 0; i < p.coset_count(); ++i)
            for (CosetId j = 0; j < p.coset_count(); ++j) {
                auto f = HeckeElement::chi(cp.pair, p.coset(i).rep), g = HeckeElement::chi(cp.pair, p.coset(j).rep);
                CHECK(as_function(convolve(f, g)) == oracle_convolve(G, order_h, as_function(f), as_function(g)));
            }
    }
}
