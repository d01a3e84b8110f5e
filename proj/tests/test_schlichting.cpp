#include "support.hpp"

#include "hecke/schlichting.hpp"

#include <doctest.h>

using namespace hecke;
using namespace hecke::testing;

namespace {

// Restriction of a row on `big` to the positions of `small` (a prefix).
std::vector<std::size_t> restrict_prefix(const std::vector<std::size_t>& row, std::size_t prefix) {
    return {row.begin(), row.begin() + static_cast<long>(prefix)};
}

}  // namespace

TEST_CASE("theta_restrict examples") {
    auto d = build_pair(catalog::dihedral());
    const auto& G = d.pair->group();
    std::vector<GroupElement> F{G.identity(), catalog::dihedral_a(1)};
    auto id = theta_restrict(*d.pair, G.identity(), F);
    CHECK(id.rows.front() == std::vector<std::size_t>{0, 1});

    auto tb = theta_restrict(*d.pair, catalog::dihedral_b(), F);
    CHECK(tb.rows.front() == std::vector<std::size_t>{0, 2});
    CHECK(d.pair->same_left_coset(tb.labels[2], catalog::dihedral_a(-1)));

    auto a = build_pair(catalog::axb());
    std::vector<GroupElement> Fa{a.pair->group().identity(), make_axb(2, 0)};
    auto ta = theta_restrict(*a.pair, make_axb(1, 1), Fa);
    CHECK(ta.rows.front() == std::vector<std::size_t>{0, 2});
    CHECK(a.pair->same_left_coset(ta.labels[2], make_axb(2, 1)));
}

TEST_CASE("h_level_quotient examples") {
    auto a = build_pair(catalog::axb());
    std::vector<GroupElement> F6{make_axb(6, 0)};
    CHECK(h_level_quotient(*a.pair, F6).size == 6);
    std::vector<GroupElement> FH{a.pair->group().identity()};
    CHECK(h_level_quotient(*a.pair, FH).size == 1);

    auto d = build_pair(catalog::dihedral());
    std::vector<GroupElement> Fd{catalog::dihedral_a(1)};
    CHECK(h_level_quotient(*d.pair, Fd).size == 2);
}

TEST_CASE("haar_index examples") {
    for (auto spec : {catalog::dihedral(), catalog::axb(), catalog::heisenberg(), catalog::psl2(2),
                      catalog::tetrahedral(), catalog::z_wreath_z2()}) {
        auto cp = build_pair(spec);
        std::vector<GroupElement> F{cp.pair->group().identity()};
        CHECK(haar_index(*cp.pair, cp.pair->group().identity(), F) == 1);
    }
    auto a = build_pair(catalog::axb());
    std::vector<GroupElement> F{a.pair->group().identity(), make_axb(2, 0)};
    CHECK(haar_index(*a.pair, make_axb(5, 1), F) == make_rational(1, 2));
    std::vector<GroupElement> half{make_axb(make_rational(1, 2), 0)};
    CHECK(haar_index(*a.pair, a.pair->group().identity(), half) == 2);

    auto d = build_pair(catalog::dihedral());
    std::vector<GroupElement> Fd{d.pair->group().identity(), catalog::dihedral_a(1)};
    CHECK(haar_index(*d.pair, d.pair->group().identity(), Fd) == make_rational(1, 2));
}

TEST_CASE("haar_index matches exhaustive counts on finite pairs") {
    auto t = build_pair(catalog::tetrahedral());
    const auto& G = dynamic_cast<const FiniteGroup&>(t.pair->group());
    for (std::size_t f1 = 0; f1 < G.size(); ++f1)
        for (std::size_t f2 = 0; f2 < G.size(); ++f2) {
            std::vector<GroupElement> F{make_finite(f1)};
            if (!t.pair->same_left_coset(F[0], make_finite(f2))) F.push_back(make_finite(f2));
            auto gf = t.pair->conjugate_intersection(F);
            std::size_t order_gf = 0, order_both = 0, order_h = 0;
            for (std::size_t g = 0; g < G.size(); ++g) {
                const bool in_gf = gf.member(make_finite(g)), in_h = t.pair->in_H(make_finite(g));
                order_gf += in_gf;
                order_h += in_h;
                order_both += in_gf && in_h;
            }
            CHECK(haar_index(*t.pair, G.identity(), F) ==
                  make_rational(order_gf / order_both, 1) / make_rational(order_h / order_both, 1));
        }
}

TEST_CASE("hecke_group_check examples") {
    auto d = build_pair(catalog::dihedral());
    const auto e = d.pair->group().identity();
    std::vector<std::pair<GroupElement, GroupElement>> samples{{e, e}, {e, catalog::dihedral_a(1)}};
    auto report = hecke_group_check(*d.pair, samples, 100);
    CHECK(report.samples[0].size == 1u);
    CHECK(report.samples[1].size == 2u);
    CHECK(report.all_finite());

    auto w = build_pair(catalog::z_wreath_z2());
    const auto eta = make_matrix(RationalMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    std::vector<std::pair<GroupElement, GroupElement>> bad{{w.pair->group().identity(), eta}};
    for (std::size_t cap : {10, 1000}) {
        auto r = hecke_group_check(*w.pair, bad, cap);
        CHECK_FALSE(r.samples[0].size.has_value());
        CHECK_FALSE(r.all_finite());
    }
}

TEST_CASE("property: restriction compatibility") {
    auto a = build_pair(catalog::axb());
    auto& p = *a.pair;
    Gen gen(51);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<GroupElement> F;
        const long size = gen.integer(1, 3);
        for (long i = 0; i < size; ++i) {
            auto y = make_axb(make_rational(gen.integer(1, 6), gen.integer(1, 3)), gen.rational(3, 3));
            if (std::none_of(F.begin(), F.end(), [&](const auto& z) { return p.same_left_coset(z, y); }))
                F.push_back(y);
        }
        auto big = saturate_window(p, F);
        for (std::size_t prefix = 1; prefix <= big.size(); ++prefix) {
            std::span<const GroupElement> E(big.data(), prefix);
            RestrictionTable tf, te;
            window_index(p, p.subgroup().generators, big, &tf);
            window_index(p, p.subgroup().generators, E, &te);
            std::set<std::vector<std::size_t>> e_rows(te.rows.begin(), te.rows.end());
            // labels of E agree with the first labels of F when the window is a prefix
            for (const auto& row : tf.rows) {
                auto r = restrict_prefix(row, prefix);
                std::vector<std::size_t> relabeled;
                for (auto l : r) {
                    auto found = std::find_if(te.labels.begin(), te.labels.end(),
                                              [&](const auto& z) { return p.same_left_coset(z, tf.labels[l]); });
                    REQUIRE(found != te.labels.end());
                    relabeled.push_back(static_cast<std::size_t>(found - te.labels.begin()));
                }
                CHECK(e_rows.count(relabeled) == 1);
            }
        }
    }
}

TEST_CASE("property: AxB level sizes are multiplicative") {
    auto a = build_pair(catalog::axb());
    for (int n = 1; n <= 6; ++n)
        for (int m = 1; m <= 6; ++m) {
            std::vector<GroupElement> F{make_axb(n * m, 0)};
            auto size = h_level_quotient(*a.pair, F).size;
            CHECK(size == static_cast<std::uint64_t>(n * m));
            if (std::gcd(n, m) == 1) {
                std::vector<GroupElement> Fn{make_axb(n, 0)}, Fm{make_axb(m, 0)};
                CHECK(size == h_level_quotient(*a.pair, Fn).size * h_level_quotient(*a.pair, Fm).size);
            }
        }
}

TEST_CASE("property: theta is a homomorphism on saturated windows") {
    auto t = build_pair(catalog::tetrahedral());
    auto& p = *t.pair;
    const auto& G = p.group();
    // the whole of G/H is a saturated window for a finite group
    std::vector<GroupElement> window;
    for (const auto& g : G.elements())
        if (std::none_of(window.begin(), window.end(), [&](const auto& z) { return p.same_left_coset(z, g); }))
            window.push_back(g);
    LeftCosetRegistry labels(p);
    for (const auto& y : window) labels.insert(y);
    for (const auto& x : G.elements())
        for (const auto& y : G.elements()) {
            auto rx = theta_restrict(p, x, window, labels), ry = theta_restrict(p, y, window, labels);
            auto rxy = theta_restrict(p, G.multiply(x, y), window, labels);
            for (std::size_t i = 0; i < window.size(); ++i) CHECK(rxy[i] == rx[ry[i]]);
        }
    CHECK(labels.size() == window.size());
}

TEST_CASE("window errors") {
    auto a = build_pair(catalog::axb());
    std::vector<GroupElement> dup{make_axb(2, 0), make_axb(2, 2)};
    CHECK_THROWS_AS(h_level_quotient(*a.pair, dup), Error);
    std::vector<GroupElement> empty;
    CHECK_THROWS_AS(haar_index(*a.pair, make_axb(1, 0), empty), Error);
    a.pair->set_max_index(10);
    std::vector<GroupElement> wide{make_axb(64, 0)};
    try {
        h_level_quotient(*a.pair, wide);
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IndexOverflow);
    }
}
