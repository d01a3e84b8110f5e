#include "hecke/catalog.hpp"

#include "hecke/corner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace hecke {

using nlohmann::json;

std::string_view to_string(Family f) noexcept {
    switch (f) {
        case Family::Dihedral: return "dihedral";
        case Family::FiniteSemidirect: return "finite_semidirect";
        case Family::AxB: return "axb";
        case Family::Heisenberg: return "heisenberg";
        case Family::Psl2: return "psl2";
        case Family::Brenken: return "brenken";
        case Family::ZWreathZ2: return "z_wreath_z2";
    }
    return "unknown";
}

namespace {

constexpr Family kFamilies[] = {Family::Dihedral, Family::FiniteSemidirect, Family::AxB, Family::Heisenberg,
                                Family::Psl2,     Family::Brenken,          Family::ZWreathZ2};

[[noreturn]] void invalid(const std::string& field, const std::string& message) {
    fail(ErrorCode::SpecInvalid, field + ": " + message);
}

Table table_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) invalid(field, "expected a nonempty array of rows");
    Table t;
    for (const auto& row : j) {
        if (!row.is_array()) invalid(field, "rows must be arrays");
        std::vector<std::size_t> r;
        for (const auto& v : row) {
            if (!v.is_number_integer() || v.get<long long>() < 0) invalid(field, "entries must be non-negative integers");
            r.push_back(v.get<std::size_t>());
        }
        t.push_back(std::move(r));
    }
    return t;
}

bool is_prime(unsigned long q) {
    if (q < 2) return false;
    for (unsigned long d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

// Column Hermite form of a nonsingular integer matrix: lower triangular,
// positive diagonal, 0 <= m(i, j) < m(i, i) for j < i. Depends only on the
// lattice spanned by the columns.
std::vector<std::vector<Integer>> column_hermite(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    auto col_axpy = [&](std::size_t dst, const Integer& k, std::size_t src) {
        for (std::size_t r = 0; r < n; ++r) m[r][dst] += k * m[r][src];
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < n; ++r) std::swap(m[r][a], m[r][b]);
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j)
            while (m[i][j] != 0) {
                Integer k;
                mpz_fdiv_q(k.get_mpz_t(), m[i][i].get_mpz_t(), m[i][j].get_mpz_t());
                col_axpy(i, -k, j);
                col_swap(i, j);
            }
        if (m[i][i] == 0) fail(ErrorCode::DegenerateParameter, "lattice basis is singular");
        if (m[i][i] < 0)
            for (std::size_t r = 0; r < n; ++r) m[r][i] = -m[r][i];
        for (std::size_t j = 0; j < i; ++j) {
            Integer k;
            mpz_fdiv_q(k.get_mpz_t(), m[i][j].get_mpz_t(), m[i][i].get_mpz_t());
            col_axpy(j, -k, i);
        }
    }
    return m;
}

Integer common_denominator(const RationalMatrix& m) {
    Integer d = 1;
    for (const auto& v : m.data()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
    return d;
}

using Wide = __int128;

bool floor_div(Wide a, Wide b, Wide& q) {
    if (b == 0) return false;
    q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return true;
}

// column_hermite for 2x2 on machine integers; nullopt on overflow.
std::optional<std::array<Wide, 4>> hermite_2x2(std::array<Wide, 4> m) {
    auto axpy = [&](int dst, Wide k, int src) {
        for (int r = 0; r < 2; ++r) {
            Wide t;
            if (__builtin_mul_overflow(k, m[2 * r + src], &t) || __builtin_add_overflow(m[2 * r + dst], t, &m[2 * r + dst]))
                return false;
        }
        return true;
    };
    auto swap_cols = [&] {
        std::swap(m[0], m[1]);
        std::swap(m[2], m[3]);
    };
    while (m[1] != 0) {
        Wide k;
        floor_div(m[0], m[1], k);
        if (!axpy(0, -k, 1)) return std::nullopt;
        swap_cols();
    }
    if (m[0] == 0 || m[3] == 0) return std::nullopt;
    if (m[0] < 0) m[0] = -m[0], m[2] = -m[2];
    if (m[3] < 0) m[3] = -m[3];
    Wide k;
    floor_div(m[2], m[3], k);
    if (!axpy(0, -k, 1)) return std::nullopt;
    return m;
}

std::optional<GroupElement> psl2_coset_label_small(const RationalMatrix& m) {
    constexpr Wide limit = Wide(1) << 62;
    long num[4], den[4];
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& v = m.data()[i];
        if (!mpz_fits_slong_p(v.get_num_mpz_t()) || !mpz_fits_slong_p(v.get_den_mpz_t())) return std::nullopt;
        num[i] = mpz_get_si(v.get_num_mpz_t());
        den[i] = mpz_get_si(v.get_den_mpz_t());
    }
    long d = 1;
    for (long x : den) {
        const Wide l = Wide(d) / std::gcd(d, x) * x;
        if (l >= limit) return std::nullopt;
        d = static_cast<long>(l);
    }
    std::array<Wide, 4> scaled{};
    for (std::size_t i = 0; i < 4; ++i) scaled[i] = Wide(num[i]) * (d / den[i]);
    auto h = hermite_2x2(scaled);
    if (!h) return std::nullopt;
    RationalMatrix out(2, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        if ((*h)[i] >= limit || (*h)[i] <= -limit) return std::nullopt;
        out(i / 2, i % 2) = make_rational(static_cast<long>((*h)[i]), d);
    }
    return make_psl2_unchecked(std::move(out));
}

// g in PSL(2, Z[1/q]) -> Hermite basis of the lattice g Z^2, which labels gH
// for H = PSL(2, Z).
GroupElement psl2_coset_label(const GroupElement& g) {
    const auto& m = g.as<RationalMatrix>();
    if (auto small = psl2_coset_label_small(m)) return *std::move(small);
    const Integer d = common_denominator(m);
    std::vector<std::vector<Integer>> scaled(2, std::vector<Integer>(2));
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) scaled[r][c] = Integer(m(r, c) * d);
    const auto h = column_hermite(std::move(scaled));
    RationalMatrix out(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) out(r, c) = Rational(h[r][c]) / d;
    // unimodular column operations keep the determinant at 1
    return make_psl2_unchecked(std::move(out));
}

// Affine (n+1)x(n+1) matrix (A b; 0 1) -> (A b'; 0 1) with b' the reduction
// of b modulo the lattice A Z^n.
GroupElement affine_coset_label(const GroupElement& g, std::size_t n) {
    const auto& m = g.as<RationalMatrix>();
    RationalMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = m(r, c);
    Integer d = common_denominator(a);
    for (std::size_t r = 0; r < n; ++r) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(r, n).get_den_mpz_t());
    std::vector<std::vector<Integer>> scaled(n, std::vector<Integer>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) scaled[r][c] = Integer(a(r, c) * d);
    const auto basis = column_hermite(std::move(scaled));
    std::vector<Integer> b(n);
    for (std::size_t r = 0; r < n; ++r) b[r] = Integer(m(r, n) * d);
    for (std::size_t i = 0; i < n; ++i) {
        Integer k;
        mpz_fdiv_q(k.get_mpz_t(), b[i].get_mpz_t(), basis[i][i].get_mpz_t());
        for (std::size_t r = i; r < n; ++r) b[r] -= k * basis[r][i];
    }
    RationalMatrix out = m;
    for (std::size_t r = 0; r < n; ++r) out(r, n) = Rational(b[r]) / d;
    return make_matrix(out);
}

bool is_affine(const RationalMatrix& m, std::size_t n) {
    if (m.rows() != n + 1 || m.cols() != n + 1) return false;
    for (std::size_t c = 0; c < n; ++c)
        if (m(n, c) != 0) return false;
    return m(n, n) == 1;
}

// (I m; 0 1) with m integral.
bool is_integer_translation(const GroupElement& g, std::size_t n) {
    const auto& m = g.as<RationalMatrix>();
    if (!is_affine(m, n)) return false;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            if (m(r, c) != (r == c ? 1 : 0)) return false;
        if (!is_integer(m(r, n))) return false;
    }
    return true;
}

GroupElement translation(std::size_t n, std::size_t axis) {
    RationalMatrix m = RationalMatrix::identity(n + 1);
    m(axis, n) = 1;
    return make_matrix(m);
}

SubgroupDescriptor dihedral_subgroup() {
    SubgroupDescriptor h;
    h.member = [](const GroupElement& g) { return g.as<DihedralWord>().n == 0; };
    h.generators = {catalog::dihedral_b()};
    h.canonicalize_coset = [](const GroupElement& g) { return make_dihedral(g.as<DihedralWord>().n, false); };
    return h;
}

SubgroupDescriptor axb_subgroup() {
    SubgroupDescriptor h;
    h.member = [](const GroupElement& g) {
        const auto& p = g.as<AffinePair>();
        return p.a == 1 && is_integer(p.b);
    };
    h.generators = {make_axb(1, 1)};
    // (a, b)(1, m) = (a, b + a m)
    h.canonicalize_coset = [](const GroupElement& g) {
        const auto& p = g.as<AffinePair>();
        return make_axb(p.a, p.b - p.a * Rational(floor(p.b / p.a)));
    };
    return h;
}

SubgroupDescriptor heisenberg_subgroup() {
    SubgroupDescriptor h;
    h.member = [](const GroupElement& g) {
        const auto& p = g.as<HeisenbergTriple>();
        return is_integer(p.u) && is_integer(p.v) && p.w == 0;
    };
    h.generators = {make_heisenberg(1, 0, 0), make_heisenberg(0, 1, 0)};
    // [u, v, w][m, n, 0] = [u + m, v + n, w + v m]
    h.canonicalize_coset = [](const GroupElement& g) {
        const auto& p = g.as<HeisenbergTriple>();
        const Rational m = -Rational(floor(p.u));
        return make_heisenberg(frac(p.u), frac(p.v), p.w + p.v * m);
    };
    return h;
}

SubgroupDescriptor psl2_subgroup() {
    SubgroupDescriptor h;
    h.member = [](const GroupElement& g) {
        const auto& d = g.as<RationalMatrix>().data();
        return std::all_of(d.begin(), d.end(), [](const Rational& v) { return is_integer(v); });
    };
    h.generators = {make_psl2(RationalMatrix{{0, -1}, {1, 0}}), make_psl2(RationalMatrix{{1, 1}, {0, 1}})};
    h.canonicalize_coset = psl2_coset_label;
    return h;
}

SubgroupDescriptor brenken_subgroup(std::size_t n) {
    SubgroupDescriptor h;
    h.member = [n](const GroupElement& g) { return is_integer_translation(g, n); };
    for (std::size_t i = 0; i < n; ++i) h.generators.push_back(translation(n, i));
    h.canonicalize_coset = [n](const GroupElement& g) {
        if (!is_affine(g.as<RationalMatrix>(), n))
            fail(ErrorCode::BackendMismatch, "element is not an affine matrix of dimension " + std::to_string(n));
        return affine_coset_label(g, n);
    };
    return h;
}

// Elements (P v; 0 1) with P a 2x2 permutation matrix; H is the translations
// along the second coordinate, i.e. the stabilizer of the point (0, 0).
SubgroupDescriptor wreath_subgroup() {
    SubgroupDescriptor h;
    h.member = [](const GroupElement& g) {
        const auto& m = g.as<RationalMatrix>();
        return is_affine(m, 2) && m(0, 0) == 1 && m(0, 1) == 0 && m(1, 0) == 0 && m(1, 1) == 1 && m(0, 2) == 0 &&
               is_integer(m(1, 2));
    };
    RationalMatrix gen = RationalMatrix::identity(3);
    gen(1, 2) = 1;
    h.generators = {make_matrix(gen)};
    // (P v)(I (0, j)) = (P, v + P e_2 j): clear the coordinate P e_2 points at.
    h.canonicalize_coset = [](const GroupElement& g) {
        RationalMatrix m = g.as<RationalMatrix>();
        const std::size_t row = m(0, 1) != 0 ? 0 : 1;
        m(row, 2) = 0;
        return make_matrix(m);
    };
    return h;
}

std::vector<RationalMatrix> matrices_from_json(const json& j, std::size_t n) {
    if (!j.is_array() || j.empty()) invalid("generators", "expected a nonempty array of matrices");
    std::vector<RationalMatrix> out;
    for (const auto& m : j) {
        RationalMatrix a = [&] {
            try {
                return matrix_from_json(m, n);
            } catch (const Error& e) {
                invalid("generators", e.what());
            }
        }();
        if (a.determinant() == 0) invalid("generators", "matrix is singular");
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

PairSpec parse_pair_spec(const json& j) {
    if (!j.is_object()) invalid("spec", "expected a JSON object");
    if (!j.contains("family") || !j["family"].is_string()) invalid("family", "missing or not a string");
    const auto name = j["family"].get<std::string>();
    PairSpec spec;
    spec.source = j;
    auto it = std::find_if(std::begin(kFamilies), std::end(kFamilies), [&](Family f) { return to_string(f) == name; });
    if (it == std::end(kFamilies)) invalid("family", "unknown family '" + name + "'");
    spec.family = *it;

    if (j.contains("max_index")) {
        const auto& m = j["max_index"];
        if (!m.is_number_integer() || m.get<long long>() < 1) invalid("max_index", "must be a positive integer");
        spec.max_index = m.get<std::size_t>();
    }

    switch (spec.family) {
        case Family::FiniteSemidirect: {
            for (const char* field : {"N", "Q", "action", "H"})
                if (!j.contains(field)) invalid(field, "required for finite_semidirect");
            spec.n_table = table_from_json(j["N"], "N");
            spec.q_table = table_from_json(j["Q"], "Q");
            spec.action = table_from_json(j["action"], "action");
            if (!j["H"].is_array()) invalid("H", "expected an array of N indices");
            for (const auto& v : j["H"]) {
                if (!v.is_number_integer() || v.get<long long>() < 0) invalid("H", "entries must be N indices");
                spec.h_elements.push_back(v.get<std::size_t>());
            }
            break;
        }
        case Family::Psl2: {
            if (!j.contains("q") || !j["q"].is_number_integer()) invalid("q", "required integer");
            const auto q = j["q"].get<long long>();
            if (q < 2 || !is_prime(static_cast<unsigned long>(q))) invalid("q", "must be prime, got " + std::to_string(q));
            spec.q = static_cast<unsigned long>(q);
            break;
        }
        case Family::Brenken: {
            if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
                invalid("n", "required positive integer");
            spec.dimension = j["n"].get<std::size_t>();
            if (!j.contains("generators")) invalid("generators", "required for brenken");
            spec.q_generators = matrices_from_json(j["generators"], spec.dimension);
            spec.assume_reduced = j.value("assume_reduced", false);
            if (!spec.assume_reduced)
                invalid("assume_reduced", "must be true: reducedness of the pair is asserted by the caller");
            break;
        }
        default: break;
    }
    return spec;
}

Table cyclic_table(std::size_t order) {
    if (order == 0) fail(ErrorCode::SpecInvalid, "cyclic group of order 0");
    Table t(order, std::vector<std::size_t>(order));
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j) t[i][j] = (i + j) % order;
    return t;
}

Table direct_product_table(const Table& a, const Table& b) {
    const std::size_t n = a.size(), m = b.size();
    Table t(n * m, std::vector<std::size_t>(n * m));
    for (std::size_t i = 0; i < n * m; ++i)
        for (std::size_t j = 0; j < n * m; ++j) t[i][j] = a[i % n][j % n] + n * b[i / n][j / n];
    return t;
}

Table semidirect_table(const FiniteGroup& N, const FiniteGroup& Q, const Table& action) {
    const std::size_t n = N.size(), q = Q.size();
    Table t(n * q, std::vector<std::size_t>(n * q));
    // (n1, q1)(n2, q2) = (n1 alpha_q1(n2), q1 q2)
    for (std::size_t i = 0; i < n * q; ++i)
        for (std::size_t j = 0; j < n * q; ++j) {
            const std::size_t n1 = i % n, q1 = i / n, n2 = j % n, q2 = j / n;
            t[i][j] = Q.product(q1, q2) * n + N.product(n1, action[q1][n2]);
        }
    return t;
}

CatalogPair build_pair(const PairSpec& spec) {
    CatalogPair out;
    out.spec = spec;
    const std::size_t cap = spec.max_index.value_or(kDefaultMaxIndex);
    GroupPtr group;
    SubgroupDescriptor h;
    json meta = {{"family", std::string(to_string(spec.family))}};

    switch (spec.family) {
        case Family::Dihedral:
            group = std::make_shared<DihedralGroup>();
            h = dihedral_subgroup();
            break;
        case Family::AxB:
            group = std::make_shared<AffineLineGroup>();
            h = axb_subgroup();
            break;
        case Family::Heisenberg:
            group = std::make_shared<HeisenbergGroup>();
            h = heisenberg_subgroup();
            break;
        case Family::Psl2:
            group = std::make_shared<Psl2Group>(spec.q);
            h = psl2_subgroup();
            meta["q"] = spec.q;
            break;
        case Family::Brenken:
            group = std::make_shared<MatrixGroup>(spec.dimension + 1);
            h = brenken_subgroup(spec.dimension);
            meta["n"] = spec.dimension;
            meta["assumed_reduced"] = spec.assume_reduced;
            break;
        case Family::ZWreathZ2:
            group = std::make_shared<MatrixGroup>(3);
            h = wreath_subgroup();
            break;
        case Family::FiniteSemidirect: {
            auto wrap = [](const Table& t, const char* field) {
                try {
                    return std::make_shared<const FiniteGroup>(t);
                } catch (const Error& e) {
                    invalid(field, e.what());
                }
            };
            SemidirectData data{wrap(spec.n_table, "N"), wrap(spec.q_table, "Q"), spec.action, spec.h_elements};
            try {
                validate_action(*data.N, *data.Q, data.action);
            } catch (const Error& e) {
                invalid("action", e.what());
            }
            auto finite = std::make_shared<const FiniteGroup>(semidirect_table(*data.N, *data.Q, data.action));
            std::vector<std::size_t> h_in_g;
            for (auto x : data.h) {
                if (x >= data.N->size()) invalid("H", "index " + std::to_string(x) + " outside N");
                h_in_g.push_back(data.Q->identity_index() * data.N->size() + x);
            }
            try {
                h = finite_subgroup(finite, h_in_g);
            } catch (const Error& e) {
                invalid("H", e.what());
            }
            group = finite;
            meta["order"] = finite->size();
            out.semidirect = std::move(data);
            break;
        }
    }
    meta["group"] = group->name();
    auto gens = json::array();
    for (const auto& g : h.generators) gens.push_back(to_json(g));
    meta["H_generators"] = std::move(gens);
    meta["coset_normal_form"] = h.has_coset_labels();
    out.pair = std::make_shared<HeckePair>(group, std::move(h), cap);
    out.metadata = std::move(meta);
    return out;
}

CatalogPair build_pair(const json& spec) { return build_pair(parse_pair_spec(spec)); }

// ---------------------------------------------------------------- catalog

namespace catalog {

json dihedral() { return {{"family", "dihedral"}}; }

json tetrahedral() {
    // N = Z_2^2 with index x + 2y; Q = Z_3 generated by (x, y) -> (x + y, x).
    const Table n_table = direct_product_table(cyclic_table(2), cyclic_table(2));
    auto act = [](std::size_t v) {
        const std::size_t x = v & 1, y = v >> 1;
        return ((x ^ y) & 1) | (x << 1);
    };
    Table action(3, std::vector<std::size_t>(4));
    for (std::size_t v = 0; v < 4; ++v) {
        action[0][v] = v;
        action[1][v] = act(v);
        action[2][v] = act(act(v));
    }
    return {{"family", "finite_semidirect"},
            {"N", n_table},
            {"Q", cyclic_table(3)},
            {"action", action},
            {"H", {0, 1}}};
}

json axb() { return {{"family", "axb"}}; }
json heisenberg() { return {{"family", "heisenberg"}}; }
json psl2(unsigned long q) { return {{"family", "psl2"}, {"q", q}}; }
json z_wreath_z2() { return {{"family", "z_wreath_z2"}}; }

GroupElement dihedral_a(std::int64_t n) { return make_dihedral(n, false); }
GroupElement dihedral_b() { return make_dihedral(0, true); }

GroupElement psl2_x(unsigned long q, long n) {
    Rational s = 1;
    for (long i = 0; i < std::labs(n); ++i) s *= q;
    if (n < 0) s = 1 / s;
    return make_psl2(RationalMatrix{{s, 0}, {0, 1 / s}});
}

}  // namespace catalog

// ---------------------------------------------------------------- characters

std::string_view to_string(CharacterKind k) noexcept {
    switch (k) {
        case CharacterKind::DihedralPiC: return "dihedral_pi_c";
        case CharacterKind::Psl2HallZ: return "psl2_hall_z";
        case CharacterKind::Psl2HallZ1: return "psl2_hall_z1";
    }
    return "unknown";
}

CharacterKind parse_character_kind(std::string_view name) {
    for (auto k : {CharacterKind::DihedralPiC, CharacterKind::Psl2HallZ, CharacterKind::Psl2HallZ1})
        if (to_string(k) == name) return k;
    fail(ErrorCode::ParseError, "unknown character kind '" + std::string(name) + "'");
}

std::complex<double> char_eval(const CharacterSpec& spec, std::uint64_t m) {
    using C = std::complex<double>;
    const double q = static_cast<double>(spec.q);
    const int e = static_cast<int>(m);
    switch (spec.kind) {
        case CharacterKind::DihedralPiC: {
            const C c = spec.parameter;
            if (c == C(0)) fail(ErrorCode::DegenerateParameter, "c = 0");
            return 0.5 * (std::pow(c, e) + std::pow(c, -e));
        }
        case CharacterKind::Psl2HallZ: {
            const C z = spec.parameter;
            if (z == C(0) || z == C(1)) fail(ErrorCode::DegenerateParameter, "z must avoid 0 and 1");
            if (spec.q < 2) fail(ErrorCode::DegenerateParameter, "q must be at least 2");
            const C a = (1.0 - q * z) / ((q + 1) * (1.0 - z));
            const C b = (q - z) / ((q + 1) * (1.0 - z));
            return a * std::pow(z / q, e) + b * std::pow(1.0 / (q * z), e);
        }
        case CharacterKind::Psl2HallZ1: {
            if (spec.q < 2) fail(ErrorCode::DegenerateParameter, "q must be at least 2");
            return (2.0 * static_cast<double>(m) * (q - 1) + q + 1) / ((q + 1) * std::pow(q, e));
        }
    }
    return {};
}

namespace {

bool carries_phi_basis(const CatalogPair& pair) {
    return pair.spec.family == Family::Dihedral || pair.spec.family == Family::Psl2;
}

}  // namespace

GroupElement phi_generator(const CatalogPair& pair, std::uint64_t n) {
    if (pair.spec.family == Family::Dihedral) return catalog::dihedral_a(static_cast<std::int64_t>(n));
    if (pair.spec.family == Family::Psl2) return catalog::psl2_x(pair.spec.q, static_cast<long>(n));
    fail(ErrorCode::PairMismatch, "family " + std::string(to_string(pair.spec.family)) + " has no phi_n basis");
}

std::uint64_t phi_degree(const CatalogPair& pair, CosetId id) {
    if (!carries_phi_basis(pair))
        fail(ErrorCode::PairMismatch, "family " + std::string(to_string(pair.spec.family)) + " has no phi_n basis");
    const GroupElement& rep = pair.pair->coset(id).rep;
    std::uint64_t n = 0;
    if (pair.spec.family == Family::Dihedral) {
        n = static_cast<std::uint64_t>(std::llabs(rep.as<DihedralWord>().n));
    } else {
        long lowest = 0;
        for (const auto& v : rep.as<RationalMatrix>().data())
            if (v != 0) lowest = std::min(lowest, valuation(v, pair.spec.q));
        n = static_cast<std::uint64_t>(-lowest);
    }
    if (pair.pair->find_double_coset(phi_generator(pair, n)) != id)
        fail(ErrorCode::PairMismatch, "class of " + serialize(rep) + " is not phi_" + std::to_string(n));
    return n;
}

CharacterReport verify_character(const CatalogPair& pair, const CharacterSpec& spec, std::size_t max_degree,
                                 double tol) {
    const bool dihedral_kind = spec.kind == CharacterKind::DihedralPiC;
    if (dihedral_kind != (pair.spec.family == Family::Dihedral) ||
        (!dihedral_kind && pair.spec.family != Family::Psl2))
        fail(ErrorCode::PairMismatch, std::string(to_string(spec.kind)) + " does not apply to family " +
                                          std::string(to_string(pair.spec.family)));
    if (!dihedral_kind && spec.q != pair.spec.q)
        fail(ErrorCode::PairMismatch, "character q = " + std::to_string(spec.q) + " but pair q = " +
                                          std::to_string(pair.spec.q));

    std::vector<std::complex<double>> values(2 * max_degree + 1);
    for (std::size_t m = 0; m < values.size(); ++m) values[m] = char_eval(spec, m);

    CharacterReport report;
    report.tolerance = tol;
    for (std::size_t m = 0; m <= max_degree; ++m)
        for (std::size_t n = 0; n <= m; ++n) {
            const auto f = HeckeElement::phi(pair.pair, phi_generator(pair, m));
            const auto g = HeckeElement::phi(pair.pair, phi_generator(pair, n));
            const auto product = convolve(f, g);
            std::complex<double> lhs = 0;
            for (const auto& [id, coeff] : product.terms()) {
                const auto degree = phi_degree(pair, id);
                const auto value = degree < values.size() ? values[degree] : char_eval(spec, degree);
                lhs += coeff.get_d() * value;
            }
            report.max_deviation = std::max(report.max_deviation, std::abs(lhs - values[m] * values[n]));
            ++report.checks;
        }
    report.passed = report.max_deviation <= tol;
    return report;
}

}  // namespace hecke
