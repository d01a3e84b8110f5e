#include "hecke/group.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <utility>

namespace hecke {

std::string_view to_string(Backend b) noexcept {
    switch (b) {
        case Backend::Finite: return "Finite";
        case Backend::Dihedral: return "Dihedral";
        case Backend::AxB: return "AxB";
        case Backend::Heisenberg: return "Heisenberg";
        case Backend::PSL2: return "PSL2";
        case Backend::MatrixQ: return "MatrixQ";
    }
    return "Unknown";
}

namespace {

nlohmann::json matrix_json(const RationalMatrix& m) {
    auto rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

nlohmann::json to_json(const GroupElement& g) {
    return std::visit(
        [](const auto& p) -> nlohmann::json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FiniteIndex>) {
                return p.index;
            } else if constexpr (std::is_same_v<T, DihedralWord>) {
                return nlohmann::json::array({p.n, p.flip ? 1 : 0});
            } else if constexpr (std::is_same_v<T, AffinePair>) {
                return nlohmann::json::array({to_string(p.a), to_string(p.b)});
            } else if constexpr (std::is_same_v<T, HeisenbergTriple>) {
                return nlohmann::json::array({to_string(p.u), to_string(p.v), to_string(p.w)});
            } else {
                return matrix_json(p);
            }
        },
        g.payload());
}

// Same text as to_json(g).dump(), built without the JSON tree: this is the
// hot key of every coset table.
std::string serialize(const GroupElement& g) {
    std::string out;
    auto quoted = [&](const Rational& v) {
        out += '"';
        out += to_string(v);
        out += '"';
    };
    auto list = [&](std::initializer_list<const Rational*> vs) {
        out += '[';
        for (const auto* v : vs) {
            if (out.back() != '[') out += ',';
            quoted(*v);
        }
        out += ']';
    };
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FiniteIndex>) {
                out = std::to_string(p.index);
            } else if constexpr (std::is_same_v<T, DihedralWord>) {
                out = "[" + std::to_string(p.n) + (p.flip ? ",1]" : ",0]");
            } else if constexpr (std::is_same_v<T, AffinePair>) {
                list({&p.a, &p.b});
            } else if constexpr (std::is_same_v<T, HeisenbergTriple>) {
                list({&p.u, &p.v, &p.w});
            } else {
                out += '[';
                for (std::size_t r = 0; r < p.rows(); ++r) {
                    out += r ? ",[" : "[";
                    for (std::size_t c = 0; c < p.cols(); ++c) {
                        if (c) out += ',';
                        quoted(p(r, c));
                    }
                    out += ']';
                }
                out += ']';
            }
        },
        g.payload());
    return out;
}

std::size_t ElementHash::operator()(const GroupElement& g) const {
    return std::hash<std::string>{}(serialize(g));
}

GroupElement make_finite(std::size_t index) { return {Backend::Finite, FiniteIndex{index}}; }

GroupElement make_dihedral(std::int64_t n, bool flip) {
    return {Backend::Dihedral, DihedralWord{n, flip}};
}

GroupElement make_axb(const Rational& a, const Rational& b) {
    if (a == 0) fail(ErrorCode::DegenerateParameter, "ax+b element with a = 0");
    Rational ca = a, cb = b;
    ca.canonicalize();
    cb.canonicalize();
    return {Backend::AxB, AffinePair{ca, cb}};
}

GroupElement make_heisenberg(const Rational& u, const Rational& v, const Rational& w) {
    Rational cu = u, cv = v;
    cu.canonicalize();
    cv.canonicalize();
    return {Backend::Heisenberg, HeisenbergTriple{cu, cv, frac(w)}};
}

namespace {

using Wide = __int128;

struct SmallFraction {
    Wide num, den;
};

std::optional<SmallFraction> small(const Rational& v) {
    if (!mpz_fits_slong_p(v.get_num_mpz_t()) || !mpz_fits_slong_p(v.get_den_mpz_t())) return std::nullopt;
    return SmallFraction{mpz_get_si(v.get_num_mpz_t()), mpz_get_si(v.get_den_mpz_t())};
}

Wide wide_gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    while (b != 0) a = std::exchange(b, a % b);
    return a < 0 ? -a : a;
}

// a*b + c*d on machine integers; nullopt when an intermediate leaves 63 bits.
std::optional<Rational> small_dot(const SmallFraction& a, const SmallFraction& b, const SmallFraction& c,
                                  const SmallFraction& d) {
    constexpr Wide limit = Wide(1) << 62;
    Wide n1 = a.num * b.num, d1 = a.den * b.den, n2 = c.num * d.num, d2 = c.den * d.den;
    const Wide g = wide_gcd(d1, d2);
    Wide s1, s2, num, den;
    if (__builtin_mul_overflow(n1, d2 / g, &s1) || __builtin_mul_overflow(n2, d1 / g, &s2) ||
        __builtin_add_overflow(s1, s2, &num) || __builtin_mul_overflow(d1 / g, d2, &den))
        return std::nullopt;
    const Wide r = wide_gcd(num, den);
    num /= r == 0 ? 1 : r;
    den /= r == 0 ? den : r;
    if (num >= limit || num <= -limit || den >= limit) return std::nullopt;
    return make_rational(static_cast<long>(num), static_cast<long>(den));
}

// 2x2 product avoiding GMP temporaries when every entry is a word-sized fraction.
std::optional<RationalMatrix> small_product_2x2(const RationalMatrix& a, const RationalMatrix& b) {
    std::array<SmallFraction, 4> x{}, y{};
    for (std::size_t i = 0; i < 4; ++i) {
        auto u = small(a.data()[i]), v = small(b.data()[i]);
        if (!u || !v) return std::nullopt;
        x[i] = *u;
        y[i] = *v;
    }
    RationalMatrix out(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            auto v = small_dot(x[2 * r], y[c], x[2 * r + 1], y[2 + c]);
            if (!v) return std::nullopt;
            out(r, c) = *std::move(v);
        }
    return out;
}

}  // namespace

GroupElement make_psl2(const RationalMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) fail(ErrorCode::BackendMismatch, "PSL2 element must be 2x2");
    RationalMatrix c = m;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t k = 0; k < 2; ++k) c(r, k).canonicalize();
    if (c.determinant() != 1) fail(ErrorCode::SpecInvalid, "PSL2 element must have determinant 1");
    return make_psl2_unchecked(std::move(c));
}

GroupElement make_psl2_unchecked(RationalMatrix m) {
    const auto& d = m.data();
    auto first = std::find_if(d.begin(), d.end(), [](const Rational& v) { return v != 0; });
    if (*first < 0)
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) m(r, c) = -m(r, c);
    return {Backend::PSL2, std::move(m)};
}

GroupElement make_matrix(const RationalMatrix& m) {
    RationalMatrix c = m;
    for (std::size_t r = 0; r < c.rows(); ++r)
        for (std::size_t k = 0; k < c.cols(); ++k) c(r, k).canonicalize();
    return {Backend::MatrixQ, std::move(c)};
}

void require_same_backend(const GroupElement& g, const GroupElement& h) {
    if (g.backend() != h.backend())
        fail(ErrorCode::BackendMismatch, "cannot combine " + std::string(to_string(g.backend())) +
                                             " with " + std::string(to_string(h.backend())));
}

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    fail(ErrorCode::ParseError, "expected rational string or integer, got " + j.dump());
}

RationalMatrix matrix_from_json(const nlohmann::json& j, std::size_t n) {
    if (!j.is_array()) fail(ErrorCode::ParseError, "matrix must be a JSON array");
    RationalMatrix m(n, n);
    if (j.size() == n && std::all_of(j.begin(), j.end(), [](const auto& r) { return r.is_array(); })) {
        for (std::size_t r = 0; r < n; ++r) {
            if (j[r].size() != n) fail(ErrorCode::ParseError, "matrix row has wrong length");
            for (std::size_t c = 0; c < n; ++c) m(r, c) = rational_from_json(j[r][c]);
        }
        return m;
    }
    if (j.size() == n * n) {
        for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = rational_from_json(j[i]);
        return m;
    }
    fail(ErrorCode::ParseError, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
}

// ---------------------------------------------------------------- Group base

std::vector<GroupElement> Group::elements() const {
    fail(ErrorCode::NotFinite, name() + " is not a finite backend");
}

GroupElement Group::power(const GroupElement& g, long exponent) const {
    GroupElement base = exponent < 0 ? invert(g) : g;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    GroupElement out = identity();
    while (e) {
        if (e & 1) out = multiply(out, base);
        base = multiply(base, base);
        e >>= 1;
    }
    return out;
}

void Group::require_backend(const GroupElement& g) const {
    if (g.backend() != backend())
        fail(ErrorCode::BackendMismatch, "element of backend " + std::string(to_string(g.backend())) +
                                             " used with " + name());
}

// ---------------------------------------------------------------- Finite

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table) : table_(std::move(table)) {
    const std::size_t n = table_.size();
    if (n == 0) fail(ErrorCode::SpecInvalid, "empty multiplication table");
    for (const auto& row : table_) {
        if (row.size() != n) fail(ErrorCode::SpecInvalid, "multiplication table is not square");
        for (auto v : row)
            if (v >= n) fail(ErrorCode::SpecInvalid, "multiplication table entry out of range");
    }
    auto id = std::find_if(table_.begin(), table_.end(), [&](const auto& row) {
        for (std::size_t j = 0; j < n; ++j)
            if (row[j] != j) return false;
        return true;
    });
    if (id == table_.end()) fail(ErrorCode::SpecInvalid, "multiplication table has no identity");
    identity_ = static_cast<std::size_t>(id - table_.begin());
    for (std::size_t j = 0; j < n; ++j)
        if (table_[j][identity_] != j) fail(ErrorCode::SpecInvalid, "identity is not two-sided");
    inverse_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (table_[i][j] == identity_) {
                inverse_[i] = j;
                break;
            }
        if (inverse_[i] == n || table_[inverse_[i]][i] != identity_)
            fail(ErrorCode::SpecInvalid, "element " + std::to_string(i) + " has no two-sided inverse");
    }
    // Light's test: elements s with (x s) y = x (s y) for all x, y form a
    // closed subset, so checking a generating set suffices.
    std::vector<std::size_t> generators;
    std::vector<char> reached(n, 0);
    reached[identity_] = 1;
    for (std::size_t g = 0; g < n; ++g) {
        if (reached[g]) continue;
        generators.push_back(g);
        std::vector<std::size_t> frontier;
        for (std::size_t x = 0; x < n; ++x)
            if (reached[x]) frontier.push_back(x);
        for (std::size_t head = 0; head < frontier.size(); ++head)
            for (auto s : generators) {
                const std::size_t next = table_[s][frontier[head]];
                if (!reached[next]) {
                    reached[next] = 1;
                    frontier.push_back(next);
                }
            }
    }
    for (auto s : generators)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = 0; c < n; ++c)
                if (table_[table_[a][s]][c] != table_[a][table_[s][c]])
                    fail(ErrorCode::SpecInvalid, "multiplication table is not associative");
}

std::string FiniteGroup::name() const { return "finite group of order " + std::to_string(size()); }

GroupElement FiniteGroup::multiply(const GroupElement& g, const GroupElement& h) const {
    require_same_backend(g, h);
    require_backend(g);
    return make_finite(table_.at(g.as<FiniteIndex>().index).at(h.as<FiniteIndex>().index));
}

GroupElement FiniteGroup::invert(const GroupElement& g) const {
    require_backend(g);
    return make_finite(inverse_.at(g.as<FiniteIndex>().index));
}

GroupElement FiniteGroup::canonicalize(const GroupElement& g) const {
    require_backend(g);
    return g;
}

bool FiniteGroup::contains(const GroupElement& g) const {
    return g.backend() == Backend::Finite && g.as<FiniteIndex>().index < size();
}

GroupElement FiniteGroup::from_json(const nlohmann::json& j) const {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        fail(ErrorCode::ParseError, "finite element must be a non-negative integer, got " + j.dump());
    auto idx = j.get<std::size_t>();
    if (idx >= size()) fail(ErrorCode::ParseError, "finite element index out of range");
    return make_finite(idx);
}

std::vector<GroupElement> FiniteGroup::elements() const {
    std::vector<GroupElement> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(make_finite(i));
    return out;
}

bool FiniteGroup::is_abelian() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (table_[i][j] != table_[j][i]) return false;
    return true;
}

// ---------------------------------------------------------------- Dihedral

GroupElement DihedralGroup::multiply(const GroupElement& g, const GroupElement& h) const {
    require_same_backend(g, h);
    require_backend(g);
    const auto& x = g.as<DihedralWord>();
    const auto& y = h.as<DihedralWord>();
    // b a^m = a^-m b
    return make_dihedral(x.n + (x.flip ? -y.n : y.n), x.flip != y.flip);
}

GroupElement DihedralGroup::invert(const GroupElement& g) const {
    require_backend(g);
    const auto& x = g.as<DihedralWord>();
    return x.flip ? g : make_dihedral(-x.n, false);
}

GroupElement DihedralGroup::canonicalize(const GroupElement& g) const {
    require_backend(g);
    return g;
}

GroupElement DihedralGroup::from_json(const nlohmann::json& j) const {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        fail(ErrorCode::ParseError, "dihedral element must be [n, e], got " + j.dump());
    auto e = j[1].get<long long>();
    if (e != 0 && e != 1) fail(ErrorCode::ParseError, "dihedral flip bit must be 0 or 1");
    return make_dihedral(j[0].get<std::int64_t>(), e == 1);
}

// ---------------------------------------------------------------- ax+b

GroupElement AffineLineGroup::multiply(const GroupElement& g, const GroupElement& h) const {
    require_same_backend(g, h);
    require_backend(g);
    const auto& x = g.as<AffinePair>();
    const auto& y = h.as<AffinePair>();
    return make_axb(x.a * y.a, x.a * y.b + x.b);
}

GroupElement AffineLineGroup::invert(const GroupElement& g) const {
    require_backend(g);
    const auto& x = g.as<AffinePair>();
    return make_axb(1 / x.a, -x.b / x.a);
}

GroupElement AffineLineGroup::canonicalize(const GroupElement& g) const {
    require_backend(g);
    const auto& x = g.as<AffinePair>();
    return make_axb(x.a, x.b);
}

bool AffineLineGroup::contains(const GroupElement& g) const {
    return g.backend() == Backend::AxB && g.as<AffinePair>().a != 0;
}

GroupElement AffineLineGroup::from_json(const nlohmann::json& j) const {
    if (!j.is_array() || j.size() != 2) fail(ErrorCode::ParseError, "ax+b element must be [a, b], got " + j.dump());
    return make_axb(rational_from_json(j[0]), rational_from_json(j[1]));
}

// ---------------------------------------------------------------- Heisenberg

GroupElement HeisenbergGroup::multiply(const GroupElement& g, const GroupElement& h) const {
    require_same_backend(g, h);
    require_backend(g);
    const auto& x = g.as<HeisenbergTriple>();
    const auto& y = h.as<HeisenbergTriple>();
    return make_heisenberg(x.u + y.u, x.v + y.v, x.w + y.w + x.v * y.u);
}

GroupElement HeisenbergGroup::invert(const GroupElement& g) const {
    require_backend(g);
    const auto& x = g.as<HeisenbergTriple>();
    return make_heisenberg(-x.u, -x.v, x.u * x.v - x.w);
}

GroupElement HeisenbergGroup::canonicalize(const GroupElement& g) const {
    require_backend(g);
    const auto& x = g.as<HeisenbergTriple>();
    return make_heisenberg(x.u, x.v, x.w);
}

GroupElement HeisenbergGroup::from_json(const nlohmann::json& j) const {
    if (!j.is_array() || j.size() != 3)
        fail(ErrorCode::ParseError, "Heisenberg element must be [u, v, w], got " + j.dump());
    return make_heisenberg(rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2]));
}

// ---------------------------------------------------------------- PSL2

Psl2Group::Psl2Group(unsigned long q) : q_(q) {
    if (q < 2) fail(ErrorCode::SpecInvalid, "PSL2 requires a prime q >= 2");
    for (unsigned long d = 2; d * d <= q; ++d)
        if (q % d == 0) fail(ErrorCode::SpecInvalid, "PSL2 requires q prime, got " + std::to_string(q));
}

std::string Psl2Group::name() const { return "PSL(2, Z[1/" + std::to_string(q_) + "])"; }

GroupElement Psl2Group::identity() const { return make_psl2(RationalMatrix::identity(2)); }

GroupElement Psl2Group::multiply(const GroupElement& g, const GroupElement& h) const {
    require_same_backend(g, h);
    require_backend(g);
    const auto& a = g.as<RationalMatrix>();
    const auto& b = h.as<RationalMatrix>();
    if (auto small = small_product_2x2(a, b)) return make_psl2_unchecked(*std::move(small));
    return make_psl2_unchecked(a * b);
}

GroupElement Psl2Group::invert(const GroupElement& g) const {
    require_backend(g);
    const auto& m = g.as<RationalMatrix>();
    return make_psl2_unchecked(RationalMatrix{{m(1, 1), -m(0, 1)}, {-m(1, 0), m(0, 0)}});
}

GroupElement Psl2Group::canonicalize(const GroupElement& g) const {
    require_backend(g);
    return make_psl2(g.as<RationalMatrix>());
}

bool Psl2Group::contains(const GroupElement& g) const {
    if (g.backend() != Backend::PSL2) return false;
    const auto& m = g.as<RationalMatrix>();
    if (m.rows() != 2 || m.cols() != 2 || m.determinant() != 1) return false;
    for (const auto& v : m.data()) {
        Integer den = v.get_den();
        while (mpz_divisible_ui_p(den.get_mpz_t(), q_)) mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), q_);
        if (den != 1) return false;
    }
    return true;
}

GroupElement Psl2Group::from_json(const nlohmann::json& j) const {
    auto g = make_psl2(matrix_from_json(j, 2));
    if (!contains(g)) fail(ErrorCode::ParseError, "entries must lie in Z[1/" + std::to_string(q_) + "]");
    return g;
}

// ---------------------------------------------------------------- GL(n, Q)

MatrixGroup::MatrixGroup(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) fail(ErrorCode::SpecInvalid, "matrix dimension must be positive");
}

std::string MatrixGroup::name() const { return "GL(" + std::to_string(dimension_) + ", Q)"; }

GroupElement MatrixGroup::identity() const { return make_matrix(RationalMatrix::identity(dimension_)); }

GroupElement MatrixGroup::multiply(const GroupElement& g, const GroupElement& h) const {
    require_same_backend(g, h);
    require_backend(g);
    return make_matrix(g.as<RationalMatrix>() * h.as<RationalMatrix>());
}

GroupElement MatrixGroup::invert(const GroupElement& g) const {
    require_backend(g);
    return make_matrix(g.as<RationalMatrix>().inverse());
}

GroupElement MatrixGroup::canonicalize(const GroupElement& g) const {
    require_backend(g);
    return make_matrix(g.as<RationalMatrix>());
}

bool MatrixGroup::contains(const GroupElement& g) const {
    if (g.backend() != Backend::MatrixQ) return false;
    const auto& m = g.as<RationalMatrix>();
    return m.rows() == dimension_ && m.cols() == dimension_ && m.determinant() != 0;
}

GroupElement MatrixGroup::from_json(const nlohmann::json& j) const {
    auto g = make_matrix(matrix_from_json(j, dimension_));
    if (!contains(g)) fail(ErrorCode::ParseError, "matrix is singular");
    return g;
}

}  // namespace hecke
