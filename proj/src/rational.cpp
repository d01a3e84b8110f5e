#include "hecke/rational.hpp"

#include "hecke/errors.hpp"

#include <cctype>

namespace hecke {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::BackendMismatch: return "BackendMismatch";
        case ErrorCode::IndexOverflow: return "IndexOverflow";
        case ErrorCode::PairMismatch: return "PairMismatch";
        case ErrorCode::NotFinite: return "NotFinite";
        case ErrorCode::NotAbelian: return "NotAbelian";
        case ErrorCode::SpecInvalid: return "SpecInvalid";
        case ErrorCode::DegenerateParameter: return "DegenerateParameter";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Rational make_rational(long num, long den) {
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational ratio(unsigned long num, unsigned long den) {
    if (den == 0) fail(ErrorCode::DegenerateParameter, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

void append(std::string& out, mpz_srcptr z) {
    if (mpz_fits_slong_p(z)) {
        out += std::to_string(mpz_get_si(z));
        return;
    }
    std::string buf(mpz_sizeinbase(z, 10) + 2, '\0');
    mpz_get_str(buf.data(), 10, z);
    out += buf.c_str();
}

}  // namespace

std::string to_string(const Rational& r) {
    std::string out;
    append(out, r.get_num_mpz_t());
    out += '/';
    append(out, r.get_den_mpz_t());
    return out;
}

std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

bool valid_integer_token(std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto s = trim(text);
    auto slash = s.find('/');
    auto num = trim(s.substr(0, slash));
    auto den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
    if (!valid_integer_token(num, true) || !valid_integer_token(den, false))
        fail(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    Integer zn(n), zd{std::string(den)};
    if (zd == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rational r(zn, zd);
    r.canonicalize();
    return r;
}

Integer floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& r) {
    Rational f = r - Rational(floor(r));
    f.canonicalize();
    return f;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

long valuation(const Rational& r, unsigned long prime) {
    if (r == 0) fail(ErrorCode::DegenerateParameter, "valuation of zero");
    auto count = [prime](Integer z) {
        long v = 0;
        if (z < 0) z = -z;
        while (mpz_divisible_ui_p(z.get_mpz_t(), prime)) {
            mpz_divexact_ui(z.get_mpz_t(), z.get_mpz_t(), prime);
            ++v;
        }
        return v;
    };
    return count(r.get_num()) - count(r.get_den());
}

}  // namespace hecke
