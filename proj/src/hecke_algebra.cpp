#include "hecke/hecke_algebra.hpp"

namespace hecke {

namespace {

Rational as_rational(std::uint64_t v) { return Rational(static_cast<unsigned long>(v)); }

void require_same_pair(const HeckeElement& f, const HeckeElement& g) {
    if (f.pair() != g.pair()) fail(ErrorCode::PairMismatch, "Hecke elements belong to different pairs");
}

}  // namespace

HeckeElement::HeckeElement(HeckePairPtr pair, Basis basis) : pair_(std::move(pair)), basis_(basis) {
    if (!pair_) fail(ErrorCode::PairMismatch, "Hecke element without a pair");
}

HeckeElement::HeckeElement(HeckePairPtr pair, Basis basis, Terms terms)
    : HeckeElement(std::move(pair), basis) {
    for (auto& [id, c] : terms) add_term(id, c);
}

HeckeElement HeckeElement::chi(const HeckePairPtr& pair, const GroupElement& x, const Rational& coeff) {
    HeckeElement f(pair, Basis::Chi);
    f.add_term(pair->double_coset_of(x), coeff);
    return f;
}

HeckeElement HeckeElement::phi(const HeckePairPtr& pair, const GroupElement& x, const Rational& coeff) {
    HeckeElement f(pair, Basis::Phi);
    f.add_term(pair->double_coset_of(x), coeff);
    return f;
}

HeckeElement HeckeElement::unit(const HeckePairPtr& pair, Basis basis) {
    HeckeElement f(pair, basis);
    f.add_term(pair->double_coset_of(pair->group().identity()), 1);
    return f;
}

Rational HeckeElement::coefficient(CosetId id) const {
    auto it = terms_.find(id);
    return it == terms_.end() ? Rational(0) : it->second;
}

void HeckeElement::add_term(CosetId id, const Rational& coeff) {
    if (id >= pair_->coset_count()) fail(ErrorCode::PairMismatch, "coset id not interned in this pair");
    if (coeff == 0) return;
    auto [it, fresh] = terms_.emplace(id, coeff);
    if (fresh) return;
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& other) {
    require_same_pair(*this, other);
    const HeckeElement converted = in_basis(other, basis_);
    for (const auto& [id, c] : converted.terms_) add_term(id, c);
    return *this;
}

HeckeElement operator*(const Rational& s, HeckeElement f) {
    if (s == 0) {
        f.terms_.clear();
        return f;
    }
    for (auto& [id, c] : f.terms_) c *= s;
    return f;
}

bool operator==(const HeckeElement& a, const HeckeElement& b) {
    return a.pair_ == b.pair_ && a.basis_ == b.basis_ && a.terms_ == b.terms_;
}

HeckeElement to_chi(const HeckeElement& f) {
    if (f.basis() == Basis::Chi) return f;
    HeckeElement out(f.pair(), Basis::Chi);
    for (const auto& [id, c] : f.terms()) out.add_term(id, c / as_rational(f.pair()->coset(id).L));
    return out;
}

HeckeElement to_phi(const HeckeElement& f) {
    if (f.basis() == Basis::Phi) return f;
    HeckeElement out(f.pair(), Basis::Phi);
    for (const auto& [id, c] : f.terms()) out.add_term(id, c * as_rational(f.pair()->coset(id).L));
    return out;
}

HeckeElement in_basis(const HeckeElement& f, Basis basis) {
    return basis == Basis::Chi ? to_chi(f) : to_phi(f);
}

HeckeElement convolve(const HeckeElement& f, const HeckeElement& g) {
    require_same_pair(f, g);
    HeckePair& pair = *f.pair();
    const Group& G = pair.group();
    const HeckeElement fc = to_chi(f);
    const HeckeElement gc = to_chi(g);

    HeckeElement out(f.pair(), Basis::Chi);
    for (const auto& [y_id, y_coeff] : gc.terms()) {
        // Copy: interning below may grow the table and move records.
        const std::vector<GroupElement> transversal = pair.coset(y_id).transversal;
        for (const auto& [x_id, x_coeff] : fc.terms()) {
            const GroupElement x = pair.coset(x_id).rep;
            const Rational Lx = as_rational(pair.coset(x_id).L);
            const Rational scale = x_coeff * y_coeff;
            for (const auto& w : transversal) {
                const CosetId xw = pair.double_coset_of(G.multiply(x, w));
                out.add_term(xw, scale * Lx / as_rational(pair.coset(xw).L));
            }
        }
    }
    return in_basis(out, f.basis());
}

HeckeElement involute(const HeckeElement& f) {
    HeckePair& pair = *f.pair();
    const HeckeElement fc = to_chi(f);
    HeckeElement out(f.pair(), Basis::Chi);
    for (const auto& [id, c] : fc.terms()) {
        const GroupElement x = pair.coset(id).rep;
        const Rational d = pair.coset(id).delta;
        out.add_term(pair.double_coset_of(pair.group().invert(x)), c * d);
    }
    return in_basis(out, f.basis());
}

Rational l1_norm(const HeckeElement& f) {
    const HeckeElement fc = to_chi(f);
    Rational total = 0;
    for (const auto& [id, c] : fc.terms()) total += abs(c) * as_rational(f.pair()->coset(id).L);
    return total;
}

HeckeElement project_P(const HeckePairPtr& pair,
                       const std::vector<std::pair<GroupElement, Rational>>& left_coset_sum) {
    HeckeElement out(pair, Basis::Chi);
    for (const auto& [x, c] : left_coset_sum) {
        const CosetId id = pair->double_coset_of(x);
        out.add_term(id, c / as_rational(pair->coset(id).L));
    }
    return out;
}

}  // namespace hecke
