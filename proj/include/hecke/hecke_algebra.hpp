#pragma once

#include "hecke/coset_engine.hpp"

#include <map>
#include <utility>
#include <vector>

namespace hecke {

enum class Basis { Chi, Phi };

// Finite formal sum over interned double cosets. In the Phi basis the
// generator of class HxH is phi_x = L(x)^-1 chi_{HxH}.
class HeckeElement {
public:
    using Terms = std::map<CosetId, Rational>;

    HeckeElement(HeckePairPtr pair, Basis basis = Basis::Chi);
    HeckeElement(HeckePairPtr pair, Basis basis, Terms terms);

    // chi_{HxH} or phi_x.
    static HeckeElement chi(const HeckePairPtr& pair, const GroupElement& x, const Rational& coeff = 1);
    static HeckeElement phi(const HeckePairPtr& pair, const GroupElement& x, const Rational& coeff = 1);
    static HeckeElement unit(const HeckePairPtr& pair, Basis basis = Basis::Chi);

    const HeckePairPtr& pair() const noexcept { return pair_; }
    Basis basis() const noexcept { return basis_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(CosetId id) const;

    void add_term(CosetId id, const Rational& coeff);

    HeckeElement& operator+=(const HeckeElement& other);
    friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
    friend HeckeElement operator*(const Rational& s, HeckeElement f);

    // Same pair, same basis, same terms. Use to_chi on both sides to compare
    // across bases.
    friend bool operator==(const HeckeElement& a, const HeckeElement& b);

private:
    HeckePairPtr pair_;
    Basis basis_;
    Terms terms_;
};

HeckeElement to_chi(const HeckeElement& f);
HeckeElement to_phi(const HeckeElement& f);
HeckeElement in_basis(const HeckeElement& f, Basis basis);

// Bilinear extension of
//   chi_{HxH} * chi_{HyH} = sum_{wH in HyH/H} L(x)/L(xw) chi_{HxwH}.
// The result is in f's basis.
HeckeElement convolve(const HeckeElement& f, const HeckeElement& g);

// chi_{HxH}^* = Delta(x) chi_{Hx^-1H}, extended conjugate-linearly.
HeckeElement involute(const HeckeElement& f);

// sum |c| L(class) in the chi basis.
Rational l1_norm(const HeckeElement& f);

// Linear extension of chi_{xH} -> L(x)^-1 chi_{HxH}.
HeckeElement project_P(const HeckePairPtr& pair,
                       const std::vector<std::pair<GroupElement, Rational>>& left_coset_sum);

}  // namespace hecke
