#pragma once

#include "hecke/coset_engine.hpp"
#include "hecke/kernels.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace hecke {

inline constexpr std::size_t kMaxRegularOrder = 4096;

// Left regular representation of a finite group: M(g) e_h = e_{gh}.
class RegularRep {
public:
    // IndexOverflow above kMaxRegularOrder.
    explicit RegularRep(std::shared_ptr<const FiniteGroup> group);
    // NotFinite unless the pair has a finite backend.
    explicit RegularRep(const HeckePair& pair);

    std::size_t order() const noexcept { return group_->size(); }
    const FiniteGroup& group() const noexcept { return *group_; }
    // perm[h] = g h
    const std::vector<std::size_t>& permutation(std::size_t g) const { return perms_.at(g); }
    RationalMatrix matrix_of(const GroupElement& g) const;

private:
    std::shared_ptr<const FiniteGroup> group_;
    std::vector<std::vector<std::size_t>> perms_;
};

// p = |H|^-1 sum_{h in H} M(h).
RationalMatrix projection_p(const RegularRep& rep, const SubgroupDescriptor& H);

// p is full iff sum_x M(x) p M(x)^-1 is invertible.
bool fullness_test(const RegularRep& rep, const SubgroupDescriptor& H, Execution exec = Execution::Parallel);

// rank of span{p M(x) p}; equals |H\G/H|.
std::size_t corner_dimension(const RegularRep& rep, const SubgroupDescriptor& H,
                             Execution exec = Execution::Parallel);

// Character of a finite abelian group as exponents: n -> exp(2 pi i k_n / modulus).
struct DualCharacter {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> exponent;  // indexed by element of N
    friend bool operator==(const DualCharacter&, const DualCharacter&) = default;
    friend auto operator<=>(const DualCharacter&, const DualCharacter&) = default;
};

// All characters of N (NotAbelian otherwise), modulus = exponent of N.
std::vector<DualCharacter> dual_group(const FiniteGroup& N);

// action[q][n] = alpha_q(n). Checks it is a homomorphism Q -> Aut(N).
void validate_action(const FiniteGroup& N, const FiniteGroup& Q, const std::vector<std::vector<std::size_t>>& action);

// Omega = union over q of q.H^perp, with (q.phi)(n) = phi(alpha_{q^-1}(n)).
// True iff Omega is all of the dual of N.
bool omega_is_full_dual(const FiniteGroup& N, const std::vector<std::size_t>& H, const FiniteGroup& Q,
                        const std::vector<std::vector<std::size_t>>& action);

}  // namespace hecke
