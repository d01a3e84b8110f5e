#pragma once

#include "hecke/errors.hpp"
#include "hecke/matrix.hpp"
#include "hecke/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hecke {

enum class Backend { Finite, Dihedral, AxB, Heisenberg, PSL2, MatrixQ };

std::string_view to_string(Backend b) noexcept;

// Index into a finite multiplication table.
struct FiniteIndex {
    std::size_t index = 0;
    friend bool operator==(const FiniteIndex&, const FiniteIndex&) = default;
};

// a^n b^flip in the infinite dihedral group <a, b | b^2 = 1, bab = a^-1>.
struct DihedralWord {
    std::int64_t n = 0;
    bool flip = false;
    friend bool operator==(const DihedralWord&, const DihedralWord&) = default;
};

// The affine map x -> a x + b, i.e. the matrix (a b; 0 1).
struct AffinePair {
    Rational a = 1;
    Rational b = 0;
    friend bool operator==(const AffinePair&, const AffinePair&) = default;
};

// [u, v, w] = (1 v w; 0 1 u; 0 0 1) with w taken in Q/Z.
struct HeisenbergTriple {
    Rational u = 0;
    Rational v = 0;
    Rational w = 0;
    friend bool operator==(const HeisenbergTriple&, const HeisenbergTriple&) = default;
};

using Payload = std::variant<FiniteIndex, DihedralWord, AffinePair, HeisenbergTriple, RationalMatrix>;

// Backend-tagged exact group element. Values built through a Group (or the
// make_* helpers) are in canonical form, so == is group-element equality.
class GroupElement {
public:
    GroupElement(Backend backend, Payload payload)
        : backend_(backend), payload_(std::move(payload)) {}

    Backend backend() const noexcept { return backend_; }
    const Payload& payload() const noexcept { return payload_; }

    template <class T>
    const T& as() const {
        if (const T* p = std::get_if<T>(&payload_)) return *p;
        fail(ErrorCode::BackendMismatch,
             "element payload does not match requested type (backend " +
                 std::string(to_string(backend_)) + ")");
    }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;

private:
    Backend backend_;
    Payload payload_;
};

nlohmann::json to_json(const GroupElement& g);
// Deterministic serialization; used as hash key and ordering tiebreaker.
std::string serialize(const GroupElement& g);

struct ElementHash {
    std::size_t operator()(const GroupElement& g) const;
};

GroupElement make_finite(std::size_t index);
GroupElement make_dihedral(std::int64_t n, bool flip = false);
GroupElement make_axb(const Rational& a, const Rational& b);
GroupElement make_heisenberg(const Rational& u, const Rational& v, const Rational& w);
// Sign-canonical representative of +-m; requires det m == 1.
GroupElement make_psl2(const RationalMatrix& m);
// Sign normalization only: the caller guarantees canonical entries and determinant 1.
GroupElement make_psl2_unchecked(RationalMatrix m);
GroupElement make_matrix(const RationalMatrix& m);

class Group {
public:
    virtual ~Group() = default;

    virtual Backend backend() const noexcept = 0;
    virtual std::string name() const = 0;
    virtual GroupElement identity() const = 0;
    virtual GroupElement multiply(const GroupElement& g, const GroupElement& h) const = 0;
    virtual GroupElement invert(const GroupElement& g) const = 0;
    // Maps any payload of this backend to its canonical form.
    virtual GroupElement canonicalize(const GroupElement& g) const = 0;
    // Payload is well formed for this particular group (dimension, ring).
    virtual bool contains(const GroupElement& g) const { return g.backend() == backend(); }
    virtual GroupElement from_json(const nlohmann::json& j) const = 0;

    virtual std::optional<std::size_t> order() const { return std::nullopt; }
    // All elements, in index order; NotFinite for infinite backends.
    virtual std::vector<GroupElement> elements() const;

    GroupElement conjugate(const GroupElement& g, const GroupElement& by) const {
        return multiply(multiply(by, g), invert(by));
    }
    GroupElement power(const GroupElement& g, long exponent) const;

    // BackendMismatch unless g carries this group's backend tag.
    void require_backend(const GroupElement& g) const;
};

using GroupPtr = std::shared_ptr<const Group>;

class FiniteGroup final : public Group {
public:
    // table[i][j] = index of g_i g_j. Validates the group axioms (SpecInvalid).
    explicit FiniteGroup(std::vector<std::vector<std::size_t>> table);

    Backend backend() const noexcept override { return Backend::Finite; }
    std::string name() const override;
    GroupElement identity() const override { return make_finite(identity_); }
    GroupElement multiply(const GroupElement& g, const GroupElement& h) const override;
    GroupElement invert(const GroupElement& g) const override;
    GroupElement canonicalize(const GroupElement& g) const override;
    bool contains(const GroupElement& g) const override;
    GroupElement from_json(const nlohmann::json& j) const override;
    std::optional<std::size_t> order() const override { return table_.size(); }
    std::vector<GroupElement> elements() const override;

    std::size_t size() const noexcept { return table_.size(); }
    std::size_t product(std::size_t i, std::size_t j) const { return table_[i][j]; }
    std::size_t inverse(std::size_t i) const { return inverse_[i]; }
    std::size_t identity_index() const noexcept { return identity_; }
    const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }
    bool is_abelian() const;

private:
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
    std::size_t identity_ = 0;
};

class DihedralGroup final : public Group {
public:
    Backend backend() const noexcept override { return Backend::Dihedral; }
    std::string name() const override { return "infinite dihedral"; }
    GroupElement identity() const override { return make_dihedral(0, false); }
    GroupElement multiply(const GroupElement& g, const GroupElement& h) const override;
    GroupElement invert(const GroupElement& g) const override;
    GroupElement canonicalize(const GroupElement& g) const override;
    GroupElement from_json(const nlohmann::json& j) const override;
};

// Rational ax+b group.
class AffineLineGroup final : public Group {
public:
    Backend backend() const noexcept override { return Backend::AxB; }
    std::string name() const override { return "rational ax+b"; }
    GroupElement identity() const override { return make_axb(1, 0); }
    GroupElement multiply(const GroupElement& g, const GroupElement& h) const override;
    GroupElement invert(const GroupElement& g) const override;
    GroupElement canonicalize(const GroupElement& g) const override;
    bool contains(const GroupElement& g) const override;
    GroupElement from_json(const nlohmann::json& j) const override;
};

// Rational Heisenberg group modulo the integer centre.
class HeisenbergGroup final : public Group {
public:
    Backend backend() const noexcept override { return Backend::Heisenberg; }
    std::string name() const override { return "rational Heisenberg mod integer centre"; }
    GroupElement identity() const override { return make_heisenberg(0, 0, 0); }
    GroupElement multiply(const GroupElement& g, const GroupElement& h) const override;
    GroupElement invert(const GroupElement& g) const override;
    GroupElement canonicalize(const GroupElement& g) const override;
    GroupElement from_json(const nlohmann::json& j) const override;
};

// PSL(2, Z[1/q]).
class Psl2Group final : public Group {
public:
    explicit Psl2Group(unsigned long q);

    Backend backend() const noexcept override { return Backend::PSL2; }
    std::string name() const override;
    GroupElement identity() const override;
    GroupElement multiply(const GroupElement& g, const GroupElement& h) const override;
    GroupElement invert(const GroupElement& g) const override;
    GroupElement canonicalize(const GroupElement& g) const override;
    bool contains(const GroupElement& g) const override;
    GroupElement from_json(const nlohmann::json& j) const override;

    unsigned long q() const noexcept { return q_; }

private:
    unsigned long q_;
};

// GL(n, Q).
class MatrixGroup final : public Group {
public:
    explicit MatrixGroup(std::size_t dimension);

    Backend backend() const noexcept override { return Backend::MatrixQ; }
    std::string name() const override;
    GroupElement identity() const override;
    GroupElement multiply(const GroupElement& g, const GroupElement& h) const override;
    GroupElement invert(const GroupElement& g) const override;
    GroupElement canonicalize(const GroupElement& g) const override;
    bool contains(const GroupElement& g) const override;
    GroupElement from_json(const nlohmann::json& j) const override;

    std::size_t dimension() const noexcept { return dimension_; }

private:
    std::size_t dimension_;
};

// A subgroup H of G: membership predicate plus a finite generating set, and
// optionally a left-coset normal form (coset_label(x) == coset_label(y) iff
// x^-1 y in H).
struct SubgroupDescriptor {
    std::function<bool(const GroupElement&)> member;
    std::vector<GroupElement> generators;
    std::function<GroupElement(const GroupElement&)> canonicalize_coset;

    bool has_coset_labels() const noexcept { return static_cast<bool>(canonicalize_coset); }
};

inline bool is_member(const SubgroupDescriptor& H, const GroupElement& g) { return H.member(g); }

// Checked in both directions: tags must agree.
void require_same_backend(const GroupElement& g, const GroupElement& h);

// Parses a rational from a JSON string or integer.
Rational rational_from_json(const nlohmann::json& j);
RationalMatrix matrix_from_json(const nlohmann::json& j, std::size_t n);

}  // namespace hecke
