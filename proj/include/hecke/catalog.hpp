#pragma once

#include "hecke/coset_engine.hpp"
#include "hecke/hecke_algebra.hpp"

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hecke {

using Table = std::vector<std::vector<std::size_t>>;

enum class Family {
    Dihedral,
    FiniteSemidirect,
    AxB,
    Heisenberg,
    Psl2,
    Brenken,
    ZWreathZ2,  // the transitive but non-Hecke permutation group on Z x Z_2
};

std::string_view to_string(Family f) noexcept;

// Validated pair description; `source` keeps the JSON it came from.
struct PairSpec {
    Family family = Family::Dihedral;
    std::optional<std::size_t> max_index;
    // finite_semidirect
    Table n_table, q_table, action;
    std::vector<std::size_t> h_elements;
    // psl2
    unsigned long q = 0;
    // brenken
    std::size_t dimension = 0;
    std::vector<RationalMatrix> q_generators;
    bool assume_reduced = false;
    nlohmann::json source;
};

// SpecInvalid with a field-level message.
PairSpec parse_pair_spec(const nlohmann::json& j);

struct SemidirectData {
    std::shared_ptr<const FiniteGroup> N, Q;
    Table action;
    std::vector<std::size_t> h;  // indices in N
};

struct CatalogPair {
    PairSpec spec;
    HeckePairPtr pair;
    std::optional<SemidirectData> semidirect;
    nlohmann::json metadata;
};

CatalogPair build_pair(const PairSpec& spec);
CatalogPair build_pair(const nlohmann::json& spec);

// (n, q) -> n * |N| + q' ordering: element (n, q) has index q * |N| + n.
Table semidirect_table(const FiniteGroup& N, const FiniteGroup& Q, const Table& action);
Table cyclic_table(std::size_t order);
Table direct_product_table(const Table& a, const Table& b);

namespace catalog {

nlohmann::json dihedral();
nlohmann::json tetrahedral();  // Z_2^2 x| Z_3, H = Z_2 x {0}
nlohmann::json axb();
nlohmann::json heisenberg();
nlohmann::json psl2(unsigned long q);
nlohmann::json z_wreath_z2();

GroupElement dihedral_a(std::int64_t n);
GroupElement dihedral_b();
// diag(q^n, q^-n)
GroupElement psl2_x(unsigned long q, long n);

}  // namespace catalog

// ----------------------------------------------------------------- characters

enum class CharacterKind { DihedralPiC, Psl2HallZ, Psl2HallZ1 };

std::string_view to_string(CharacterKind k) noexcept;
CharacterKind parse_character_kind(std::string_view name);

struct CharacterSpec {
    CharacterKind kind = CharacterKind::DihedralPiC;
    std::complex<double> parameter{1.0, 0.0};  // c or z; unused for the z = 1 kind
    unsigned long q = 2;
};

// Value of the character on phi_m. DegenerateParameter for c = 0 or z in {0, 1}.
std::complex<double> char_eval(const CharacterSpec& spec, std::uint64_t m);

// phi_m's representative in the families that carry a phi_n basis.
GroupElement phi_generator(const CatalogPair& pair, std::uint64_t n);
// n with class(id) = class(phi_generator(n)).
std::uint64_t phi_degree(const CatalogPair& pair, CosetId id);

struct CharacterReport {
    std::size_t checks = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

// Compares pi(phi_m * phi_n) with pi(phi_m) pi(phi_n) for 0 <= n <= m <= max_degree.
CharacterReport verify_character(const CatalogPair& pair, const CharacterSpec& spec, std::size_t max_degree,
                                 double tol = 1e-9);

}  // namespace hecke
