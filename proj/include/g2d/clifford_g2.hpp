#pragma once
// Spinors of R^7 modelled as Λ⁰ ⊕ Λ¹, Clifford multiplication through a G2 3-form,
// and the type decomposition of 2-forms.

#include "g2d/algebraics.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace g2d {

using Vec7 = std::array<FieldElement, 7>;

Vec7 unit_vector(int i);  // 0-based

// Exterior form on R^7.  Stored sparsely by the bitmask of an increasing index set;
// the coefficient of e_{i1}∧…∧e_{ip} with i1 < … < ip.
class PForm {
public:
    explicit PForm(int degree = 0);
    static PForm from_vector(const Vec7& v);
    // β_ij = a(i, j) for an antisymmetric 7x7 matrix
    static PForm from_matrix(const FieldMatrix& a);
    static PForm basis(const std::vector<int>& indices);  // sorted or not; sign applied

    int degree() const { return degree_; }
    // antisymmetric access with 0-based indices in any order
    FieldElement get(const std::vector<int>& indices) const;
    void set(const std::vector<int>& indices, const FieldElement& value);
    const std::map<std::uint8_t, FieldElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    PForm& operator+=(const PForm& o);
    PForm& operator-=(const PForm& o);
    friend PForm operator+(PForm a, const PForm& b) { return a += b; }
    friend PForm operator-(PForm a, const PForm& b) { return a -= b; }
    PForm scaled(const FieldElement& s) const;
    bool operator==(const PForm& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

    std::string str() const;  // "e124 + e137 - 2*e156" with 1-based indices

private:
    int degree_;
    std::map<std::uint8_t, FieldElement> terms_;
    void add(std::uint8_t mask, const FieldElement& c);
    friend PForm wedge(const PForm&, const PForm&);
    friend PForm interior(const Vec7&, const PForm&);
};

PForm wedge(const PForm& a, const PForm& b);
PForm interior(const Vec7& v, const PForm& a);  // v ⌟ a

struct SignedTriple {
    int sign;
    std::array<int, 3> idx;  // 1-based
};

// φ and ψ = *φ in an orthonormal frame.  ψ uses the orientation induced by φ,
// which is the one making ψ_ijkl φ_klp = −4 φ_ijp.
class G2StructureTable {
public:
    static constexpr int tau0 = 4;

    // Validates the contraction identities; throws std::invalid_argument otherwise.
    static G2StructureTable from_triples(const std::vector<SignedTriple>& triples);
    // No validation: for negative controls and for inspecting broken input.
    static G2StructureTable unchecked(const std::vector<SignedTriple>& triples);

    const FieldElement& phi(int i, int j, int k) const { return phi_[(i * 7 + j) * 7 + k]; }
    const FieldElement& psi(int i, int j, int k, int l) const { return psi_[((i * 7 + j) * 7 + k) * 7 + l]; }
    int orientation() const { return orientation_; }  // sign of e1..e7 relative to the φ volume form
    const std::vector<SignedTriple>& triples() const { return triples_; }
    PForm phi_form() const;
    PForm psi_form() const;

    // Each returns an empty string on success, a description of the first failure otherwise.
    std::string check_phi_phi() const;   // φ_ijk φ_ijl = 6 δ_kl
    std::string check_phi_norm() const;  // φ_ijk φ_ijk = 42
    std::string check_psi_phi() const;   // ψ_ijkl φ_klp = −4 φ_ijp

    std::string str() const;

private:
    std::vector<SignedTriple> triples_;
    std::vector<FieldElement> phi_ = std::vector<FieldElement>(343);
    std::vector<FieldElement> psi_ = std::vector<FieldElement>(2401);
    int orientation_ = 1;
    void fill_psi();
};

PForm hodge_star(const PForm& a, const G2StructureTable& t);

struct Spinor {
    FieldElement scalar_part;
    Vec7 vector_part;

    static Spinor killing() { return {FieldElement(1L), {}}; }
    static Spinor from_vector(const FieldVector& v);  // length 8, scalar first
    FieldVector to_vector() const;
    bool operator==(const Spinor& o) const { return scalar_part == o.scalar_part && vector_part == o.vector_part; }
};

Vec7 cross_product(const Vec7& x, const Vec7& y, const G2StructureTable& t);

// Matrix of Clifford multiplication by e_a on (f, Z) ∈ Λ⁰ ⊕ Λ¹, 0-based a.
FieldMatrix clifford_matrix(int a, const G2StructureTable& t);
// The matrix of β·, summing β_I e_{i1}·(e_{i2}·(…)) over increasing I.
FieldMatrix form_action_matrix(const PForm& beta, const G2StructureTable& t);

Spinor clifford_mul_vector(const Vec7& y, const Spinor& s, const G2StructureTable& t);
Spinor clifford_mul_form(const PForm& beta, const Spinor& s, const G2StructureTable& t);

struct Lambda2Split {
    PForm seven;     // β₇
    PForm fourteen;  // β₁₄
};
Lambda2Split lambda2_project(const PForm& beta, const G2StructureTable& t);

// (β ⌟ φ)_k = Σ_{i<j} β_ij φ_ijk; zero exactly for β ∈ Λ²₁₄
Vec7 contract_with_phi(const PForm& beta, const G2StructureTable& t);
bool is_instanton_form(const PForm& beta, const G2StructureTable& t);

// Derivation action of an antisymmetric matrix on φ; zero exactly on 𝔤₂.
PForm derivation_on_phi(const FieldMatrix& a, const G2StructureTable& t);

// Σ_j e_j·α·e_j = (−1)^{p+1}(7 − 2p) α on all eight basis spinors
bool casimir_identity_check(const PForm& alpha, const G2StructureTable& t);

}  // namespace g2d
