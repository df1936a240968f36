#pragma once
// Explicit G-irreps, H-equivariant homomorphisms into spinor-valued modules, and
// the canonical Dirac operator on each multiplicity space.

#include "g2d/reps.hpp"

#include <optional>

namespace g2d {

enum class StructureGroup { H, G2 };
std::string to_string(StructureGroup g);
StructureGroup parse_structure_group(const std::string& s);  // "h" or "g2"

class not_found_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class inconsistency_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Basis of joint eigenvectors for commuting operators with integer spectra.
// Columns of P are grouped by weight, weights in decreasing lexicographic order.
struct WeightBasis {
    FieldMatrix P, P_inv;
    std::vector<Weight> weights;
};
WeightBasis joint_eigenbasis(const std::vector<FieldMatrix>& ops);

struct IrrepRealization {
    Weight highest_weight;
    long dim = 0;
    std::string construction;          // adjoint | defining | tensor-generated
    std::vector<FieldMatrix> matrices;  // one per basis element of 𝔤
    FieldMatrix of(const FieldVector& x) const;
};
IrrepRealization realize_irrep(const SpaceData& sd, const Weight& lambda, int max_depth = 3);
std::string check_representation(const LieAlgebraModel& g, const IrrepRealization& w);

// A module for 𝔥, one matrix per h_basis element.
struct HModule {
    std::vector<FieldMatrix> action;
    std::size_t dim() const { return action.empty() ? 0 : action[0].rows(); }
    FieldMatrix of(const FieldVector& h_coords) const;
};
HModule e_module(const HomogeneousSpaceModel& s, StructureGroup e);
HModule spinor_module(const HomogeneousSpaceModel& s);  // Λ⁰ ⊕ Λ¹
HModule tensor_module(const HModule& a, const HModule& b);
HModule build_target_module(const HomogeneousSpaceModel& s, StructureGroup e);  // (Λ⁰⊕Λ¹)⊗E
std::string check_module(const HomogeneousSpaceModel& s, const HModule& m);

// −Σ (K⁻¹)^{kl} ρ(h_k)ρ(h_l) with K = −B on the listed h_basis indices (all when empty).
FieldMatrix casimir_operator(const HomogeneousSpaceModel& s, const HModule& m, std::vector<std::size_t> indices = {});
Character module_character(const SpaceData& sd, const HModule& m);

struct CasimirComponent {
    Rational casimir;
    FieldMatrix basis;  // dim E × d, columns span the eigenspace
    HModule module;     // action in that basis
    IrrepMultiset irreps;
};
std::vector<CasimirComponent> casimir_components(const SpaceData& sd, const HModule& e);
// Isotypic component of an H highest weight, cut out by factor Casimirs and u(1) charges.
CasimirComponent isotypic_component(const SpaceData& sd, const HModule& e, const Weight& hw);

// (Λ⁰⊕Λ¹)⊗E in adapted bases: the spinor basis is 1 ⊕ (weight basis of 𝔪) and E
// carries a weight basis, so index v = s·d + e with s = 0 the Λ⁰ row block.
struct TargetModule {
    std::size_t e_dim = 0;
    FieldMatrix spinor_P, spinor_P_inv, e_P, e_P_inv;
    std::vector<Weight> spinor_weights, e_weights;
    std::vector<FieldMatrix> spinor_action, e_action;  // per h_basis element
    std::vector<FieldMatrix> clifford;                 // e_i· on the spinor factor
    FieldMatrix phi_mult;                              // φ· on the spinor factor
    std::size_t dim() const { return 8 * e_dim; }
    Weight weight(std::size_t v) const;
    FieldMatrix action(std::size_t a) const;  // full dim × dim matrix
};
TargetModule adapt_target(const SpaceData& sd, const HModule& e);

struct EquivariantHomSpace {
    Weight source;
    std::size_t w_dim = 0;
    std::vector<Weight> w_weights;
    FieldMatrix w_P, w_P_inv;             // weight basis of W
    std::vector<FieldMatrix> w_h_action;  // adapted τ*(h_a)
    std::vector<FieldMatrix> w_frame;     // adapted τ*(e_i)
    std::vector<FieldMatrix> basis;       // Φ_a, dim V × dim W in adapted bases
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // entry where Φ_a is 1 and the others vanish
    std::size_t dim() const { return basis.size(); }
};
EquivariantHomSpace hom_space(const SpaceData& sd, const IrrepRealization& w, const TargetModule& v);
std::string check_equivariance(const EquivariantHomSpace& hs, const TargetModule& v);

struct DiracBlock {
    Weight weight;
    std::size_t hom_dim = 0;
    std::size_t lambda1_dim = 0;           // maps with values in Λ¹⊗E
    FieldMatrix A;                         // D^{−1,can} on the multiplicity space
    FieldMatrix phi_shift;                 // φ· on the multiplicity space
    EigenStructure eigen;
    std::map<Rational, long> sector_dims;  // dim ker(A − λ) ∩ Λ¹-sector
    bool sector_complete = false;          // sector spanned by those eigenvectors
    bool shift_identity = false;           // (A + φ·/3)² = 49/9 on sector eigenvectors
    long deformation_dim = 0;
};
DiracBlock dirac_block(const TargetModule& v, const EquivariantHomSpace& hs);
// D applied to one homomorphism, before solving for A (adapted bases).
FieldMatrix dirac_apply(const TargetModule& v, const EquivariantHomSpace& hs, const FieldMatrix& phi);

struct CandidateResult {
    Weight weight;
    long dim = 0;
    long lambda1_multiplicity = 0;  // character theory, Hom(W, 𝔪⊗E_c)
    long lambda0_multiplicity = 0;  // character theory, Hom(W, E_c)
    std::string construction;
    std::optional<DiracBlock> block;
};

struct ComponentResult {
    Rational casimir;
    IrrepMultiset irreps;
    long dim = 0;
    std::vector<CandidateResult> candidates;
};

struct DeformationReport {
    std::string space;
    StructureGroup group = StructureGroup::G2;
    std::vector<ComponentResult> components;
    IrrepMultiset step1;         // Σ Λ¹ multiplicities over candidates
    IrrepMultiset deformations;  // Σ deformation_dim
    long complex_dim = 0;
    double seconds = 0;
};
// threads <= 0 reads G2D_THREADS, falling back to the hardware concurrency
DeformationReport assemble_report(const std::string& space, StructureGroup group, int threads = 0);
std::string irrep_label(const SpaceData& sd, const Weight& w);

// Two-dimensional block in the basis given by the natural maps
// w ↦ Σ_a e_a ⊗ pr_E(e_a ∧ π_k(w_𝔪)), π_1 onto span(e1,e2,e3) and π_2 onto span(e4..e7).
struct MixingBlock {
    Weight weight, e_irrep;
    FieldMatrix M;                           // 2 × 2
    std::map<Rational, FieldElement> ratio;  // eigenvalue -> c₂/c₁ of its eigenvector
};
MixingBlock mixing_block(const std::string& space, const Weight& w, const Weight& e_irrep);

}  // namespace g2d
