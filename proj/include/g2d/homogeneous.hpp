#pragma once
// The four normal homogeneous nearly-G2 spaces G/H as exact Lie-algebra data.

#include "g2d/algebraics.hpp"
#include "g2d/clifford_g2.hpp"

#include <optional>
#include <string>
#include <vector>

namespace g2d {

class unknown_space : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Lie algebra given by structure constants in a fixed basis.  Built-in algebras
// also keep the matrix model they were derived from.
class LieAlgebraModel {
public:
    LieAlgebraModel() = default;
    static LieAlgebraModel from_matrices(std::string name, std::vector<std::string> labels,
                                         std::vector<FieldMatrix> basis);
    // structure[i][j] = coordinates of [b_i, b_j]
    static LieAlgebraModel from_structure(std::string name, std::vector<std::string> labels,
                                          std::vector<std::vector<FieldVector>> structure);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const FieldVector& structure(std::size_t i, std::size_t j) const { return structure_[i][j]; }
    const FieldMatrix& killing() const { return killing_; }
    bool has_matrices() const { return !matrices_.empty(); }
    const std::vector<FieldMatrix>& matrices() const { return matrices_; }

    FieldVector bracket(const FieldVector& x, const FieldVector& y) const;
    FieldMatrix ad(const FieldVector& x) const;  // columns are [x, b_j]
    FieldElement killing(const FieldVector& x, const FieldVector& y) const;
    FieldVector coordinates(const FieldMatrix& m) const;  // matrix model only
    FieldMatrix matrix(const FieldVector& x) const;       // matrix model only
    FieldVector unit(std::size_t i) const;

    std::string check_antisymmetry() const;
    std::string check_jacobi() const;
    std::string check_killing() const;  // recomputes B from the constants

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::vector<FieldVector>> structure_;
    FieldMatrix killing_;
    std::vector<FieldMatrix> matrices_;
    SpanCoordinates coords_;
    void finish();
};

// A simple or abelian ideal, given by basis indices of the ambient algebra and its
// coroots (ambient coordinates).  For 𝔥 the indices refer to h_basis.
struct FactorData {
    std::string name;
    std::vector<std::size_t> basis;
    std::vector<FieldVector> coroots;
    bool abelian = false;
};

struct HomogeneousSpaceModel {
    std::string name;
    LieAlgebraModel g;
    std::vector<FieldVector> h_basis;
    std::vector<FieldVector> m_basis;  // e1..e7, orthonormal for −(3/40)B
    G2StructureTable phi;
    int scal_constant = 42;
    std::vector<FactorData> g_factors;  // empty for user-supplied spaces
    std::vector<FactorData> h_factors;

    // derived at construction
    std::vector<FieldMatrix> isotropy;  // 7x7 per h_basis element
    SpanCoordinates mh;                 // coordinates over m_basis ++ h_basis

    std::size_t h_dim() const { return h_basis.size(); }
    FieldVector m_part(const FieldVector& x) const;  // 7 frame coordinates
    FieldVector h_part(const FieldVector& x) const;  // h_basis coordinates
    FieldVector from_h(const FieldVector& c) const;  // h coordinates -> g coordinates
    FieldVector from_m(const FieldVector& c) const;
    FieldMatrix isotropy_of(const FieldVector& h_coords) const;
    // 𝔥 acting on itself, in h_basis coordinates
    FieldMatrix h_adjoint(std::size_t a) const;
    bool has_root_data() const { return !g_factors.empty(); }
};

const std::vector<std::string>& space_names();
HomogeneousSpaceModel build_space(const std::string& name);
// Assemble derived data and assert the invariants (throws std::invalid_argument).
HomogeneousSpaceModel finish_space(HomogeneousSpaceModel s, bool validate = true);

// Every invariant check returns an empty string on success.
std::string check_reductive(const HomogeneousSpaceModel& s);
std::string check_metric(const HomogeneousSpaceModel& s);
std::string check_orthogonal(const HomogeneousSpaceModel& s);
std::string check_isotropy_in_g2(const HomogeneousSpaceModel& s);

// −[X, Y]_𝔥 in g coordinates
FieldVector canonical_curvature(const HomogeneousSpaceModel& s, const FieldVector& x, const FieldVector& y);
// The curvature as a 2-form on 𝔪 through the isotropy representation.
PForm curvature_form(const HomogeneousSpaceModel& s, int i, int j);
std::string canonical_torsion_check(const HomogeneousSpaceModel& s);
std::string canonical_curvature_check(const HomogeneousSpaceModel& s);

struct G2Subalgebra {
    std::vector<FieldMatrix> basis;                     // 14 antisymmetric 7x7 matrices
    std::vector<std::vector<FieldVector>> structure;    // [b_i, b_j] in the basis
    SpanCoordinates coords;                             // over flattened matrices
    FieldVector coordinates(const FieldMatrix& a) const;
};
G2Subalgebra g2_subalgebra(const G2StructureTable& t);

class non_scalar_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
// Positive constant c with Σ λ(a_k)² = −c·id for a −(3/40)B-orthonormal basis a_k of 𝔥.
Rational isotropy_casimir(const HomogeneousSpaceModel& s);

// Round trip through the TOML space format.
std::string space_to_toml(const HomogeneousSpaceModel& s);
HomogeneousSpaceModel space_from_toml(const std::string& text, bool validate = true);
HomogeneousSpaceModel load_space_file(const std::string& path, bool validate = true);

}  // namespace g2d
