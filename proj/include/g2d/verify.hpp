#pragma once
// Invariant suites behind `g2deform verify`.  Each check is exact.

#include "g2d/homogeneous.hpp"

#include <random>

namespace g2d {

struct CheckResult {
    std::string suite, name;
    bool passed = false;
    std::string detail;  // first failure, empty on success
};

// Random p-form with small integer and √3-multiple coefficients.
PForm random_form(std::mt19937& rng, int p);

// Killing spinor eigenvalues, Σ e_j·α·e_j on random forms, contraction identities.
std::vector<CheckResult> verify_clifford(const G2StructureTable& t, const std::string& label, unsigned seed = 1,
                                         int forms_per_degree = 20);
// Lie algebra axioms, reductive/orthonormal frame, isotropy inside 𝔤₂, canonical torsion
// and curvature, isotropy Casimir 16/3.
std::vector<CheckResult> verify_space(const HomogeneousSpaceModel& s);
// Freudenthal Casimir values against the Casimir operator of realized irreps, and the
// Killing trace identity on each root datum of a built-in space.
std::vector<CheckResult> verify_casimir(const std::string& space);

bool all_passed(const std::vector<CheckResult>& r);

}  // namespace g2d
