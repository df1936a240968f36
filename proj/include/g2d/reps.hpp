#pragma once
// Root data, Casimirs, characters and branching for the groups G and H.
//
// Weights are integer vectors of Dynkin labels, one block per simple factor; an
// abelian u(1) factor contributes one coordinate k, the eigenvalue of −i·ρ(u)
// on its generator u.

#include "g2d/algebraics.hpp"
#include "g2d/homogeneous.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2d {

using Weight = std::vector<long>;
using Character = std::map<Weight, long>;        // weight -> multiplicity
using IrrepMultiset = std::map<Weight, long>;    // highest weight -> multiplicity

class inconsistent_character : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class unknown_group : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RootDatum {
    std::string name;
    std::vector<std::string> factor_names;
    std::vector<std::size_t> factor_offset;  // first coordinate of each factor
    std::vector<std::size_t> factor_rank;
    std::vector<bool> factor_abelian;
    std::size_t rank = 0;
    std::vector<bool> abelian;                 // per coordinate
    std::vector<std::vector<long>> cartan;     // row i = α_i in Dynkin labels; zero rows for u(1)
    std::vector<std::vector<Rational>> gram;   // −B on fundamental weights
    std::vector<Weight> positive_roots;        // Dynkin labels
    std::vector<FieldVector> coroots;          // ambient 𝔤 coordinates

    Rational inner(const Weight& a, const Weight& b) const;
    Weight half_sum() const;  // 1 on semisimple coordinates, 0 on u(1)
    bool is_dominant(const Weight& w) const;
    Weight reflect(const Weight& w, std::size_t i) const;
    Weight dominant_conjugate(const Weight& w) const;
};

// Build from coroots of the listed factors of a space (ambient Killing form).
RootDatum make_root_datum(const std::string& name, const HomogeneousSpaceModel& s,
                          const std::vector<FactorData>& factors);

const std::vector<std::string>& group_names();
const RootDatum& group_datum(const std::string& name);

// Linear restriction of G weights to H weights.
struct BranchingMap {
    std::vector<std::vector<long>> matrix;  // rank(H) x rank(G)
    Weight restrict(const Weight& w) const;
};
BranchingMap make_branching_map(const RootDatum& g, const RootDatum& h);

struct SpaceData {
    const HomogeneousSpaceModel* space;
    const RootDatum* g;
    const RootDatum* h;
    BranchingMap map;
};
// Cached for the built-in spaces; throws unknown_space otherwise.
const SpaceData& space_data(const std::string& space);

Rational casimir_eigenvalue(const RootDatum& d, const Weight& lambda);
long weyl_dimension(const RootDatum& d, const Weight& lambda);
Character weight_multiplicities(const RootDatum& d, const Weight& lambda);
std::vector<Weight> enumerate_casimir_solutions(const RootDatum& d, const Rational& target);

Character restrict_character(const Character& c, const BranchingMap& map);
Character character_of(const RootDatum& d, const IrrepMultiset& irreps);
Character tensor_character(const Character& a, const Character& b);
Character adjoint_character(const RootDatum& d);
IrrepMultiset decompose(const RootDatum& d, Character c);  // throws inconsistent_character
IrrepMultiset branch(const RootDatum& g, const Weight& lambda, const BranchingMap& map, const RootDatum& h);
IrrepMultiset tensor_decompose(const RootDatum& d, const IrrepMultiset& a, const IrrepMultiset& b);
long hom_multiplicity(const RootDatum& g, const Weight& w, const IrrepMultiset& v, const BranchingMap& map,
                      const RootDatum& h);
// 𝔪_ℂ as an H-module: branch(adjoint of G) minus the adjoint of H.
IrrepMultiset isotropy_module(const SpaceData& sd);

std::string weight_str(const Weight& w);  // "(0,1,0)"
Weight parse_weight(const std::string& text);

}  // namespace g2d
