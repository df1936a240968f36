#include "doctest.h"

#include "g2d/homogeneous.hpp"

using namespace g2d;

namespace {

const std::vector<HomogeneousSpaceModel>& spaces() {
    static const std::vector<HomogeneousSpaceModel> all = [] {
        std::vector<HomogeneousSpaceModel> v;
        for (const auto& n : space_names()) v.push_back(build_space(n));
        return v;
    }();
    return all;
}

}  // namespace

TEST_CASE("dimensions") {
    const std::map<std::string, std::pair<std::size_t, std::size_t>> dims = {
        {"spin7-g2", {21, 14}}, {"so5-so3", {10, 3}}, {"sp2sp1-sp1sp1", {13, 6}}, {"su3su2-su2u1", {11, 4}}};
    for (const auto& s : spaces()) {
        CAPTURE(s.name);
        CHECK(s.g.dim() == dims.at(s.name).first);
        CHECK(s.h_dim() == dims.at(s.name).second);
        CHECK(s.isotropy.size() == s.h_dim());
    }
}

TEST_CASE("Lie algebra axioms") {
    for (const auto& s : spaces()) {
        CAPTURE(s.name);
        CHECK(s.g.check_antisymmetry() == "");
        CHECK(s.g.check_jacobi() == "");
        CHECK(s.g.check_killing() == "");
    }
}

TEST_CASE("reductive, orthogonal, orthonormal frame, isotropy inside g2") {
    for (const auto& s : spaces()) {
        CAPTURE(s.name);
        CHECK(check_reductive(s) == "");
        CHECK(check_orthogonal(s) == "");
        CHECK(check_metric(s) == "");
        CHECK(check_isotropy_in_g2(s) == "");
    }
}

TEST_CASE("canonical torsion is a multiple of phi") {
    for (const auto& s : spaces()) {
        CAPTURE(s.name);
        CHECK(canonical_torsion_check(s) == "");
    }
}

TEST_CASE("canonical curvature takes values in g2") {
    for (const auto& s : spaces()) {
        CAPTURE(s.name);
        CHECK(canonical_curvature_check(s) == "");
    }
}

TEST_CASE("the bracket-derived table on spin7/g2 is a G2 structure") {
    const auto& s = spaces()[0];
    REQUIRE(s.name == "spin7-g2");
    CHECK(s.phi.check_phi_phi() == "");
    CHECK(s.phi.check_psi_phi() == "");
}

TEST_CASE("stabilizer of phi is 14-dimensional and closed") {
    for (const auto& s : spaces()) {
        const G2Subalgebra g2 = g2_subalgebra(s.phi);
        CHECK(g2.basis.size() == 14);
        for (const auto& iso : s.isotropy) CHECK_NOTHROW(g2.coordinates(iso));
    }
}

TEST_CASE("isotropy Casimir is scalar") {
    // Oracle: trace of Σ λ(a_k)² over 7 dimensions, with the same Gram normalization.
    for (const auto& s : spaces()) {
        CAPTURE(s.name);
        const Rational c = isotropy_casimir(s);
        CHECK(c > 0);
        FieldMatrix gram(s.h_dim(), s.h_dim());
        for (std::size_t a = 0; a < s.h_dim(); ++a)
            for (std::size_t b = 0; b < s.h_dim(); ++b)
                gram(a, b) = s.g.killing(s.h_basis[a], s.h_basis[b]) * FieldElement(Rational(-3, 40));
        const FieldMatrix gi = inverse(gram);
        FieldElement tr;
        for (std::size_t a = 0; a < s.h_dim(); ++a)
            for (std::size_t b = 0; b < s.h_dim(); ++b) tr += gi(a, b) * (s.isotropy[a] * s.isotropy[b]).trace();
        CHECK(-tr == FieldElement(c * 7));
    }
}

TEST_CASE("TOML round trip") {
    for (const auto& s : spaces()) {
        CAPTURE(s.name);
        const auto back = space_from_toml(space_to_toml(s));
        CHECK(back.name == s.name);
        CHECK(back.g.dim() == s.g.dim());
        for (std::size_t i = 0; i < s.g.dim(); ++i)
            for (std::size_t j = 0; j < s.g.dim(); ++j) CHECK(back.g.structure(i, j) == s.g.structure(i, j));
        CHECK(back.m_basis == s.m_basis);
        CHECK(back.h_basis == s.h_basis);
        CHECK(back.isotropy == s.isotropy);
        CHECK(canonical_torsion_check(back) == "");
        CHECK_FALSE(back.has_root_data());
    }
}

TEST_CASE("corrupted inputs are rejected") {
    const auto& so5 = spaces()[1];
    REQUIRE(so5.name == "so5-so3");
    std::string text = space_to_toml(so5);
    // flip the sign of one φ triple
    const auto pos = text.find("[1, 2, 3, 5]");
    REQUIRE(pos != std::string::npos);
    std::string bad = text;
    bad.replace(pos, 12, "[-1, 2, 3, 5]");
    CHECK_THROWS_AS(space_from_toml(bad), std::invalid_argument);
    const auto raw = space_from_toml(bad, false);
    CHECK(canonical_torsion_check(raw) != "");

    CHECK_THROWS_AS(space_from_toml("name = \"x\"\n"), std::invalid_argument);
    CHECK_THROWS_AS(space_from_toml("name = 1.5\n"), std::runtime_error);
    CHECK_THROWS_AS(build_space("s7"), unknown_space);
}
