#include "doctest.h"

#include "g2d/dirac.hpp"

using namespace g2d;

namespace {

Rational q(long p, long d = 1) {
    Rational r(p, d);
    r.canonicalize();
    return r;
}

const std::vector<std::string> kSpaces = {"so5-so3", "spin7-g2", "sp2sp1-sp1sp1", "su3su2-su2u1"};

IrrepMultiset ms(std::initializer_list<std::pair<Weight, long>> l) {
    IrrepMultiset m;
    for (const auto& [w, k] : l) m[w] = k;
    return m;
}

}  // namespace

TEST_CASE("realized irreps satisfy the bracket relations and have Weyl dimension") {
    struct Case {
        std::string space;
        Weight w;
        long dim;
        std::string construction;
    };
    const std::vector<Case> cases = {
        {"so5-so3", {0, 2}, 10, "adjoint"},        {"so5-so3", {1, 0}, 5, "defining"},
        {"so5-so3", {2, 0}, 14, "tensor-generated"}, {"spin7-g2", {0, 1, 0}, 21, "adjoint"},
        {"spin7-g2", {0, 0, 1}, 7, "defining"},  {"spin7-g2", {0, 0, 2}, 27, "tensor-generated"}, {"sp2sp1-sp1sp1", {0, 1, 0}, 5, "tensor-generated"},
        {"sp2sp1-sp1sp1", {2, 0, 0}, 10, "adjoint"}, {"sp2sp1-sp1sp1", {0, 0, 2}, 3, "adjoint"},
        {"su3su2-su2u1", {1, 1, 0}, 8, "adjoint"},   {"su3su2-su2u1", {1, 0, 1}, 6, "tensor-generated"}, {"su3su2-su2u1", {1, 0, 0}, 3, "defining"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.space);
        CAPTURE(weight_str(c.w));
        const SpaceData& sd = space_data(c.space);
        const IrrepRealization r = realize_irrep(sd, c.w);
        CHECK(r.dim == c.dim);
        CHECK(r.construction == c.construction);
        CHECK(check_representation(sd.space->g, r).empty());
        // the realized module has the expected character
        std::vector<FieldMatrix> ops;
        for (const auto& cr : sd.g->coroots) ops.push_back(r.of(cr).scaled(-FieldElement::imag_unit()));
        Character ch;
        for (const Weight& w : joint_eigenbasis(ops).weights) ch[w] += 1;
        CHECK(ch == weight_multiplicities(*sd.g, c.w));
    }
}

TEST_CASE("realize_irrep rejects bad weights") {
    const SpaceData& sd = space_data("so5-so3");
    CHECK_THROWS_AS(realize_irrep(sd, {-1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(realize_irrep(sd, {1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(realize_irrep(sd, {4, 4}, 2), not_found_error);
    // spinors never occur in tensor powers of the vector representation
    CHECK_THROWS_AS(realize_irrep(sd, {0, 1}), not_found_error);
}

TEST_CASE("joint eigenbasis needs diagonalizable integer spectra") {
    FieldMatrix nil(2, 2);
    nil(0, 1) = FieldElement(1L);
    CHECK_THROWS(joint_eigenbasis({nil}));
    FieldMatrix half = FieldMatrix::identity(2).scaled(FieldElement(q(1, 2)));
    CHECK_THROWS(joint_eigenbasis({half}));
    FieldMatrix d(2, 2);
    d(0, 0) = FieldElement(-1L);
    d(1, 1) = FieldElement(3L);
    const WeightBasis wb = joint_eigenbasis({d});
    CHECK(wb.weights == std::vector<Weight>{{3}, {-1}});
    CHECK(wb.P * wb.P_inv == FieldMatrix::identity(2));
}

TEST_CASE("target modules are H-modules of the right size") {
    for (const auto& sp : kSpaces) {
        CAPTURE(sp);
        const SpaceData& sd = space_data(sp);
        for (auto grp : {StructureGroup::H, StructureGroup::G2}) {
            const HModule v = build_target_module(*sd.space, grp);
            const std::size_t e_dim = grp == StructureGroup::G2 ? 14 : sd.space->h_dim();
            CHECK(v.dim() == 8 * e_dim);
            CHECK(check_module(*sd.space, v).empty());
        }
    }
    CHECK(build_target_module(*space_data("so5-so3").space, StructureGroup::G2).dim() == 112);
    CHECK(build_target_module(*space_data("sp2sp1-sp1sp1").space, StructureGroup::H).dim() == 48);
}

TEST_CASE("E splits into Casimir eigenspaces matching its character") {
    const SpaceData& sd = space_data("sp2sp1-sp1sp1");
    const HModule e = e_module(*sd.space, StructureGroup::G2);
    CHECK(decompose(*sd.h, module_character(sd, e)) == ms({{{0, 2}, 1}, {{2, 0}, 1}, {{1, 3}, 1}}));
    const auto comps = casimir_components(sd, e);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0].casimir == q(2, 5));
    CHECK(comps[0].irreps == ms({{{0, 2}, 1}}));
    CHECK(comps[1].casimir == q(2, 3));
    CHECK(comps[1].irreps == ms({{{2, 0}, 1}}));
    CHECK(comps[2].casimir == 1);
    CHECK(comps[2].irreps == ms({{{1, 3}, 1}}));
    for (const auto& c : comps) CHECK(check_module(*sd.space, c.module).empty());

    const CasimirComponent iso = isotypic_component(sd, e, {1, 3});
    CHECK(iso.module.dim() == 8);
    CHECK(isotypic_component(sd, e, {5, 5}).module.dim() == 0);
}

TEST_CASE("equivariant maps are equivariant and counted by characters") {
    for (const auto& sp : kSpaces) {
        CAPTURE(sp);
        const SpaceData& sd = space_data(sp);
        for (const auto& comp : casimir_components(sd, e_module(*sd.space, StructureGroup::G2))) {
            if (comp.casimir == 0) continue;
            const TargetModule v = adapt_target(sd, comp.module);
            const IrrepMultiset target = [&] {
                IrrepMultiset t = tensor_decompose(*sd.h, isotropy_module(sd), comp.irreps);
                for (const auto& [w, m] : comp.irreps) t[w] += m;
                return t;
            }();
            for (const Weight& w : enumerate_casimir_solutions(*sd.g, comp.casimir)) {
                const long expect = hom_multiplicity(*sd.g, w, target, sd.map, *sd.h);
                if (expect == 0) continue;
                CAPTURE(weight_str(w));
                const EquivariantHomSpace hs = hom_space(sd, realize_irrep(sd, w), v);
                CHECK(static_cast<long>(hs.dim()) == expect);
                CHECK(check_equivariance(hs, v).empty());
            }
        }
    }
}

TEST_CASE("one-dimensional blocks act by -2") {
    struct Case {
        std::string space;
        StructureGroup grp;
        Weight e_irrep, w;
    };
    for (const auto& c : std::vector<Case>{{"so5-so3", StructureGroup::G2, {10}, {0, 2}},
                                           {"sp2sp1-sp1sp1", StructureGroup::H, {2, 0}, {0, 1, 0}}}) {
        CAPTURE(c.space);
        const SpaceData& sd = space_data(c.space);
        const CasimirComponent comp = isotypic_component(sd, e_module(*sd.space, c.grp), c.e_irrep);
        const TargetModule v = adapt_target(sd, comp.module);
        const DiracBlock blk = dirac_block(v, hom_space(sd, realize_irrep(sd, c.w), v));
        REQUIRE(blk.hom_dim == 1);
        CHECK(blk.A(0, 0) == FieldElement(-2L));
        CHECK(blk.deformation_dim == 1);
    }
}

TEST_CASE("deformation reports") {
    struct Expect {
        std::string space;
        StructureGroup grp;
        IrrepMultiset step1, deformations;
        long complex_dim;
    };
    const std::vector<Expect> table = {
        {"so5-so3", StructureGroup::H, {}, {}, 0},
        {"so5-so3", StructureGroup::G2, ms({{{0, 2}, 1}}), ms({{{0, 2}, 1}}), 10},
        {"spin7-g2", StructureGroup::H, {}, {}, 0},
        {"spin7-g2", StructureGroup::G2, {}, {}, 0},
        {"sp2sp1-sp1sp1", StructureGroup::H, ms({{{0, 1, 0}, 1}}), ms({{{0, 1, 0}, 1}}), 5},
        {"sp2sp1-sp1sp1", StructureGroup::G2, ms({{{2, 0, 0}, 2}, {{0, 1, 0}, 1}, {{0, 0, 2}, 1}}),
         ms({{{2, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 2}, 1}}), 18},
        {"su3su2-su2u1", StructureGroup::H, {}, {}, 0},
        {"su3su2-su2u1", StructureGroup::G2, ms({{{0, 0, 2}, 2}, {{1, 1, 0}, 6}}), ms({{{0, 0, 2}, 2}, {{1, 1, 0}, 4}}), 38},
    };
    for (const auto& e : table) {
        CAPTURE(e.space);
        CAPTURE(to_string(e.grp));
        const DeformationReport r = assemble_report(e.space, e.grp, 2);
        CHECK(r.step1 == e.step1);
        CHECK(r.deformations == e.deformations);
        CHECK(r.complex_dim == e.complex_dim);
        for (const auto& comp : r.components)
            for (const auto& cand : comp.candidates) {
                if (!cand.block) continue;
                const DiracBlock& b = *cand.block;
                CHECK(static_cast<long>(b.lambda1_dim) == cand.lambda1_multiplicity);
                CHECK(static_cast<long>(b.hom_dim) == cand.lambda1_multiplicity + cand.lambda0_multiplicity);
                // on the Λ¹ sector the spectrum lies in {−2, 8/3} and is complete
                CHECK(b.sector_complete);
                CHECK(b.shift_identity);
                for (const auto& [lambda, d] : b.sector_dims) CHECK((lambda == -2 || lambda == q(8, 3)));
            }
    }
}

TEST_CASE("reports do not depend on the thread count") {
    const DeformationReport a = assemble_report("su3su2-su2u1", StructureGroup::G2, 1);
    const DeformationReport b = assemble_report("su3su2-su2u1", StructureGroup::G2, 4);
    CHECK(a.step1 == b.step1);
    CHECK(a.deformations == b.deformations);
    REQUIRE(a.components.size() == b.components.size());
    for (std::size_t i = 0; i < a.components.size(); ++i)
        for (std::size_t k = 0; k < a.components[i].candidates.size(); ++k) {
            const auto& x = a.components[i].candidates[k];
            const auto& y = b.components[i].candidates[k];
            REQUIRE(x.block.has_value() == y.block.has_value());
            if (x.block) CHECK(x.block->A == y.block->A);
        }
}

TEST_CASE("mixing block in the natural basis") {
    const FieldMatrix expect = [] {
        FieldMatrix m(2, 2);
        m(0, 0) = FieldElement(q(4, 3));
        m(0, 1) = FieldElement(q(-10, 3));
        m(1, 0) = FieldElement(q(-4, 3));
        m(1, 1) = FieldElement(q(-2, 3));
        return m;
    }();
    const MixingBlock sp = mixing_block("sp2sp1-sp1sp1", {2, 0, 0}, {1, 3});
    CHECK(sp.M == expect);
    REQUIRE(sp.ratio.size() == 2);
    CHECK(sp.ratio.at(-2) == FieldElement(1L));
    CHECK(sp.ratio.at(q(8, 3)) == FieldElement(q(-2, 5)));
    // basis independent: ratio of the two eigenvector slopes
    CHECK(sp.ratio.at(-2) / sp.ratio.at(q(8, 3)) == FieldElement(q(-5, 2)));

    for (const Weight& e : {Weight{3, 3}, Weight{3, -3}}) {
        const MixingBlock su = mixing_block("su3su2-su2u1", {1, 1, 0}, e);
        CHECK(su.M == expect);
    }
    CHECK_THROWS(mixing_block("su3su2-su2u1", {1, 1, 0}, {0, 6}));
}

TEST_CASE("irrep labels") {
    const SpaceData& sp = space_data("sp2sp1-sp1sp1");
    CHECK(irrep_label(sp, {2, 0, 0}) == "sp(2)");
    CHECK(irrep_label(sp, {0, 0, 2}) == "sp(1)");
    CHECK(irrep_label(sp, {0, 1, 0}) == "V^{(0,1)}_ℝ");
    CHECK(irrep_label(sp, {0, 0, 0}) == "ℝ");
    CHECK(irrep_label(space_data("so5-so3"), {0, 2}) == "so(5)");
    CHECK(irrep_label(space_data("su3su2-su2u1"), {1, 1, 0}) == "su(3)");
}
