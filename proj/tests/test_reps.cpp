#include "doctest.h"

#include "oracles.hpp"

using namespace g2d;

using oracles::closed_forms;
using oracles::grid;
using oracles::q;

namespace {

long total(const Character& c) {
    long n = 0;
    for (const auto& [w, m] : c) n += m;
    return n;
}

long dimension(const RootDatum& d, const IrrepMultiset& m) {
    long n = 0;
    for (const auto& [w, k] : m) n += k * weyl_dimension(d, w);
    return n;
}

}  // namespace

TEST_CASE("root datum invariants") {
    for (const auto& name : group_names()) {
        CAPTURE(name);
        const RootDatum& d = group_datum(name);
        for (std::size_t i = 0; i < d.rank; ++i) {
            if (!d.abelian[i]) CHECK(d.cartan[i][i] == 2);
            for (std::size_t j = 0; j < d.rank; ++j) CHECK(d.gram[i][j] == d.gram[j][i]);
        }
        // 2(ρ, α_i)/(α_i, α_i) = 1, i.e. the half sum is (1,…,1)
        Weight sum(d.rank, 0);
        for (const auto& a : d.positive_roots)
            for (std::size_t i = 0; i < d.rank; ++i) sum[i] += a[i];
        for (std::size_t i = 0; i < d.rank; ++i) CHECK(sum[i] == 2 * d.half_sum()[i]);
    }
}

TEST_CASE("Cartan data reproduce the Killing form on coroots of G") {
    // tr(ad H_i ad H_j) = Σ over all roots α(H_i) α(H_j), and α(H_i) is a Dynkin label
    for (const auto& name : {"so7", "so5", "sp2sp1", "su3su2"}) {
        CAPTURE(name);
        const RootDatum& d = group_datum(name);
        const FieldMatrix k = inverse([&] {
            FieldMatrix g(d.rank, d.rank);
            for (std::size_t i = 0; i < d.rank; ++i)
                for (std::size_t j = 0; j < d.rank; ++j) g(i, j) = FieldElement(d.gram[i][j]);
            return g;
        }());
        for (std::size_t i = 0; i < d.rank; ++i)
            for (std::size_t j = 0; j < d.rank; ++j) {
                long s = 0;
                for (const auto& a : d.positive_roots) s += 2 * a[i] * a[j];
                CHECK(k(i, j) == FieldElement(s));
            }
    }
}

TEST_CASE("Casimir matches the closed forms on the grid") {
    for (const auto& [name, form] : closed_forms()) {
        CAPTURE(name);
        const RootDatum& d = group_datum(name);
        for (const Weight& w : grid(d)) {
            CAPTURE(weight_str(w));
            CHECK(casimir_eigenvalue(d, w) == form(w));
        }
    }
}

TEST_CASE("Casimir examples") {
    CHECK(casimir_eigenvalue(group_datum("g2"), {0, 1}) == q(4, 5));
    CHECK(casimir_eigenvalue(group_datum("so3"), {10}) == q(1));
    CHECK(casimir_eigenvalue(group_datum("sp1d"), {2}) == q(2, 5));
    for (const auto& name : group_names()) {
        const RootDatum& d = group_datum(name);
        CHECK(casimir_eigenvalue(d, Weight(d.rank, 0)) == 0);
    }
}

TEST_CASE("Weyl dimension") {
    CHECK(weyl_dimension(group_datum("sp2sp1"), {0, 1, 0}) == 5);
    CHECK(weyl_dimension(group_datum("g2"), {0, 1}) == 14);
    CHECK(weyl_dimension(group_datum("g2"), {1, 0}) == 7);
    CHECK(weyl_dimension(group_datum("so5"), {1, 0}) == 5);
    CHECK(weyl_dimension(group_datum("so5"), {0, 1}) == 4);
    CHECK(weyl_dimension(group_datum("so7"), {1, 0, 0}) == 8);
    CHECK(weyl_dimension(group_datum("so7"), {0, 0, 1}) == 7);
    CHECK(weyl_dimension(group_datum("so7"), {0, 1, 0}) == 21);
    CHECK(weyl_dimension(group_datum("su3su2"), {1, 1, 2}) == 24);
    for (const auto& name : group_names()) {
        const RootDatum& d = group_datum(name);
        CHECK(weyl_dimension(d, Weight(d.rank, 0)) == 1);
    }
}

TEST_CASE("weight multiplicities") {
    const Character so5adj = weight_multiplicities(group_datum("so5"), {0, 2});
    CHECK(so5adj.size() == 9);
    CHECK(so5adj.at({0, 0}) == 2);
    CHECK(total(so5adj) == 10);

    const Character s2 = weight_multiplicities(group_datum("so3"), {2});
    CHECK(s2 == Character{{{-2}, 1}, {{0}, 1}, {{2}, 1}});

    const Character g7 = weight_multiplicities(group_datum("g2"), {1, 0});
    CHECK(g7.size() == 7);
    CHECK(g7.at({0, 0}) == 1);

    // property: total = Weyl dimension, and Weyl invariance
    for (const auto& name : group_names()) {
        const RootDatum& d = group_datum(name);
        for (const Weight& w : grid(d)) {
            if (d.rank > 2 && (w[0] > 2 || w[1] > 2)) continue;
            const Character c = weight_multiplicities(d, w);
            CHECK(total(c) == weyl_dimension(d, w));
            for (const auto& [mu, m] : c)
                for (std::size_t i = 0; i < d.rank; ++i)
                    if (!d.abelian[i]) CHECK(c.at(d.reflect(mu, i)) == m);
        }
    }
}

TEST_CASE("enumerating Casimir solutions") {
    CHECK(enumerate_casimir_solutions(group_datum("so5"), q(1)) == std::vector<Weight>{{0, 2}});
    CHECK(enumerate_casimir_solutions(group_datum("so5"), q(1, 15)).empty());
    CHECK(enumerate_casimir_solutions(group_datum("sp2sp1"), q(2, 3)) == std::vector<Weight>{{0, 1, 0}});
    CHECK(enumerate_casimir_solutions(group_datum("su3su2"), q(1)) == std::vector<Weight>{{0, 0, 2}, {1, 1, 0}});
    CHECK(enumerate_casimir_solutions(group_datum("u1"), q(1)) == std::vector<Weight>{{-6}, {6}});
    // soundness against brute force on a larger box
    for (const auto& name : group_names()) {
        const RootDatum& d = group_datum(name);
        for (const Rational& t : {q(1), q(2, 3), q(4, 5), q(8, 5)}) {
            const auto sols = enumerate_casimir_solutions(d, t);
            for (const auto& w : sols) CHECK(casimir_eigenvalue(d, w) == t);
            for (const Weight& w : grid(d))
                if (casimir_eigenvalue(d, w) == t) CHECK(std::find(sols.begin(), sols.end(), w) != sols.end());
        }
    }
}

TEST_CASE("branching") {
    const auto& so5 = space_data("so5-so3");
    CHECK(branch(*so5.g, {0, 2}, so5.map, *so5.h) == IrrepMultiset{{{2}, 1}, {{6}, 1}});
    CHECK(branch(*so5.g, {1, 0}, so5.map, *so5.h) == IrrepMultiset{{{4}, 1}});

    const auto& sp = space_data("sp2sp1-sp1sp1");
    CHECK(branch(*sp.g, {0, 1, 0}, sp.map, *sp.h) == IrrepMultiset{{{0, 0}, 1}, {{1, 1}, 1}});

    const auto& su = space_data("su3su2-su2u1");
    CHECK(isotropy_module(su) == IrrepMultiset{{{1, -3}, 1}, {{1, 3}, 1}, {{2, 0}, 1}});
    CHECK(isotropy_module(so5) == IrrepMultiset{{{6}, 1}});
    CHECK(isotropy_module(space_data("spin7-g2")) == IrrepMultiset{{{1, 0}, 1}});

    // dimension is preserved and every representation maps to its own branch
    for (const auto& sname : space_names()) {
        const auto& sd = space_data(sname);
        for (const Weight& w : grid(*sd.g)) {
            if (sd.g->rank > 2 && (w[0] > 1 || w[1] > 1)) continue;
            const IrrepMultiset b = branch(*sd.g, w, sd.map, *sd.h);
            CHECK(dimension(*sd.h, b) == weyl_dimension(*sd.g, w));
            CHECK(hom_multiplicity(*sd.g, w, b, sd.map, *sd.h) >= 1);
        }
    }
}

TEST_CASE("wrong branching map is detected") {
    const auto& so5 = space_data("so5-so3");
    BranchingMap bad = so5.map;
    bad.matrix[0][0] += 1;
    CHECK_THROWS_AS(branch(*so5.g, {0, 2}, bad, *so5.h), inconsistent_character);
}

TEST_CASE("hom multiplicities") {
    const auto& sp = space_data("sp2sp1-sp1sp1");
    const IrrepMultiset v = tensor_decompose(*sp.h, isotropy_module(sp), {{{1, 3}, 1}});
    CHECK(hom_multiplicity(*sp.g, {2, 0, 0}, v, sp.map, *sp.h) == 2);
    CHECK(hom_multiplicity(*sp.g, {0, 0, 2}, v, sp.map, *sp.h) == 1);

    const auto& su = space_data("su3su2-su2u1");
    const IrrepMultiset f6 = tensor_decompose(*su.h, isotropy_module(su), {{{0, 6}, 1}});
    CHECK(hom_multiplicity(*su.g, {1, 1, 0}, f6, su.map, *su.h) == 1);
}

TEST_CASE("weight parsing") {
    CHECK(parse_weight("(0,1,0)") == Weight{0, 1, 0});
    CHECK(parse_weight("2, -3") == Weight{2, -3});
    CHECK_THROWS(parse_weight("1,x"));
    CHECK(weight_str({1, -3}) == "(1,-3)");
}
