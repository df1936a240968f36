#include "doctest.h"

#include "g2d/clifford_g2.hpp"

#include <random>

using namespace g2d;

namespace {

const std::vector<SignedTriple> kSo5 = {{1, {1, 2, 4}}, {1, {1, 3, 7}}, {1, {1, 5, 6}}, {1, {2, 3, 5}},
                                        {1, {2, 6, 7}}, {1, {3, 4, 6}}, {1, {4, 5, 7}}};
const std::vector<SignedTriple> kSp = {{1, {1, 2, 3}},  {-1, {1, 4, 5}}, {-1, {1, 6, 7}}, {-1, {2, 4, 6}},
                                       {1, {2, 5, 7}},  {-1, {3, 4, 7}}, {-1, {3, 5, 6}}};
const std::vector<SignedTriple> kSu = {{1, {1, 2, 3}}, {1, {1, 4, 5}}, {-1, {1, 6, 7}}, {1, {2, 4, 6}},
                                       {1, {2, 5, 7}}, {1, {3, 4, 7}}, {-1, {3, 5, 6}}};

std::vector<G2StructureTable> all_tables() {
    return {G2StructureTable::from_triples(kSo5), G2StructureTable::from_triples(kSp),
            G2StructureTable::from_triples(kSu)};
}

Spinor basis_spinor(int k) {
    FieldVector v(8);
    v[k] = 1L;
    return Spinor::from_vector(v);
}

PForm random_form(std::mt19937& rng, int p) {
    std::uniform_int_distribution<int> coin(0, 1), num(-5, 5);
    PForm f(p);
    for (unsigned m = 0; m < 128; ++m) {
        if (std::popcount(m) != p || coin(rng)) continue;
        std::vector<int> idx;
        for (int i = 0; i < 7; ++i)
            if (m >> i & 1) idx.push_back(i);
        f.set(idx, FieldElement(static_cast<long>(num(rng))) * (coin(rng) ? FieldElement(1L) : parse_field("sqrt3")));
    }
    return f;
}

}  // namespace

TEST_CASE("contraction identities for every table") {
    for (const auto& t : all_tables()) {
        CHECK(t.check_phi_phi().empty());
        CHECK(t.check_phi_norm().empty());
        CHECK(t.check_psi_phi().empty());
    }
}

TEST_CASE("a corrupted table is rejected") {
    auto bad = kSo5;
    bad[3].sign = -bad[3].sign;
    CHECK_THROWS_AS(G2StructureTable::from_triples(bad), std::invalid_argument);
    const auto t = G2StructureTable::unchecked(bad);
    CHECK_FALSE(t.check_psi_phi().empty());
}

TEST_CASE("cross product") {
    const auto so5 = G2StructureTable::from_triples(kSo5);
    CHECK(cross_product(unit_vector(0), unit_vector(1), so5) == unit_vector(3));
    CHECK(cross_product(unit_vector(2), unit_vector(2), so5) == Vec7{});
    // brute-force index scan of the squashed-sphere table: e1×e3 = φ_13l e_l
    const auto sp = G2StructureTable::from_triples(kSp);
    Vec7 expect;
    for (const auto& tr : kSp)
        for (int r = 0; r < 3; ++r)
            if (tr.idx[r] == 1 && tr.idx[(r + 1) % 3] == 3) expect[tr.idx[(r + 2) % 3] - 1] = static_cast<long>(tr.sign);
            else if (tr.idx[r] == 3 && tr.idx[(r + 1) % 3] == 1) expect[tr.idx[(r + 2) % 3] - 1] = static_cast<long>(-tr.sign);
    CHECK(cross_product(unit_vector(0), unit_vector(2), sp) == expect);
    Vec7 minus_e2;
    minus_e2[1] = -1L;
    CHECK(expect == minus_e2);

    std::mt19937 rng(1);
    for (const auto& t : all_tables())
        for (int k = 0; k < 10; ++k) {
            Vec7 x, y;
            for (int i = 0; i < 7; ++i) {
                x[i] = static_cast<long>(rng() % 7) - 3;
                y[i] = static_cast<long>(rng() % 7) - 3;
            }
            const Vec7 xy = cross_product(x, y, t), yx = cross_product(y, x, t);
            FieldElement dot;
            for (int i = 0; i < 7; ++i) {
                CHECK(xy[i] == -yx[i]);
                dot += xy[i] * x[i];
            }
            CHECK(dot.is_zero());
        }
}

TEST_CASE("Clifford multiplication by vectors") {
    const auto so5 = G2StructureTable::from_triples(kSo5);
    const Spinor eta = Spinor::killing();
    Spinor s = clifford_mul_vector(unit_vector(0), eta, so5);
    CHECK(s.scalar_part.is_zero());
    Vec7 minus_e1;
    minus_e1[0] = -1L;
    CHECK(s.vector_part == minus_e1);

    s = clifford_mul_vector(unit_vector(0), Spinor{FieldElement(), unit_vector(0)}, so5);
    CHECK(s == eta);

    s = clifford_mul_vector(unit_vector(0), Spinor{FieldElement(), unit_vector(1)}, so5);
    Vec7 minus_e4;
    minus_e4[3] = -1L;
    CHECK(s.scalar_part.is_zero());
    CHECK(s.vector_part == minus_e4);
}

TEST_CASE("Clifford relations") {
    for (const auto& t : all_tables()) {
        std::vector<FieldMatrix> c;
        for (int a = 0; a < 7; ++a) c.push_back(clifford_matrix(a, t));
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) {
                const FieldMatrix anti = c[i] * c[j] + c[j] * c[i];
                CHECK(anti == FieldMatrix::identity(8).scaled(FieldElement(i == j ? -2L : 0L)));
            }
        // matrix and direct evaluation agree
        for (int k = 0; k < 8; ++k)
            CHECK(clifford_mul_vector(unit_vector(3), basis_spinor(k), t).to_vector() ==
                  clifford_matrix(3, t) * basis_spinor(k).to_vector());
    }
}

TEST_CASE("phi and psi act as 7 on the Killing spinor and -1 on its Clifford multiples") {
    for (const auto& t : all_tables()) {
        const PForm phi = t.phi_form(), psi = t.psi_form();
        const Spinor eta = Spinor::killing();
        Spinor seven_eta{FieldElement(7L), {}};
        CHECK(clifford_mul_form(phi, eta, t) == seven_eta);
        CHECK(clifford_mul_form(psi, eta, t) == seven_eta);
        for (int a = 0; a < 7; ++a) {
            const Spinor x = clifford_mul_vector(unit_vector(a), eta, t);
            Spinor minus_x{-x.scalar_part, {}};
            for (int i = 0; i < 7; ++i) minus_x.vector_part[i] = -x.vector_part[i];
            CHECK(clifford_mul_form(phi, x, t) == minus_x);
            CHECK(clifford_mul_form(psi, x, t) == minus_x);
        }
    }
}

TEST_CASE("v·α = v∧α − v⌟α") {
    std::mt19937 rng(2);
    for (const auto& t : all_tables())
        for (int p = 0; p <= 6; ++p) {
            const PForm alpha = random_form(rng, p);
            Vec7 v;
            for (int i = 0; i < 7; ++i) v[i] = static_cast<long>(rng() % 5) - 2;
            const FieldMatrix lhs = form_action_matrix(PForm::from_vector(v), t) * form_action_matrix(alpha, t);
            FieldMatrix rhs = form_action_matrix(wedge(PForm::from_vector(v), alpha), t);
            if (p > 0) rhs = rhs - form_action_matrix(interior(v, alpha), t);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("sum of e_j α e_j on random forms") {
    std::mt19937 rng(3);
    const auto t = G2StructureTable::from_triples(kSp);
    for (int p = 0; p <= 7; ++p)
        for (int k = 0; k < 20; ++k) CHECK(casimir_identity_check(random_form(rng, p), t));
    CHECK(casimir_identity_check(t.phi_form(), t));
}

TEST_CASE("wedge and interior") {
    const PForm a = PForm::basis({0, 2}), b = PForm::basis({1});
    CHECK(wedge(a, b) == PForm::basis({0, 2, 1}));
    CHECK(wedge(a, b).get({0, 1, 2}) == FieldElement(-1L));
    CHECK(interior(unit_vector(2), a) == PForm::basis({0}).scaled(FieldElement(-1L)));
    CHECK(PForm::basis({3, 1}).get({1, 3}) == FieldElement(-1L));
}

TEST_CASE("two-form type decomposition") {
    for (const auto& t : all_tables()) {
        const PForm phi = t.phi_form();
        for (int i = 0; i < 7; ++i) {
            const PForm b = interior(unit_vector(i), phi);
            const auto split = lambda2_project(b, t);
            CHECK(split.seven == b);
            CHECK(split.fourteen.is_zero());
            CHECK(hodge_star(wedge(phi, b), t) == b.scaled(FieldElement(-2L)));
        }
        for (int i = 0; i < 7; ++i)
            for (int j = i + 1; j < 7; ++j) {
                const PForm b = PForm::basis({i, j});
                const auto split = lambda2_project(b, t);
                CHECK(split.seven + split.fourteen == b);
                CHECK(hodge_star(wedge(phi, split.fourteen), t) == split.fourteen);
                CHECK(is_instanton_form(split.fourteen, t));
            }
    }
}

TEST_CASE("e1∧e2 has coefficient 1/3 in its seven-dimensional part") {
    // Oracle: project onto the orthonormal basis u_k = (1/√3) e_k ⌟ φ of Λ²₇.
    const auto t = G2StructureTable::from_triples(kSo5);
    FieldElement oracle;
    for (int k = 0; k < 7; ++k) oracle += t.phi(k, 0, 1) * t.phi(k, 0, 1) * FieldElement(Rational(1, 3));
    CHECK(oracle == FieldElement(Rational(1, 3)));
    CHECK(lambda2_project(PForm::basis({0, 1}), t).seven.get({0, 1}) == oracle);
    CHECK(lambda2_project(PForm::basis({0, 1}), t).fourteen.get({0, 1}) == FieldElement(Rational(2, 3)));
}

TEST_CASE("derivation action vanishes exactly on the stabilizer") {
    const auto t = G2StructureTable::from_triples(kSo5);
    // e_k⌟φ viewed as a matrix is in Λ²₇, so it moves φ
    FieldMatrix a(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) a(i, j) = t.phi(0, i, j);
    CHECK_FALSE(derivation_on_phi(a, t).is_zero());
    // the Λ²₁₄ part of e1∧e2 stabilizes φ
    const PForm f = lambda2_project(PForm::basis({0, 1}), t).fourteen;
    FieldMatrix b(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            if (i != j) b(i, j) = f.get({i, j});
    CHECK(derivation_on_phi(b, t).is_zero());
}
