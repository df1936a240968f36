#include "g2d/homogeneous.hpp"

#include "toml_lite.hpp"

#include <fstream>
#include <sstream>

namespace g2d {

namespace {

FieldElement R(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return FieldElement(r);
}
const FieldElement kI = FieldElement::imag_unit();

FieldVector flatten(const FieldMatrix& m) { return m.entries(); }

FieldMatrix so_e(std::size_t n, int i, int j) {  // E_ij, 1-based
    FieldMatrix m(n, n);
    m(i - 1, j - 1) = 1L;
    m(j - 1, i - 1) = -1L;
    return m;
}

FieldMatrix block_diag(const std::vector<FieldMatrix>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    FieldMatrix m(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) m(off + r, off + c) = b(r, c);
        off += b.rows();
    }
    return m;
}

FieldMatrix mat2(FieldElement a, FieldElement b, FieldElement c, FieldElement d) {
    FieldMatrix m(2, 2);
    m(0, 0) = std::move(a);
    m(0, 1) = std::move(b);
    m(1, 0) = std::move(c);
    m(1, 1) = std::move(d);
    return m;
}

// Quaternions as complex 2x2 matrices, with k = ji.
FieldMatrix q_one() { return FieldMatrix::identity(2); }
FieldMatrix q_i() { return mat2(kI, {}, {}, -kI); }
FieldMatrix q_j() { return mat2({}, R(1), R(-1), {}); }
FieldMatrix q_k() { return mat2({}, -kI, -kI, {}); }
FieldMatrix zero2() { return FieldMatrix(2, 2); }

// 2x2 quaternionic matrix -> 4x4 complex
FieldMatrix quat_block(const FieldMatrix& a, const FieldMatrix& b, const FieldMatrix& c, const FieldMatrix& d) {
    FieldMatrix m(4, 4);
    const FieldMatrix* q[2][2] = {{&a, &b}, {&c, &d}};
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) m(2 * r + x, 2 * s + y) = (*q[r][s])(x, y);
    return m;
}

FieldMatrix sp_pair(const FieldMatrix& sp2, const FieldMatrix& sp1) { return block_diag({sp2, sp1}); }

FieldMatrix m3(std::initializer_list<std::tuple<int, int, FieldElement>> entries) {
    FieldMatrix m(3, 3);
    for (const auto& [i, j, v] : entries) m(i - 1, j - 1) += v;
    return m;
}

std::string failure(const std::string& what) { return what; }

std::vector<FieldVector> b_orthogonal_complement(const LieAlgebraModel& g, const std::vector<FieldVector>& m) {
    FieldMatrix rows(m.size(), g.dim());
    for (std::size_t a = 0; a < m.size(); ++a) {
        const FieldVector bm = g.killing() * m[a];
        for (std::size_t k = 0; k < g.dim(); ++k) rows(a, k) = bm[k];
    }
    return kernel_basis(rows);
}

// φ_ijk = (3/2) g([e_i, e_j], e_k), read off the torsion of a frame
std::vector<SignedTriple> triples_from_brackets(const HomogeneousSpaceModel& s) {
    std::vector<SignedTriple> out;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) {
            const FieldVector m = s.m_part(s.g.bracket(s.m_basis[i], s.m_basis[j]));
            for (int k = j + 1; k < 7; ++k) {
                const FieldElement v = m[k] * R(3, 2);
                if (v.is_zero()) continue;
                if (v != R(1) && v != R(-1)) throw std::logic_error("derived φ coefficient is not ±1: " + v.str());
                out.push_back({v == R(1) ? 1 : -1, {i + 1, j + 1, k + 1}});
            }
        }
    return out;
}

HomogeneousSpaceModel so5_so3() {
    HomogeneousSpaceModel s;
    s.name = "so5-so3";
    std::vector<FieldMatrix> basis;
    std::vector<std::string> labels;
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j) {
            basis.push_back(so_e(5, i, j));
            labels.push_back("E" + std::to_string(i) + std::to_string(j));
        }
    s.g = LieAlgebraModel::from_matrices("so(5)", labels, basis);
    auto E = [](int i, int j) { return so_e(5, i, j); };
    const FieldElement s2 = FieldElement::sqrt(2), s5 = FieldElement::sqrt(5), s10 = FieldElement::sqrt(10);
    const FieldElement s6h = FieldElement::sqrt(6) * R(1, 2);  // √3/√2
    const std::vector<FieldMatrix> frame = {
        (E(1, 2) - E(3, 4).scaled(R(2))).scaled(R(2, 3)),
        (E(4, 5).scaled(s2) - (E(2, 3) - E(1, 4)).scaled(s6h)).scaled(R(2, 3)),
        E(2, 5).scaled(R(2, 3) * s5),
        (E(3, 5).scaled(s2) - (E(1, 3) + E(2, 4)).scaled(s6h)).scaled(R(2, 3)),
        (E(2, 4) - E(1, 3)).scaled(s10 * R(1, 3)),
        (E(2, 3) + E(1, 4)).scaled(-s10 * R(1, 3)),
        E(1, 5).scaled(R(2, 3) * s5),
    };
    for (const auto& f : frame) s.m_basis.push_back(s.g.coordinates(f));
    s.h_basis = b_orthogonal_complement(s.g, s.m_basis);
    s.phi = G2StructureTable::from_triples({{1, {1, 2, 4}}, {1, {1, 3, 7}}, {1, {1, 5, 6}}, {1, {2, 3, 5}},
                                            {1, {2, 6, 7}}, {1, {3, 4, 6}}, {1, {4, 5, 7}}});
    std::vector<std::size_t> all(10);
    for (std::size_t k = 0; k < 10; ++k) all[k] = k;
    s.g_factors = {{"so5", all, {s.g.coordinates(E(1, 2) - E(3, 4)), s.g.coordinates(E(3, 4).scaled(R(2)))}, false}};
    s.h_factors = {{"so3", {0, 1, 2}, {s.g.coordinates(E(1, 2).scaled(R(4)) + E(3, 4).scaled(R(2)))}, false}};
    return s;
}

HomogeneousSpaceModel spin7_g2() {
    HomogeneousSpaceModel s;
    s.name = "spin7-g2";
    std::vector<FieldMatrix> basis;
    std::vector<std::string> labels;
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 1; j <= 7; ++j) {
            basis.push_back(so_e(7, i, j));
            labels.push_back("E" + std::to_string(i) + std::to_string(j));
        }
    s.g = LieAlgebraModel::from_matrices("so(7)", labels, basis);
    // reference 3-form on R^7; 𝔥 = 𝔤₂ is its stabilizer and e_i = (2/3) e_i ⌟ φ_ref
    const auto ref = G2StructureTable::from_triples({{1, {1, 2, 3}}, {1, {1, 4, 5}}, {1, {1, 6, 7}}, {1, {2, 4, 6}},
                                                     {-1, {2, 5, 7}}, {-1, {3, 4, 7}}, {-1, {3, 5, 6}}});
    for (int i = 0; i < 7; ++i) {
        FieldMatrix a(7, 7);
        for (int j = 0; j < 7; ++j)
            for (int k = 0; k < 7; ++k) a(j, k) = ref.phi(i, j, k) * R(2, 3);
        s.m_basis.push_back(s.g.coordinates(a));
    }
    s.h_basis = b_orthogonal_complement(s.g, s.m_basis);
    auto E = [](int i, int j) { return so_e(7, i, j); };
    std::vector<std::size_t> all(21), hall(14);
    for (std::size_t k = 0; k < 21; ++k) all[k] = k;
    for (std::size_t k = 0; k < 14; ++k) hall[k] = k;
    s.g_factors = {{"so7",
                    all,
                    {s.g.coordinates(E(6, 7).scaled(R(2))), s.g.coordinates(E(4, 5) - E(6, 7)),
                     s.g.coordinates(E(2, 3) - E(4, 5))},
                    false}};
    s.h_factors = {{"g2",
                    hall,
                    {s.g.coordinates(-E(2, 3) + E(4, 5).scaled(R(2)) - E(6, 7)), s.g.coordinates(E(2, 3) - E(4, 5))},
                    false}};
    s.phi = ref;  // replaced by the bracket-derived table in finish_space
    return s;
}

HomogeneousSpaceModel sp2sp1_sp1sp1() {
    HomogeneousSpaceModel s;
    s.name = "sp2sp1-sp1sp1";
    const FieldMatrix z = zero2();
    const std::vector<std::pair<std::string, FieldMatrix>> units = {{"i", q_i()}, {"j", q_j()}, {"k", q_k()}};
    std::vector<FieldMatrix> basis;
    std::vector<std::string> labels;
    for (const auto& [n, q] : units) {
        basis.push_back(sp_pair(quat_block(q, z, z, z), z));
        labels.push_back("sp2:" + n + "11");
        basis.push_back(sp_pair(quat_block(z, z, z, q), z));
        labels.push_back("sp2:" + n + "22");
    }
    basis.push_back(sp_pair(quat_block(z, q_one(), -q_one(), z), z));
    labels.push_back("sp2:r12");
    for (const auto& [n, q] : units) {
        basis.push_back(sp_pair(quat_block(z, q, q, z), z));
        labels.push_back("sp2:" + n + "12");
    }
    for (const auto& [n, q] : units) {
        basis.push_back(sp_pair(FieldMatrix(4, 4), q));
        labels.push_back("sp1:" + n);
    }
    s.g = LieAlgebraModel::from_matrices("sp(2)+sp(1)", labels, basis);
    const FieldElement c = FieldElement::sqrt(5) * R(1, 3);
    std::vector<FieldMatrix> frame;
    for (const auto& [n, q] : units) frame.push_back(sp_pair(quat_block(z, z, z, q.scaled(R(2, 3))), -q));
    frame.push_back(sp_pair(quat_block(z, q_one(), -q_one(), z), z).scaled(c));
    for (const auto& [n, q] : units) frame.push_back(sp_pair(quat_block(z, q, q, z), z).scaled(c));
    for (const auto& f : frame) s.m_basis.push_back(s.g.coordinates(f));
    for (const auto& [n, q] : units) s.h_basis.push_back(s.g.coordinates(sp_pair(quat_block(q, z, z, z), z)));
    for (const auto& [n, q] : units) s.h_basis.push_back(s.g.coordinates(sp_pair(quat_block(z, z, z, q), q)));
    s.phi = G2StructureTable::from_triples({{1, {1, 2, 3}}, {-1, {1, 4, 5}}, {-1, {1, 6, 7}}, {-1, {2, 4, 6}},
                                            {1, {2, 5, 7}}, {-1, {3, 4, 7}}, {-1, {3, 5, 6}}});
    const FieldMatrix h1 = sp_pair(quat_block(q_i(), z, z, z), z), h2 = sp_pair(quat_block(z, z, z, q_i()), z);
    s.g_factors = {{"sp2", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {s.g.coordinates(h1 - h2), s.g.coordinates(h2)}, false},
                   {"sp1", {10, 11, 12}, {s.g.coordinates(sp_pair(FieldMatrix(4, 4), q_i()))}, false}};
    s.h_factors = {{"sp1u", {0, 1, 2}, {s.g.coordinates(h1)}, false},
                   {"sp1d", {3, 4, 5}, {s.g.coordinates(sp_pair(quat_block(z, z, z, q_i()), q_i()))}, false}};
    return s;
}

HomogeneousSpaceModel su3su2_su2u1() {
    HomogeneousSpaceModel s;
    s.name = "su3su2-su2u1";
    const FieldMatrix z2 = zero2(), z3(3, 3);
    const FieldMatrix I = mat2(kI, {}, {}, -kI), J = mat2({}, R(-1), R(1), {}), K = mat2({}, kI, kI, {});
    const std::vector<std::pair<std::string, FieldMatrix>> su3 = {
        {"r12", m3({{1, 2, R(1)}, {2, 1, R(-1)}})}, {"r13", m3({{1, 3, R(1)}, {3, 1, R(-1)}})},
        {"r23", m3({{2, 3, R(1)}, {3, 2, R(-1)}})}, {"s12", m3({{1, 2, kI}, {2, 1, kI}})},
        {"s13", m3({{1, 3, kI}, {3, 1, kI}})},      {"s23", m3({{2, 3, kI}, {3, 2, kI}})},
        {"d12", m3({{1, 1, kI}, {2, 2, -kI}})},     {"d23", m3({{2, 2, kI}, {3, 3, -kI}})}};
    std::vector<FieldMatrix> basis;
    std::vector<std::string> labels;
    for (const auto& [n, a] : su3) {
        basis.push_back(block_diag({a, z2}));
        labels.push_back("su3:" + n);
    }
    const std::vector<std::pair<std::string, FieldMatrix>> su2 = {{"I", I}, {"J", J}, {"K", K}};
    for (const auto& [n, b] : su2) {
        basis.push_back(block_diag({z3, b}));
        labels.push_back("su2:" + n);
    }
    s.g = LieAlgebraModel::from_matrices("su(3)+su(2)", labels, basis);
    auto upper = [&](const FieldMatrix& x) { return block_diag({x, FieldMatrix(1, 1)}); };
    std::vector<FieldMatrix> frame;
    for (const auto& [n, x] : su2) frame.push_back(block_diag({upper(x.scaled(R(2, 3))), -x}));
    const FieldElement c = FieldElement::sqrt(10) * R(1, 3);  // (√5/3)·√2
    for (int k : {1, 4, 2, 5}) frame.push_back(block_diag({su3[k].second, z2}).scaled(c));
    for (const auto& f : frame) s.m_basis.push_back(s.g.coordinates(f));
    for (const auto& [n, x] : su2) s.h_basis.push_back(s.g.coordinates(block_diag({upper(x), x})));
    const FieldMatrix u1 = block_diag({m3({{1, 1, kI}, {2, 2, kI}, {3, 3, -kI - kI}}), z2});
    s.h_basis.push_back(s.g.coordinates(u1));
    s.phi = G2StructureTable::from_triples({{1, {1, 2, 3}}, {1, {1, 4, 5}}, {-1, {1, 6, 7}}, {1, {2, 4, 6}},
                                            {1, {2, 5, 7}}, {1, {3, 4, 7}}, {-1, {3, 5, 6}}});
    const FieldMatrix e1 = su3[0].second;  // rotation in the (1,2) plane
    const FieldMatrix rot = mat2({}, R(1), R(-1), {});
    s.g_factors = {{"su3",
                    {0, 1, 2, 3, 4, 5, 6, 7},
                    {s.g.coordinates(block_diag({e1, z2})),
                     s.g.coordinates(block_diag({(u1.scaled(R(1)) - block_diag({e1, z2})).scaled(R(1, 2))}))},
                    false},
                   {"su2", {8, 9, 10}, {s.g.coordinates(block_diag({z3, rot}))}, false}};
    s.h_factors = {{"su2d", {0, 1, 2}, {s.g.coordinates(block_diag({e1, rot}))}, false},
                   {"u1", {3}, {s.g.coordinates(u1)}, true}};
    return s;
}

}  // namespace

// ---------------------------------------------------------------- Lie algebra

LieAlgebraModel LieAlgebraModel::from_matrices(std::string name, std::vector<std::string> labels,
                                               std::vector<FieldMatrix> basis) {
    LieAlgebraModel g;
    g.name_ = std::move(name);
    g.labels_ = std::move(labels);
    g.matrices_ = std::move(basis);
    std::vector<FieldVector> flat;
    for (const auto& m : g.matrices_) flat.push_back(flatten(m));
    g.coords_ = SpanCoordinates(flat);
    const std::size_t n = g.matrices_.size();
    g.structure_.assign(n, std::vector<FieldVector>(n, FieldVector(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            g.structure_[i][j] = g.coords_.coordinates(flatten(commutator(g.matrices_[i], g.matrices_[j])));
            g.structure_[j][i] = scale(g.structure_[i][j], R(-1));
        }
    g.finish();
    return g;
}

LieAlgebraModel LieAlgebraModel::from_structure(std::string name, std::vector<std::string> labels,
                                                std::vector<std::vector<FieldVector>> structure) {
    LieAlgebraModel g;
    g.name_ = std::move(name);
    g.labels_ = std::move(labels);
    g.structure_ = std::move(structure);
    if (g.structure_.size() != g.labels_.size()) throw std::invalid_argument("structure constant table has wrong size");
    g.finish();
    return g;
}

void LieAlgebraModel::finish() {
    const std::size_t n = dim();
    std::vector<FieldMatrix> ads;
    for (std::size_t i = 0; i < n; ++i) ads.push_back(ad(unit(i)));
    killing_ = FieldMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            killing_(i, j) = (ads[i] * ads[j]).trace();
            killing_(j, i) = killing_(i, j);
        }
}

FieldVector LieAlgebraModel::unit(std::size_t i) const {
    FieldVector v(dim());
    v.at(i) = 1L;
    return v;
}

FieldVector LieAlgebraModel::bracket(const FieldVector& x, const FieldVector& y) const {
    FieldVector out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j].is_zero() || i == j) continue;
            const FieldElement c = x[i] * y[j];
            const FieldVector& s = structure_[i][j];
            for (std::size_t k = 0; k < dim(); ++k)
                if (!s[k].is_zero()) out[k] += c * s[k];
        }
    }
    return out;
}

FieldMatrix LieAlgebraModel::ad(const FieldVector& x) const {
    FieldMatrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
        const FieldVector col = bracket(x, unit(j));
        for (std::size_t k = 0; k < dim(); ++k) m(k, j) = col[k];
    }
    return m;
}

FieldElement LieAlgebraModel::killing(const FieldVector& x, const FieldVector& y) const {
    FieldElement s;
    const FieldVector by = killing_ * y;
    for (std::size_t k = 0; k < dim(); ++k)
        if (!x[k].is_zero()) s += x[k] * by[k];
    return s;
}

FieldVector LieAlgebraModel::coordinates(const FieldMatrix& m) const {
    if (!has_matrices()) throw std::logic_error(name_ + " has no matrix model");
    return coords_.coordinates(flatten(m));
}

FieldMatrix LieAlgebraModel::matrix(const FieldVector& x) const {
    if (!has_matrices()) throw std::logic_error(name_ + " has no matrix model");
    FieldMatrix m(matrices_[0].rows(), matrices_[0].cols());
    for (std::size_t k = 0; k < dim(); ++k)
        if (!x[k].is_zero()) m += matrices_[k].scaled(x[k]);
    return m;
}

std::string LieAlgebraModel::check_antisymmetry() const {
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            if (structure_[i][j] != scale(structure_[j][i], R(-1)) || (i == j && !is_zero(structure_[i][i])))
                return failure("structure constants not antisymmetric at " + labels_[i] + "," + labels_[j]);
    return {};
}

std::string LieAlgebraModel::check_jacobi() const {
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j)
            for (std::size_t k = j + 1; k < dim(); ++k) {
                const FieldVector a = bracket(unit(i), structure_[j][k]);
                const FieldVector b = bracket(unit(j), structure_[k][i]);
                const FieldVector c = bracket(unit(k), structure_[i][j]);
                if (!is_zero(a + b + c))
                    return failure("Jacobi fails on " + labels_[i] + "," + labels_[j] + "," + labels_[k]);
            }
    return {};
}

std::string LieAlgebraModel::check_killing() const {
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) {
            const FieldElement b = (ad(unit(i)) * ad(unit(j))).trace();
            if (b != killing_(i, j)) return failure("stored Killing form differs at " + labels_[i] + "," + labels_[j]);
        }
    return {};
}

// ------------------------------------------------------------- the spaces

FieldVector HomogeneousSpaceModel::m_part(const FieldVector& x) const {
    const FieldVector c = mh.coordinates(x);
    return FieldVector(c.begin(), c.begin() + 7);
}

FieldVector HomogeneousSpaceModel::h_part(const FieldVector& x) const {
    const FieldVector c = mh.coordinates(x);
    return FieldVector(c.begin() + 7, c.end());
}

FieldVector HomogeneousSpaceModel::from_h(const FieldVector& c) const {
    FieldVector x(g.dim());
    for (std::size_t a = 0; a < h_basis.size(); ++a)
        if (!c[a].is_zero()) x = x + scale(h_basis[a], c[a]);
    return x;
}

FieldVector HomogeneousSpaceModel::from_m(const FieldVector& c) const {
    FieldVector x(g.dim());
    for (std::size_t a = 0; a < 7; ++a)
        if (!c[a].is_zero()) x = x + scale(m_basis[a], c[a]);
    return x;
}

FieldMatrix HomogeneousSpaceModel::isotropy_of(const FieldVector& h_coords) const {
    FieldMatrix m(7, 7);
    for (std::size_t a = 0; a < h_basis.size(); ++a)
        if (!h_coords[a].is_zero()) m += isotropy[a].scaled(h_coords[a]);
    return m;
}

FieldMatrix HomogeneousSpaceModel::h_adjoint(std::size_t a) const {
    FieldMatrix m(h_dim(), h_dim());
    for (std::size_t b = 0; b < h_dim(); ++b) {
        const FieldVector col = h_part(g.bracket(h_basis[a], h_basis[b]));
        for (std::size_t k = 0; k < h_dim(); ++k) m(k, b) = col[k];
    }
    return m;
}

const std::vector<std::string>& space_names() {
    static const std::vector<std::string> names = {"spin7-g2", "so5-so3", "sp2sp1-sp1sp1", "su3su2-su2u1"};
    return names;
}

HomogeneousSpaceModel finish_space(HomogeneousSpaceModel s, bool validate) {
    if (s.m_basis.size() != 7) throw std::invalid_argument("𝔪 must have 7 basis vectors");
    if (s.h_basis.size() + 7 != s.g.dim()) throw std::invalid_argument("dim 𝔥 + 7 must equal dim 𝔤");
    std::vector<FieldVector> family = s.m_basis;
    family.insert(family.end(), s.h_basis.begin(), s.h_basis.end());
    s.mh = SpanCoordinates(family);
    s.isotropy.clear();
    for (const auto& h : s.h_basis) {
        FieldMatrix m(7, 7);
        for (int i = 0; i < 7; ++i) {
            const FieldVector col = s.m_part(s.g.bracket(h, s.m_basis[i]));
            for (int k = 0; k < 7; ++k) m(k, i) = col[k];
        }
        s.isotropy.push_back(std::move(m));
    }
    if (s.name == "spin7-g2") s.phi = G2StructureTable::from_triples(triples_from_brackets(s));
    if (validate)
        for (const std::string& why : {check_orthogonal(s), check_metric(s), check_reductive(s), check_isotropy_in_g2(s)})
            if (!why.empty()) throw std::invalid_argument(s.name + ": " + why);
    return s;
}

HomogeneousSpaceModel build_space(const std::string& name) {
    if (name == "so5-so3") return finish_space(so5_so3());
    if (name == "spin7-g2") return finish_space(spin7_g2());
    if (name == "sp2sp1-sp1sp1") return finish_space(sp2sp1_sp1sp1());
    if (name == "su3su2-su2u1") return finish_space(su3su2_su2u1());
    throw unknown_space("unknown space '" + name + "'");
}

std::string check_reductive(const HomogeneousSpaceModel& s) {
    for (std::size_t a = 0; a < s.h_basis.size(); ++a) {
        for (int i = 0; i < 7; ++i)
            if (!is_zero(s.h_part(s.g.bracket(s.h_basis[a], s.m_basis[i]))))
                return "[h, m] has an h-component (h" + std::to_string(a) + ", e" + std::to_string(i + 1) + ")";
        for (std::size_t b = 0; b < s.h_basis.size(); ++b)
            if (!is_zero(s.m_part(s.g.bracket(s.h_basis[a], s.h_basis[b])))) return "h is not a subalgebra";
    }
    return {};
}

std::string check_metric(const HomogeneousSpaceModel& s) {
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            if (s.g.killing(s.m_basis[i], s.m_basis[j]) * R(-3, 40) != R(i == j ? 1 : 0))
                return "frame not orthonormal for -3/40 B at (e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ")";
    return {};
}

std::string check_orthogonal(const HomogeneousSpaceModel& s) {
    for (const auto& h : s.h_basis)
        for (const auto& m : s.m_basis)
            if (!s.g.killing(h, m).is_zero()) return "h is not B-orthogonal to m";
    return {};
}

std::string check_isotropy_in_g2(const HomogeneousSpaceModel& s) {
    for (std::size_t a = 0; a < s.isotropy.size(); ++a) {
        const FieldMatrix& m = s.isotropy[a];
        if (m.transpose() != -m) return "isotropy matrix " + std::to_string(a) + " is not antisymmetric";
        if (!derivation_on_phi(m, s.phi).is_zero()) return "isotropy matrix " + std::to_string(a) + " moves phi";
        if (!lambda2_project(PForm::from_matrix(m), s.phi).seven.is_zero())
            return "isotropy 2-form " + std::to_string(a) + " has a seven-dimensional part";
    }
    return {};
}

FieldVector canonical_curvature(const HomogeneousSpaceModel& s, const FieldVector& x, const FieldVector& y) {
    return scale(s.from_h(s.h_part(s.g.bracket(x, y))), R(-1));
}

PForm curvature_form(const HomogeneousSpaceModel& s, int i, int j) {
    const FieldVector f = canonical_curvature(s, s.m_basis[i], s.m_basis[j]);
    return PForm::from_matrix(s.isotropy_of(s.h_part(f)));
}

std::string canonical_torsion_check(const HomogeneousSpaceModel& s) {
    // T(X, Y) = −[X, Y]_𝔪 must equal −(2/3) φ(X, Y, ·)♯
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            const FieldVector t = scale(s.m_part(s.g.bracket(s.m_basis[i], s.m_basis[j])), R(-1));
            for (int k = 0; k < 7; ++k)
                if (t[k] != s.phi.phi(i, j, k) * R(-2, 3))
                    return "torsion mismatch at (e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ")";
        }
    return {};
}

std::string canonical_curvature_check(const HomogeneousSpaceModel& s) {
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            if (!is_instanton_form(curvature_form(s, i, j), s.phi))
                return "curvature of (e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ") is not in Λ²₁₄";
    return {};
}

FieldVector G2Subalgebra::coordinates(const FieldMatrix& a) const { return coords.coordinates(a.entries()); }

G2Subalgebra g2_subalgebra(const G2StructureTable& t) {
    // unknowns: the 21 upper-triangular entries of A
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) pairs.emplace_back(i, j);
    std::vector<PForm> images;
    for (const auto& [i, j] : pairs) images.push_back(derivation_on_phi(so_e(7, i + 1, j + 1), t));
    FieldMatrix sys(35, 21);
    int row = 0;
    for (int a = 0; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b)
            for (int c = b + 1; c < 7; ++c, ++row)
                for (std::size_t u = 0; u < pairs.size(); ++u) sys(row, u) = images[u].get({a, b, c});
    G2Subalgebra out;
    for (const auto& v : kernel_basis(sys)) {
        FieldMatrix a(7, 7);
        for (std::size_t u = 0; u < pairs.size(); ++u)
            if (!v[u].is_zero()) a += so_e(7, pairs[u].first + 1, pairs[u].second + 1).scaled(v[u]);
        out.basis.push_back(std::move(a));
    }
    std::vector<FieldVector> flat;
    for (const auto& b : out.basis) flat.push_back(b.entries());
    out.coords = SpanCoordinates(flat);
    const std::size_t n = out.basis.size();
    out.structure.assign(n, std::vector<FieldVector>(n, FieldVector(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) out.structure[i][j] = out.coordinates(commutator(out.basis[i], out.basis[j]));
    return out;
}

Rational isotropy_casimir(const HomogeneousSpaceModel& s) {
    const std::size_t n = s.h_dim();
    FieldMatrix gram(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) gram(a, b) = s.g.killing(s.h_basis[a], s.h_basis[b]) * R(-3, 40);
    const FieldMatrix gi = inverse(gram);
    FieldMatrix cas(7, 7);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!gi(a, b).is_zero()) cas += (s.isotropy[a] * s.isotropy[b]).scaled(gi(a, b));
    const FieldElement c = cas(0, 0);
    if (cas != FieldMatrix::identity(7).scaled(c)) throw non_scalar_error("isotropy Casimir is not scalar on " + s.name);
    return -c.to_rational();
}

// ------------------------------------------------------------------ TOML

namespace {

std::string field_toml(const FieldElement& x) {
    std::string out = "[";
    const auto c = x.coeffs();
    for (int k = 0; k < FieldElement::kDim; ++k) out += (k ? ", " : "") + toml::quote(c[k].get_str());
    return out + "]";
}

FieldElement field_from_toml(const toml::Value& v) {
    const auto& a = v.as_array();
    if (a.size() != FieldElement::kDim) throw std::invalid_argument("field element needs 16 coordinates");
    std::array<Rational, FieldElement::kDim> c;
    for (int k = 0; k < FieldElement::kDim; ++k) c[k] = parse_rational(a[k].as_string());
    return FieldElement::from_coeffs(c);
}

std::string sparse_vector_toml(const FieldVector& v) {
    std::string out = "[";
    bool first = true;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        out += std::string(first ? "" : ", ") + "[" + std::to_string(k) + ", " + field_toml(v[k]) + "]";
        first = false;
    }
    return out + "]";
}

FieldVector sparse_vector_from_toml(const toml::Value& v, std::size_t dim) {
    FieldVector out(dim);
    for (const auto& entry : v.as_array()) {
        const auto& pair = entry.as_array();
        if (pair.size() != 2) throw std::invalid_argument("vector entries are [index, coordinates]");
        const long k = pair[0].as_int();
        if (k < 0 || static_cast<std::size_t>(k) >= dim) throw std::invalid_argument("vector index out of range");
        out[k] = field_from_toml(pair[1]);
    }
    return out;
}

const toml::Value& require(const toml::Document& doc, const std::string& key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw std::invalid_argument("space file is missing '" + key + "'");
    return it->second;
}

}  // namespace

std::string space_to_toml(const HomogeneousSpaceModel& s) {
    std::ostringstream os;
    os << "# reductive homogeneous space G/H with a G2 frame on m\n";
    os << "# field elements are 16 rational coordinates over {1,√2,√3,√5,√6,√10,√15,√30}⊗{1,i}\n";
    os << "name = " << toml::quote(s.name) << "\n";
    os << "algebra = " << toml::quote(s.g.name()) << "\n";
    os << "labels = [";
    for (std::size_t k = 0; k < s.g.dim(); ++k) os << (k ? ", " : "") << toml::quote(s.g.labels()[k]);
    os << "]\n";
    os << "# [i, j, k, c]: the bracket [b_i, b_j] has coefficient c on b_k (i < j, 0-based)\n";
    os << "structure = [\n";
    for (std::size_t i = 0; i < s.g.dim(); ++i)
        for (std::size_t j = i + 1; j < s.g.dim(); ++j) {
            const FieldVector& c = s.g.structure(i, j);
            for (std::size_t k = 0; k < c.size(); ++k)
                if (!c[k].is_zero()) os << "  [" << i << ", " << j << ", " << k << ", " << field_toml(c[k]) << "],\n";
        }
    os << "]\n";
    os << "# sparse vectors: [index, coordinates]\n";
    os << "h_basis = [\n";
    for (const auto& v : s.h_basis) os << "  " << sparse_vector_toml(v) << ",\n";
    os << "]\nm_basis = [\n";
    for (const auto& v : s.m_basis) os << "  " << sparse_vector_toml(v) << ",\n";
    os << "]\n# [sign, i, j, k], 1-based\nphi = [";
    bool first = true;
    for (const auto& t : s.phi.triples()) {
        os << (first ? "" : ", ") << "[" << t.sign << ", " << t.idx[0] << ", " << t.idx[1] << ", " << t.idx[2] << "]";
        first = false;
    }
    os << "]\n";
    return os.str();
}

HomogeneousSpaceModel space_from_toml(const std::string& text, bool validate) {
    const toml::Document doc = toml::parse(text);
    HomogeneousSpaceModel s;
    s.name = require(doc, "name").as_string();
    std::vector<std::string> labels;
    for (const auto& l : require(doc, "labels").as_array()) labels.push_back(l.as_string());
    const std::size_t n = labels.size();
    std::vector<std::vector<FieldVector>> structure(n, std::vector<FieldVector>(n, FieldVector(n)));
    for (const auto& e : require(doc, "structure").as_array()) {
        const auto& q = e.as_array();
        if (q.size() != 4) throw std::invalid_argument("structure entries are [i, j, k, c]");
        const long i = q[0].as_int(), j = q[1].as_int(), k = q[2].as_int();
        if (i < 0 || j < 0 || k < 0 || static_cast<std::size_t>(std::max({i, j, k})) >= n || i == j)
            throw std::invalid_argument("structure index out of range");
        const FieldElement c = field_from_toml(q[3]);
        structure[i][j][k] += c;
        structure[j][i][k] -= c;
    }
    const std::string algebra = doc.count("algebra") ? doc.at("algebra").as_string() : s.name;
    s.g = LieAlgebraModel::from_structure(algebra, labels, structure);
    for (const auto& v : require(doc, "h_basis").as_array()) s.h_basis.push_back(sparse_vector_from_toml(v, n));
    for (const auto& v : require(doc, "m_basis").as_array()) s.m_basis.push_back(sparse_vector_from_toml(v, n));
    std::vector<SignedTriple> triples;
    for (const auto& e : require(doc, "phi").as_array()) {
        const auto& q = e.as_array();
        if (q.size() != 4) throw std::invalid_argument("phi entries are [sign, i, j, k]");
        triples.push_back({static_cast<int>(q[0].as_int()),
                           {static_cast<int>(q[1].as_int()), static_cast<int>(q[2].as_int()), static_cast<int>(q[3].as_int())}});
    }
    s.phi = validate ? G2StructureTable::from_triples(triples) : G2StructureTable::unchecked(triples);
    if (validate) {
        for (const std::string& why : {s.g.check_antisymmetry(), s.g.check_jacobi()})
            if (!why.empty()) throw std::invalid_argument(s.name + ": " + why);
    }
    return finish_space(std::move(s), validate);
}

HomogeneousSpaceModel load_space_file(const std::string& path, bool validate) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open space file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return space_from_toml(buf.str(), validate);
}

}  // namespace g2d
