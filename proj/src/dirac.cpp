#include "g2d/dirac.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <exception>
#include <mutex>
#include <thread>

namespace g2d {

namespace {

const FieldElement kMinusI = -FieldElement::imag_unit();

FieldElement fe(const Rational& q) { return FieldElement(q); }

long to_integer(const Rational& q, const char* what) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw std::logic_error(std::string(what) + " is not an integer");
    return q.get_num().get_si();
}

FieldMatrix columns(const std::vector<FieldVector>& cols, std::size_t rows) { return FieldMatrix::from_columns(cols, rows); }

FieldMatrix block_diag2(const FieldMatrix& a, const FieldMatrix& b) {
    FieldMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
    return m;
}

// Matrix of `op` on the span of Q (op must preserve it).
FieldMatrix restrict_to(const FieldMatrix& op, const std::vector<FieldVector>& q) {
    const SpanCoordinates sc(q);
    std::vector<FieldVector> cols;
    for (const auto& v : q) cols.push_back(sc.coordinates(op * v));
    return columns(cols, q.size());
}

std::vector<FieldVector> stacked_kernel(const std::vector<FieldMatrix>& blocks) {
    std::size_t rows = 0;
    for (const auto& b : blocks) rows += b.rows();
    FieldMatrix m(rows, blocks.at(0).cols());
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) m(off + r, c) = b(r, c);
        off += b.rows();
    }
    return kernel_basis(m);
}

FieldMatrix shifted(const FieldMatrix& m, const Rational& lambda) {
    return m - FieldMatrix::identity(m.rows()).scaled(fe(lambda));
}

// −i·ρ(coroot) for each H coroot, in h coordinates
std::vector<FieldMatrix> h_weight_ops(const SpaceData& sd, const HModule& m) {
    std::vector<FieldMatrix> ops;
    for (const auto& c : sd.h->coroots) ops.push_back(m.of(sd.space->h_part(c)).scaled(kMinusI));
    return ops;
}

// (S ⊗ I_d) X for X of shape (8d) × w
FieldMatrix spinor_apply(const FieldMatrix& s, const FieldMatrix& x, std::size_t d) {
    FieldMatrix out(x.rows(), x.cols());
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 8; ++b) {
            const FieldElement& c = s(a, b);
            if (c.is_zero()) continue;
            for (std::size_t e = 0; e < d; ++e)
                for (std::size_t w = 0; w < x.cols(); ++w) {
                    const FieldElement& v = x(b * d + e, w);
                    if (!v.is_zero()) out(a * d + e, w) += c * v;
                }
        }
    return out;
}

// Write `target` in the hom basis: coefficient b is the entry at pivot b; the rest must agree.
std::optional<FieldVector> hom_coordinates(const EquivariantHomSpace& hs, const FieldMatrix& target) {
    FieldVector c(hs.dim());
    FieldMatrix rebuilt(target.rows(), target.cols());
    for (std::size_t b = 0; b < hs.dim(); ++b) {
        c[b] = target(hs.pivots[b].first, hs.pivots[b].second);
        if (!c[b].is_zero()) rebuilt += hs.basis[b].scaled(c[b]);
    }
    if (rebuilt != target) return std::nullopt;
    return c;
}

struct FactorOp {
    FieldMatrix op;
    Rational value;
};

// Operators whose joint eigenspace is the isotypic component of hw.
std::vector<FactorOp> isotypic_ops(const SpaceData& sd, const HModule& e, const Weight& hw) {
    const RootDatum& h = *sd.h;
    if (hw.size() != h.rank) throw std::invalid_argument("weight " + weight_str(hw) + " has the wrong rank");
    std::vector<FactorOp> out;
    for (std::size_t f = 0; f < h.factor_names.size(); ++f) {
        const std::size_t off = h.factor_offset[f];
        if (h.factor_abelian[f]) {
            out.push_back({e.of(sd.space->h_part(h.coroots[off])).scaled(kMinusI), Rational(hw[off])});
            continue;
        }
        Weight masked(h.rank, 0);
        for (std::size_t i = 0; i < h.factor_rank[f]; ++i) masked[off + i] = hw[off + i];
        out.push_back({casimir_operator(*sd.space, e, sd.space->h_factors.at(f).basis), casimir_eigenvalue(h, masked)});
    }
    return out;
}

FieldMatrix spectral_projector(const FieldMatrix& op, const Rational& value) {
    const EigenStructure es = rational_eigenstructure(op);
    if (es.residual) throw std::logic_error("operator has irrational spectrum");
    FieldMatrix p = FieldMatrix::identity(op.rows());
    for (const auto& [mu, vecs] : es.spaces) {
        if (mu == value) continue;
        p = p * shifted(op, mu).scaled(fe(Rational(1) / (value - mu)));
    }
    return p;
}

}  // namespace

std::string to_string(StructureGroup g) { return g == StructureGroup::H ? "h" : "g2"; }

StructureGroup parse_structure_group(const std::string& s) {
    if (s == "h" || s == "H") return StructureGroup::H;
    if (s == "g2" || s == "G2") return StructureGroup::G2;
    throw std::invalid_argument("structure group must be 'h' or 'g2', got '" + s + "'");
}

// ------------------------------------------------------------ weight bases

WeightBasis joint_eigenbasis(const std::vector<FieldMatrix>& ops) {
    if (ops.empty()) throw std::invalid_argument("no operators");
    const std::size_t n = ops[0].rows();
    std::vector<std::pair<Weight, std::vector<FieldVector>>> parts(1);
    for (std::size_t k = 0; k < n; ++k) parts[0].second.push_back(FieldMatrix::identity(n).column(k));
    for (const auto& op : ops) {
        std::vector<std::pair<Weight, std::vector<FieldVector>>> next;
        for (const auto& [w, q] : parts) {
            const FieldMatrix r = restrict_to(op, q);
            const EigenStructure es = rational_eigenstructure(r);
            std::size_t found = 0;
            for (const auto& [lambda, vecs] : es.spaces) found += vecs.size();
            if (es.residual || found != q.size()) throw std::logic_error("weight operators are not diagonalizable over Q");
            for (const auto& [lambda, vecs] : es.spaces) {
                Weight w2 = w;
                w2.push_back(to_integer(lambda, "weight"));
                std::vector<FieldVector> img;
                for (const auto& v : vecs) {
                    FieldVector x(n);
                    for (std::size_t k = 0; k < q.size(); ++k)
                        if (!v[k].is_zero()) x = x + scale(q[k], v[k]);
                    img.push_back(std::move(x));
                }
                next.emplace_back(std::move(w2), std::move(img));
            }
        }
        parts = std::move(next);
    }
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    WeightBasis out;
    std::vector<FieldVector> cols;
    for (const auto& [w, q] : parts)
        for (const auto& v : q) {
            cols.push_back(v);
            out.weights.push_back(w);
        }
    out.P = columns(cols, n);
    out.P_inv = inverse(out.P);
    return out;
}

// ------------------------------------------------------------ irreps of G

FieldMatrix IrrepRealization::of(const FieldVector& x) const {
    FieldMatrix m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (std::size_t k = 0; k < matrices.size(); ++k)
        if (!x[k].is_zero()) m += matrices[k].scaled(x[k]);
    return m;
}

std::string check_representation(const LieAlgebraModel& g, const IrrepRealization& w) {
    if (w.matrices.size() != g.dim()) return "wrong number of matrices";
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j)
            if (w.of(g.structure(i, j)) != commutator(w.matrices[i], w.matrices[j]))
                return "bracket relation fails on " + g.labels()[i] + ", " + g.labels()[j];
    return {};
}

namespace {

using TensorVector = std::map<std::size_t, FieldElement>;

struct TensorPower {
    std::size_t n, k, size;
    // per g basis element and source index: nonzero (row, value) entries of the adapted matrix
    std::vector<std::vector<std::vector<std::pair<std::size_t, FieldElement>>>> cols;

    TensorVector apply(std::size_t x, const TensorVector& v) const {
        TensorVector out;
        for (const auto& [idx, c] : v) {
            std::size_t rest = idx, place = 1;
            for (std::size_t p = 0; p < k; ++p) {
                const std::size_t d = rest % n;
                rest /= n;
                for (const auto& [r, val] : cols[x][d]) out[idx + (r - d) * place] += c * val;
                place *= n;
            }
        }
        std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
        return out;
    }

    FieldVector dense(const TensorVector& v) const {
        FieldVector out(size);
        for (const auto& [i, c] : v) out[i] = c;
        return out;
    }
};

std::optional<Weight> factor_highest_root(const RootDatum& d, std::size_t f) {
    std::optional<Weight> best;
    Rational best_val;
    for (const Weight& a : d.positive_roots) {
        bool inside = true;
        for (std::size_t i = 0; i < d.rank; ++i)
            if (a[i] != 0 && (i < d.factor_offset[f] || i >= d.factor_offset[f] + d.factor_rank[f])) inside = false;
        if (!inside || !d.is_dominant(a)) continue;
        const Rational v = d.inner(a, d.half_sum());
        if (!best || v > best_val) best = a, best_val = v;
    }
    return best;
}

}  // namespace

IrrepRealization realize_irrep(const SpaceData& sd, const Weight& lambda, int max_depth) {
    const RootDatum& G = *sd.g;
    const HomogeneousSpaceModel& s = *sd.space;
    if (lambda.size() != G.rank || !G.is_dominant(lambda))
        throw std::invalid_argument("weight " + weight_str(lambda) + " is not a dominant weight of " + G.name);
    IrrepRealization out;
    out.highest_weight = lambda;
    out.dim = weyl_dimension(G, lambda);
    const std::size_t n_g = s.g.dim();

    for (std::size_t f = 0; f < G.factor_names.size(); ++f) {
        if (G.factor_abelian[f] || factor_highest_root(G, f) != lambda) continue;
        const auto& idx = s.g_factors.at(f).basis;
        out.construction = "adjoint";
        for (std::size_t x = 0; x < n_g; ++x) {
            const FieldMatrix ad = s.g.ad(s.g.unit(x));
            FieldMatrix m(idx.size(), idx.size());
            for (std::size_t r = 0; r < idx.size(); ++r)
                for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = ad(idx[r], idx[c]);
            out.matrices.push_back(std::move(m));
        }
        if (static_cast<long>(idx.size()) != out.dim) throw std::logic_error("adjoint dimension mismatch");
        return out;
    }

    if (!s.g.has_matrices()) throw not_found_error(s.g.name() + " has no matrix model to build tensor powers from");
    std::vector<FieldMatrix> cops;
    for (const auto& c : G.coroots) cops.push_back(s.g.matrix(c).scaled(kMinusI));
    const WeightBasis wb = joint_eigenbasis(cops);
    TensorPower tp;
    tp.n = wb.weights.size();
    tp.cols.resize(n_g);
    for (std::size_t x = 0; x < n_g; ++x) {
        const FieldMatrix mp = wb.P_inv * s.g.matrices()[x] * wb.P;
        tp.cols[x].resize(tp.n);
        for (std::size_t c = 0; c < tp.n; ++c)
            for (std::size_t r = 0; r < tp.n; ++r)
                if (!mp(r, c).is_zero()) tp.cols[x][c].emplace_back(r, mp(r, c));
    }
    // factor Casimirs: −Σ (K⁻¹)^{kl} ρ(b_k)ρ(b_l) over each factor's basis
    struct FactorCasimir {
        std::vector<std::size_t> basis;
        FieldMatrix k_inv;
        Rational value;
    };
    std::vector<FactorCasimir> fcs;
    for (std::size_t f = 0; f < G.factor_names.size(); ++f) {
        FactorCasimir fc;
        fc.basis = s.g_factors.at(f).basis;
        FieldMatrix k(fc.basis.size(), fc.basis.size());
        for (std::size_t a = 0; a < fc.basis.size(); ++a)
            for (std::size_t b = 0; b < fc.basis.size(); ++b) k(a, b) = -s.g.killing()(fc.basis[a], fc.basis[b]);
        fc.k_inv = inverse(k);
        Weight masked(G.rank, 0);
        for (std::size_t i = 0; i < G.factor_rank[f]; ++i) masked[G.factor_offset[f] + i] = lambda[G.factor_offset[f] + i];
        fc.value = casimir_eigenvalue(G, masked);
        fcs.push_back(std::move(fc));
    }
    auto casimir_apply = [&](const FactorCasimir& fc, const TensorVector& v) {
        std::vector<TensorVector> once;
        for (std::size_t l : fc.basis) once.push_back(tp.apply(l, v));
        TensorVector out;
        for (std::size_t a = 0; a < fc.basis.size(); ++a) {
            TensorVector mix;
            for (std::size_t b = 0; b < fc.basis.size(); ++b) {
                const FieldElement& c = fc.k_inv(a, b);
                if (c.is_zero()) continue;
                for (const auto& [i, val] : once[b]) mix[i] += c * val;
            }
            for (const auto& [i, val] : tp.apply(fc.basis[a], mix)) out[i] -= val;
        }
        std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
        return out;
    };

    for (int k = 1; k <= max_depth; ++k) {
        tp.k = static_cast<std::size_t>(k);
        tp.size = 1;
        for (int p = 0; p < k; ++p) tp.size *= tp.n;
        // tensor basis vectors of weight λ
        std::vector<std::size_t> sel;
        for (std::size_t idx = 0; idx < tp.size; ++idx) {
            Weight w(G.rank, 0);
            std::size_t rest = idx;
            for (int p = 0; p < k; ++p, rest /= tp.n)
                for (std::size_t i = 0; i < G.rank; ++i) w[i] += wb.weights[rest % tp.n][i];
            if (w == lambda) sel.push_back(idx);
        }
        if (sel.empty()) continue;
        std::map<std::size_t, std::size_t> pos;
        for (std::size_t a = 0; a < sel.size(); ++a) pos[sel[a]] = a;
        std::vector<FieldMatrix> blocks;
        for (const auto& fc : fcs) {
            FieldMatrix m(sel.size(), sel.size());
            for (std::size_t a = 0; a < sel.size(); ++a)
                for (const auto& [i, val] : casimir_apply(fc, TensorVector{{sel[a], FieldElement(1L)}})) m(pos.at(i), a) = val;
            blocks.push_back(shifted(m, fc.value));
        }
        const auto hw = stacked_kernel(blocks);
        if (hw.empty()) continue;
        TensorVector v;
        for (std::size_t a = 0; a < sel.size(); ++a)
            if (!hw[0][a].is_zero()) v[sel[a]] = hw[0][a];
        // cyclic span under 𝔤
        SparseEchelon ech(tp.size);
        std::vector<TensorVector> basis;
        auto push = [&](const TensorVector& u) {
            if (!ech.add_row(SparseEchelon::Row(u.begin(), u.end()))) return;
            basis.push_back(u);
            if (static_cast<long>(basis.size()) > out.dim) throw std::logic_error("cyclic span exceeds the Weyl dimension");
        };
        push(v);
        for (std::size_t c = 0; c < basis.size(); ++c)
            for (std::size_t x = 0; x < n_g; ++x) push(tp.apply(x, basis[c]));
        if (static_cast<long>(basis.size()) != out.dim) throw std::logic_error("cyclic span has the wrong dimension");
        std::vector<FieldVector> dense;
        for (const auto& b : basis) dense.push_back(tp.dense(b));
        const SpanCoordinates sc(dense);
        for (std::size_t x = 0; x < n_g; ++x) {
            std::vector<FieldVector> cols;
            for (const auto& b : basis) cols.push_back(sc.coordinates(tp.dense(tp.apply(x, b))));
            out.matrices.push_back(columns(cols, basis.size()));
        }
        out.construction = k == 1 ? "defining" : "tensor-generated";
        return out;
    }
    throw not_found_error("highest weight " + weight_str(lambda) + " not found in tensor powers up to degree " +
                          std::to_string(max_depth));
}

// ------------------------------------------------------------ H-modules

FieldMatrix HModule::of(const FieldVector& h_coords) const {
    FieldMatrix m(dim(), dim());
    for (std::size_t a = 0; a < action.size(); ++a)
        if (!h_coords[a].is_zero()) m += action[a].scaled(h_coords[a]);
    return m;
}

HModule e_module(const HomogeneousSpaceModel& s, StructureGroup e) {
    HModule m;
    if (e == StructureGroup::H) {
        for (std::size_t a = 0; a < s.h_dim(); ++a) m.action.push_back(s.h_adjoint(a));
        return m;
    }
    const G2Subalgebra g2 = g2_subalgebra(s.phi);
    for (const auto& iso : s.isotropy) {
        std::vector<FieldVector> cols;
        for (const auto& b : g2.basis) cols.push_back(g2.coordinates(commutator(iso, b)));
        m.action.push_back(columns(cols, g2.basis.size()));
    }
    return m;
}

HModule spinor_module(const HomogeneousSpaceModel& s) {
    HModule m;
    for (const auto& iso : s.isotropy) m.action.push_back(block_diag2(FieldMatrix(1, 1), iso));
    return m;
}

HModule tensor_module(const HModule& a, const HModule& b) {
    HModule m;
    const FieldMatrix ia = FieldMatrix::identity(a.dim()), ib = FieldMatrix::identity(b.dim());
    for (std::size_t k = 0; k < a.action.size(); ++k) m.action.push_back(kron(a.action[k], ib) + kron(ia, b.action[k]));
    return m;
}

HModule build_target_module(const HomogeneousSpaceModel& s, StructureGroup e) {
    return tensor_module(spinor_module(s), e_module(s, e));
}

std::string check_module(const HomogeneousSpaceModel& s, const HModule& m) {
    for (std::size_t a = 0; a < s.h_dim(); ++a)
        for (std::size_t b = a + 1; b < s.h_dim(); ++b)
            if (m.of(s.h_part(s.g.bracket(s.h_basis[a], s.h_basis[b]))) != commutator(m.action[a], m.action[b]))
                return "module relation fails on h" + std::to_string(a) + ", h" + std::to_string(b);
    return {};
}

FieldMatrix casimir_operator(const HomogeneousSpaceModel& s, const HModule& m, std::vector<std::size_t> indices) {
    if (indices.empty())
        for (std::size_t a = 0; a < s.h_dim(); ++a) indices.push_back(a);
    FieldMatrix k(indices.size(), indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a)
        for (std::size_t b = 0; b < indices.size(); ++b)
            k(a, b) = -s.g.killing(s.h_basis[indices[a]], s.h_basis[indices[b]]);
    const FieldMatrix ki = inverse(k);
    FieldMatrix c(m.dim(), m.dim());
    for (std::size_t a = 0; a < indices.size(); ++a)
        for (std::size_t b = 0; b < indices.size(); ++b)
            if (!ki(a, b).is_zero()) c += (m.action[indices[a]] * m.action[indices[b]]).scaled(-ki(a, b));
    return c;
}

Character module_character(const SpaceData& sd, const HModule& m) {
    Character c;
    for (const Weight& w : joint_eigenbasis(h_weight_ops(sd, m)).weights) c[w] += 1;
    return c;
}

std::vector<CasimirComponent> casimir_components(const SpaceData& sd, const HModule& e) {
    const IrrepMultiset irreps = decompose(*sd.h, module_character(sd, e));
    std::map<Rational, IrrepMultiset> by_value;
    for (const auto& [hw, m] : irreps) by_value[casimir_eigenvalue(*sd.h, hw)][hw] = m;
    const FieldMatrix cas = casimir_operator(*sd.space, e);
    std::vector<CasimirComponent> out;
    for (const auto& [c, group] : by_value) {
        CasimirComponent comp;
        comp.casimir = c;
        comp.irreps = group;
        const auto ker = kernel_basis(shifted(cas, c));
        long expect = 0;
        for (const auto& [hw, m] : group) expect += m * weyl_dimension(*sd.h, hw);
        if (static_cast<long>(ker.size()) != expect) throw std::logic_error("Casimir eigenspace has the wrong dimension");
        comp.basis = columns(ker, e.dim());
        for (const auto& a : e.action) comp.module.action.push_back(restrict_to(a, ker));
        out.push_back(std::move(comp));
    }
    return out;
}

CasimirComponent isotypic_component(const SpaceData& sd, const HModule& e, const Weight& hw) {
    std::vector<FieldMatrix> blocks;
    for (const auto& [op, value] : isotypic_ops(sd, e, hw)) blocks.push_back(shifted(op, value));
    const auto ker = stacked_kernel(blocks);
    CasimirComponent comp;
    comp.casimir = casimir_eigenvalue(*sd.h, hw);
    if (ker.empty()) return comp;
    comp.basis = columns(ker, e.dim());
    for (const auto& a : e.action) comp.module.action.push_back(restrict_to(a, ker));
    comp.irreps = decompose(*sd.h, module_character(sd, comp.module));
    if (comp.irreps.size() != 1 || comp.irreps.begin()->first != hw)
        throw std::logic_error("isotypic component of " + weight_str(hw) + " contains other irreps");
    return comp;
}

// ------------------------------------------------------------ target module

Weight TargetModule::weight(std::size_t v) const {
    Weight w = spinor_weights[v / e_dim];
    const Weight& we = e_weights[v % e_dim];
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += we[i];
    return w;
}

FieldMatrix TargetModule::action(std::size_t a) const {
    return kron(spinor_action[a], FieldMatrix::identity(e_dim)) + kron(FieldMatrix::identity(8), e_action[a]);
}

TargetModule adapt_target(const SpaceData& sd, const HModule& e) {
    const HomogeneousSpaceModel& s = *sd.space;
    if (e.dim() == 0) throw std::invalid_argument("empty coefficient module");
    TargetModule t;
    t.e_dim = e.dim();
    HModule m;
    m.action = s.isotropy;
    const WeightBasis wm = joint_eigenbasis(h_weight_ops(sd, m));
    const WeightBasis we = joint_eigenbasis(h_weight_ops(sd, e));
    FieldMatrix one(1, 1);
    one(0, 0) = 1L;
    t.spinor_P = block_diag2(one, wm.P);
    t.spinor_P_inv = block_diag2(one, wm.P_inv);
    t.spinor_weights.push_back(Weight(sd.h->rank, 0));
    t.spinor_weights.insert(t.spinor_weights.end(), wm.weights.begin(), wm.weights.end());
    t.e_P = we.P;
    t.e_P_inv = we.P_inv;
    t.e_weights = we.weights;
    for (std::size_t a = 0; a < s.h_dim(); ++a) {
        t.spinor_action.push_back(t.spinor_P_inv * block_diag2(FieldMatrix(1, 1), s.isotropy[a]) * t.spinor_P);
        t.e_action.push_back(t.e_P_inv * e.action[a] * t.e_P);
    }
    for (int i = 0; i < 7; ++i) t.clifford.push_back(t.spinor_P_inv * clifford_matrix(i, s.phi) * t.spinor_P);
    t.phi_mult = t.spinor_P_inv * form_action_matrix(s.phi.phi_form(), s.phi) * t.spinor_P;
    return t;
}

// ------------------------------------------------------------ Hom(W, V)_H

EquivariantHomSpace hom_space(const SpaceData& sd, const IrrepRealization& w, const TargetModule& v) {
    const HomogeneousSpaceModel& s = *sd.space;
    EquivariantHomSpace hs;
    hs.source = w.highest_weight;
    hs.w_dim = static_cast<std::size_t>(w.dim);
    std::vector<FieldMatrix> ops;
    for (const auto& c : sd.h->coroots) ops.push_back(w.of(c).scaled(kMinusI));
    const WeightBasis wb = joint_eigenbasis(ops);
    hs.w_weights = wb.weights;
    hs.w_P = wb.P;
    hs.w_P_inv = wb.P_inv;
    for (const auto& h : s.h_basis) hs.w_h_action.push_back(wb.P_inv * w.of(h) * wb.P);
    for (const auto& e : s.m_basis) hs.w_frame.push_back(wb.P_inv * w.of(e) * wb.P);

    const std::size_t nv = v.dim(), nw = hs.w_dim, d = v.e_dim;
    std::vector<long> index(nv * nw, -1);
    std::vector<std::pair<std::size_t, std::size_t>> unknowns;
    for (std::size_t i = 0; i < nv; ++i) {
        const Weight wi = v.weight(i);
        for (std::size_t j = 0; j < nw; ++j)
            if (wi == hs.w_weights[j]) {
                index[i * nw + j] = static_cast<long>(unknowns.size());
                unknowns.emplace_back(i, j);
            }
    }
    SparseEchelon ech(unknowns.size());
    for (std::size_t a = 0; a < s.h_dim(); ++a) {
        const FieldMatrix& sa = v.spinor_action[a];
        const FieldMatrix& ea = v.e_action[a];
        const FieldMatrix& ta = hs.w_h_action[a];
        for (std::size_t sp = 0; sp < 8; ++sp)
            for (std::size_t e = 0; e < d; ++e)
                for (std::size_t j = 0; j < nw; ++j) {
                    std::map<std::size_t, FieldElement> row;
                    auto add = [&](std::size_t vi, std::size_t wj, const FieldElement& c) {
                        const long u = index[vi * nw + wj];
                        if (u >= 0) row[static_cast<std::size_t>(u)] += c;
                    };
                    for (std::size_t s2 = 0; s2 < 8; ++s2)
                        if (!sa(sp, s2).is_zero()) add(s2 * d + e, j, sa(sp, s2));
                    for (std::size_t e2 = 0; e2 < d; ++e2)
                        if (!ea(e, e2).is_zero()) add(sp * d + e2, j, ea(e, e2));
                    for (std::size_t k = 0; k < nw; ++k)
                        if (!ta(k, j).is_zero()) add(sp * d + e, k, -ta(k, j));
                    SparseEchelon::Row r;
                    for (auto& [u, c] : row)
                        if (!c.is_zero()) r.emplace_back(u, std::move(c));
                    if (!r.empty()) ech.add_row(std::move(r));
                }
    }
    const auto free = ech.free_columns();
    const auto kernel = ech.kernel();
    for (std::size_t b = 0; b < kernel.size(); ++b) {
        FieldMatrix phi(nv, nw);
        for (std::size_t u = 0; u < unknowns.size(); ++u)
            if (!kernel[b][u].is_zero()) phi(unknowns[u].first, unknowns[u].second) = kernel[b][u];
        hs.basis.push_back(std::move(phi));
        hs.pivots.push_back(unknowns[free[b]]);
    }
    return hs;
}

std::string check_equivariance(const EquivariantHomSpace& hs, const TargetModule& v) {
    for (std::size_t a = 0; a < hs.w_h_action.size(); ++a) {
        const FieldMatrix act = v.action(a);
        for (std::size_t b = 0; b < hs.dim(); ++b)
            if (act * hs.basis[b] != hs.basis[b] * hs.w_h_action[a])
                return "basis map " + std::to_string(b) + " is not equivariant for h" + std::to_string(a);
    }
    return {};
}

// ------------------------------------------------------------ Dirac blocks

FieldMatrix dirac_apply(const TargetModule& v, const EquivariantHomSpace& hs, const FieldMatrix& phi) {
    FieldMatrix out(phi.rows(), phi.cols());
    for (int i = 0; i < 7; ++i) out = out - spinor_apply(v.clifford[i], phi * hs.w_frame[i], v.e_dim);
    return out;
}

DiracBlock dirac_block(const TargetModule& v, const EquivariantHomSpace& hs) {
    DiracBlock blk;
    blk.weight = hs.source;
    const std::size_t n = hs.dim();
    blk.hom_dim = n;
    blk.A = FieldMatrix(n, n);
    blk.phi_shift = FieldMatrix(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        const auto d = hom_coordinates(hs, dirac_apply(v, hs, hs.basis[a]));
        if (!d) throw inconsistency_error("D of basis map " + std::to_string(a) + " leaves the equivariant span");
        const auto t = hom_coordinates(hs, spinor_apply(v.phi_mult, hs.basis[a], v.e_dim));
        if (!t) throw inconsistency_error("φ· of basis map " + std::to_string(a) + " leaves the equivariant span");
        for (std::size_t b = 0; b < n; ++b) {
            blk.A(b, a) = (*d)[b];
            blk.phi_shift(b, a) = (*t)[b];
        }
    }
    // Λ⁰ components: rows s = 0 of every basis map
    FieldMatrix l0(v.e_dim * hs.w_dim, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t e = 0; e < v.e_dim; ++e)
            for (std::size_t w = 0; w < hs.w_dim; ++w) l0(e * hs.w_dim + w, a) = hs.basis[a](e, w);
    blk.lambda1_dim = kernel_basis(l0).size();
    blk.eigen = rational_eigenstructure(blk.A);
    const FieldMatrix shift = blk.A + blk.phi_shift.scaled(fe(Rational(1, 3)));
    const FieldMatrix shift_sq = shift * shift;
    blk.shift_identity = true;
    long covered = 0;
    for (const auto& [lambda, vecs] : blk.eigen.spaces) {
        const auto k = stacked_kernel({shifted(blk.A, lambda), l0});
        if (k.empty()) continue;
        blk.sector_dims[lambda] = static_cast<long>(k.size());
        covered += static_cast<long>(k.size());
        for (const auto& x : k)
            if (shift_sq * x != scale(x, fe(Rational(49, 9)))) blk.shift_identity = false;
    }
    blk.sector_complete = covered == static_cast<long>(blk.lambda1_dim);
    auto it = blk.sector_dims.find(Rational(-2));
    blk.deformation_dim = it == blk.sector_dims.end() ? 0 : it->second;
    return blk;
}

// ------------------------------------------------------------ report

std::string irrep_label(const SpaceData& sd, const Weight& w) {
    static const std::map<std::string, std::string> pretty = {{"so5", "so(5)"}, {"so7", "so(7)"}, {"sp2", "sp(2)"},
                                                              {"sp1", "sp(1)"}, {"su3", "su(3)"}, {"su2", "su(2)"}};
    const RootDatum& g = *sd.g;
    std::vector<std::size_t> support;
    for (std::size_t f = 0; f < g.factor_names.size(); ++f)
        for (std::size_t i = 0; i < g.factor_rank[f]; ++i)
            if (w[g.factor_offset[f] + i] != 0) {
                support.push_back(f);
                break;
            }
    if (support.empty()) return "ℝ";
    if (support.size() > 1) return "V^{" + weight_str(w) + "}";
    const std::size_t f = support[0];
    if (factor_highest_root(g, f) == w) return pretty.count(g.factor_names[f]) ? pretty.at(g.factor_names[f]) : g.factor_names[f];
    const Weight part(w.begin() + g.factor_offset[f], w.begin() + g.factor_offset[f] + g.factor_rank[f]);
    return "V^{" + weight_str(part) + "}_ℝ";
}

DeformationReport assemble_report(const std::string& space, StructureGroup group, int threads) {
    const auto start = std::chrono::steady_clock::now();
    const SpaceData& sd = space_data(space);
    const RootDatum& G = *sd.g;
    const RootDatum& H = *sd.h;
    DeformationReport rep;
    rep.space = space;
    rep.group = group;
    const HModule e = e_module(*sd.space, group);
    const IrrepMultiset m_irreps = isotropy_module(sd);

    struct Task {
        std::size_t comp, cand;
    };
    std::vector<Task> tasks;
    std::vector<CasimirComponent> comps = casimir_components(sd, e);
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& c = comps[ci];
        ComponentResult cr;
        cr.casimir = c.casimir;
        cr.irreps = c.irreps;
        cr.dim = static_cast<long>(c.module.dim());
        // trivial components carry an abelian structure group and are skipped
        if (c.casimir != 0) {
            const IrrepMultiset lambda1 = tensor_decompose(H, m_irreps, c.irreps);
            for (const Weight& w : enumerate_casimir_solutions(G, c.casimir)) {
                CandidateResult cand;
                cand.weight = w;
                cand.dim = weyl_dimension(G, w);
                cand.lambda1_multiplicity = hom_multiplicity(G, w, lambda1, sd.map, H);
                cand.lambda0_multiplicity = hom_multiplicity(G, w, c.irreps, sd.map, H);
                if (cand.lambda1_multiplicity + cand.lambda0_multiplicity > 0) tasks.push_back({ci, cr.candidates.size()});
                cr.candidates.push_back(std::move(cand));
            }
        }
        rep.components.push_back(std::move(cr));
    }

    std::vector<std::optional<TargetModule>> targets(comps.size());
    for (const auto& t : tasks)
        if (!targets[t.comp]) targets[t.comp] = adapt_target(sd, comps[t.comp].module);

    if (threads <= 0) {
        const char* env = std::getenv("G2D_THREADS");
        threads = env ? std::atoi(env) : 0;
        if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(tasks.size());
    auto worker = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) {
            try {
                CandidateResult& cand = rep.components[tasks[k].comp].candidates[tasks[k].cand];
                const IrrepRealization w = realize_irrep(sd, cand.weight);
                cand.construction = w.construction;
                const EquivariantHomSpace hs = hom_space(sd, w, *targets[tasks[k].comp]);
                cand.block = dirac_block(*targets[tasks[k].comp], hs);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(threads), tasks.size());
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    for (const auto& cr : rep.components)
        for (const auto& cand : cr.candidates) {
            if (cand.lambda1_multiplicity > 0) rep.step1[cand.weight] += cand.lambda1_multiplicity;
            if (cand.block && cand.block->deformation_dim > 0) rep.deformations[cand.weight] += cand.block->deformation_dim;
        }
    for (const auto& [w, m] : rep.deformations) rep.complex_dim += m * weyl_dimension(G, w);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// ------------------------------------------------------------ mixing block

MixingBlock mixing_block(const std::string& space, const Weight& w, const Weight& e_irrep) {
    const SpaceData& sd = space_data(space);
    const HomogeneousSpaceModel& s = *sd.space;
    for (const auto& iso : s.isotropy)
        for (int r = 0; r < 7; ++r)
            for (int c = 0; c < 7; ++c)
                if ((r < 3) != (c < 3) && !iso(r, c).is_zero())
                    throw std::logic_error("span(e1,e2,e3) is not an H-submodule of m on " + space);
    const HModule e = e_module(s, StructureGroup::G2);
    const CasimirComponent comp = isotypic_component(sd, e, e_irrep);
    if (comp.module.dim() == 0) throw std::invalid_argument("E has no component " + weight_str(e_irrep));
    const IrrepRealization W = realize_irrep(sd, w);
    if (W.construction != "adjoint") throw std::invalid_argument("natural maps need W to be an adjoint representation");
    const TargetModule v = adapt_target(sd, comp.module);
    const EquivariantHomSpace hs = hom_space(sd, W, v);
    const DiracBlock blk = dirac_block(v, hs);
    if (hs.dim() != 2) throw std::logic_error("mixing block expects a two-dimensional hom space");

    // which factor W is the adjoint of
    std::vector<std::size_t> wbasis;
    for (std::size_t f = 0; f < sd.g->factor_names.size(); ++f)
        if (factor_highest_root(*sd.g, f) == w) wbasis = s.g_factors[f].basis;
    const G2Subalgebra g2 = g2_subalgebra(s.phi);
    FieldMatrix proj = FieldMatrix::identity(e.dim());
    for (const auto& [op, value] : isotypic_ops(sd, e, e_irrep)) proj = proj * spectral_projector(op, value);
    std::vector<FieldVector> comp_cols;
    for (std::size_t c = 0; c < comp.basis.cols(); ++c) comp_cols.push_back(comp.basis.column(c));
    const SpanCoordinates comp_coords(comp_cols);
    const std::size_t d = comp.module.dim();
    const FieldMatrix to_adapted = kron(v.spinor_P_inv, v.e_P_inv);

    FieldMatrix coeffs(2, 2);
    std::vector<FieldVector> cvecs;
    for (int k = 0; k < 2; ++k) {
        FieldMatrix phi(8 * d, wbasis.size());
        for (std::size_t c = 0; c < wbasis.size(); ++c) {
            FieldVector x = s.m_part(s.g.unit(wbasis[c]));
            for (int i = 0; i < 7; ++i)
                if ((i < 3) != (k == 0)) x[i] = FieldElement();
            for (int a = 0; a < 7; ++a) {
                FieldMatrix f(7, 7);
                for (int j = 0; j < 7; ++j) {
                    f(a, j) += x[j];
                    f(j, a) -= x[j];
                }
                const PForm f14 = lambda2_project(PForm::from_matrix(f), s.phi).fourteen;
                FieldMatrix fm(7, 7);
                for (int i = 0; i < 7; ++i)
                    for (int j = 0; j < 7; ++j)
                        if (i != j) fm(i, j) = f14.get({i, j});
                const FieldVector ec = comp_coords.coordinates(proj * g2.coordinates(fm));
                for (std::size_t q = 0; q < d; ++q) phi((1 + a) * d + q, c) = ec[q];
            }
        }
        const auto coords = hom_coordinates(hs, to_adapted * phi * hs.w_P);
        if (!coords) throw inconsistency_error("natural map is not equivariant");
        cvecs.push_back(*coords);
    }
    const FieldMatrix C = columns(cvecs, 2);
    MixingBlock mb;
    mb.weight = w;
    mb.e_irrep = e_irrep;
    mb.M = inverse(C) * blk.A * C;
    const EigenStructure es = rational_eigenstructure(mb.M);
    for (const auto& [lambda, vecs] : es.spaces)
        if (vecs.size() == 1 && !vecs[0][0].is_zero()) mb.ratio[lambda] = vecs[0][1] / vecs[0][0];
    return mb;
}

}  // namespace g2d
