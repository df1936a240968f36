#include "g2d/clifford_g2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace g2d {

namespace {

// sign of the sort permutation, 0 on a repeated index
int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            if (idx[a] == idx[b]) return 0;
            if (idx[a] > idx[b]) sign = -sign;
        }
    std::sort(idx.begin(), idx.end());
    return sign;
}

std::uint8_t mask_of(const std::vector<int>& sorted) {
    std::uint8_t m = 0;
    for (int i : sorted) {
        if (i < 0 || i > 6) throw std::out_of_range("form index outside 0..6");
        m |= static_cast<std::uint8_t>(1u << i);
    }
    return m;
}

std::vector<int> indices_of(std::uint8_t mask) {
    std::vector<int> out;
    for (int i = 0; i < 7; ++i)
        if (mask >> i & 1) out.push_back(i);
    return out;
}

// e_I ∧ e_J = merge_sign(I, J) e_{I∪J} for disjoint I, J
int merge_sign(std::uint8_t a, std::uint8_t b) {
    int swaps = 0;
    for (int i = 0; i < 7; ++i)
        if (a >> i & 1) swaps += std::popcount(static_cast<unsigned>(b & ((1u << i) - 1)));
    return (swaps & 1) ? -1 : 1;
}

}  // namespace

Vec7 unit_vector(int i) {
    Vec7 v;
    v.at(static_cast<std::size_t>(i)) = 1L;
    return v;
}

// ------------------------------------------------------------------ PForm

PForm::PForm(int degree) : degree_(degree) {
    if (degree < 0 || degree > 7) throw std::invalid_argument("form degree outside 0..7");
}

PForm PForm::from_vector(const Vec7& v) {
    PForm f(1);
    for (int i = 0; i < 7; ++i) f.add(static_cast<std::uint8_t>(1u << i), v[i]);
    return f;
}

PForm PForm::from_matrix(const FieldMatrix& a) {
    PForm f(2);
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) f.add(static_cast<std::uint8_t>((1u << i) | (1u << j)), a(i, j));
    return f;
}

PForm PForm::basis(const std::vector<int>& indices) {
    PForm f(static_cast<int>(indices.size()));
    f.set(indices, 1L);
    return f;
}

void PForm::add(std::uint8_t mask, const FieldElement& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
        terms_.emplace(mask, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FieldElement PForm::get(const std::vector<int>& indices) const {
    if (static_cast<int>(indices.size()) != degree_) throw std::invalid_argument("index count differs from degree");
    std::vector<int> idx = indices;
    const int s = sort_sign(idx);
    if (s == 0) return {};
    auto it = terms_.find(mask_of(idx));
    if (it == terms_.end()) return {};
    return s > 0 ? it->second : -it->second;
}

void PForm::set(const std::vector<int>& indices, const FieldElement& value) {
    if (static_cast<int>(indices.size()) != degree_) throw std::invalid_argument("index count differs from degree");
    std::vector<int> idx = indices;
    const int s = sort_sign(idx);
    if (s == 0) {
        if (!value.is_zero()) throw std::invalid_argument("repeated index with nonzero value");
        return;
    }
    const auto m = mask_of(idx);
    terms_.erase(m);
    add(m, s > 0 ? value : -value);
}

PForm& PForm::operator+=(const PForm& o) {
    if (o.degree_ != degree_) throw std::invalid_argument("adding forms of different degree");
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

PForm& PForm::operator-=(const PForm& o) { return *this += o.scaled(FieldElement(-1L)); }

PForm PForm::scaled(const FieldElement& s) const {
    PForm r(degree_);
    for (const auto& [m, c] : terms_) r.add(m, c * s);
    return r;
}

std::string PForm::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string label = "e";
        for (int i : indices_of(m)) label += std::to_string(i + 1);
        if (degree_ == 0) label = "1";
        std::string coef = c.str();
        const bool negative = coef[0] == '-' && c.term_count() == 1;
        if (negative) coef = coef.substr(1);
        if (c.term_count() > 1) coef = "(" + coef + ")";
        os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
        if (coef != "1") os << coef << "*";
        os << label;
        first = false;
    }
    return os.str();
}

PForm wedge(const PForm& a, const PForm& b) {
    if (a.degree_ + b.degree_ > 7) return PForm(7);
    PForm r(a.degree_ + b.degree_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            if (ma & mb) continue;
            const FieldElement c = ca * cb;
            r.add(static_cast<std::uint8_t>(ma | mb), merge_sign(ma, mb) > 0 ? c : -c);
        }
    return r;
}

PForm interior(const Vec7& v, const PForm& a) {
    if (a.degree_ == 0) return PForm(0);
    PForm r(a.degree_ - 1);
    for (const auto& [m, c] : a.terms_)
        for (int i = 0; i < 7; ++i) {
            if (!(m >> i & 1) || v[i].is_zero()) continue;
            // moving e_i to the front passes the lower indices of the set
            const int pass = std::popcount(static_cast<unsigned>(m & ((1u << i) - 1)));
            const FieldElement x = v[i] * c;
            r.add(static_cast<std::uint8_t>(m & ~(1u << i)), (pass & 1) ? -x : x);
        }
    return r;
}

// ------------------------------------------------------- G2StructureTable

G2StructureTable G2StructureTable::unchecked(const std::vector<SignedTriple>& triples) {
    G2StructureTable t;
    t.triples_ = triples;
    for (const auto& tr : triples) {
        const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
        for (int p = 0; p < 6; ++p) {
            const int i = tr.idx[perms[p][0]] - 1, j = tr.idx[perms[p][1]] - 1, k = tr.idx[perms[p][2]] - 1;
            if (i < 0 || i > 6 || j < 0 || j > 6 || k < 0 || k > 6) throw std::out_of_range("φ index outside 1..7");
            if (i == j || j == k || i == k) throw std::invalid_argument("φ triple with repeated index");
            t.phi_[(i * 7 + j) * 7 + k] = FieldElement(static_cast<long>(p < 3 ? tr.sign : -tr.sign));
        }
    }
    t.orientation_ = 1;
    t.fill_psi();
    // choose the orientation that makes ψφ = −4φ
    FieldElement s;
    for (int k = 0; k < 7; ++k)
        for (int l = 0; l < 7; ++l)
            for (int p = 0; p < 7; ++p) s += t.psi(0, 1, k, l) * t.phi(k, l, p) * t.phi(0, 1, p);
    if (!s.is_zero() && s.coeff(0) > 0) {
        t.orientation_ = -1;
        t.fill_psi();
    }
    return t;
}

G2StructureTable G2StructureTable::from_triples(const std::vector<SignedTriple>& triples) {
    G2StructureTable t = unchecked(triples);
    for (const std::string& why : {t.check_phi_phi(), t.check_phi_norm(), t.check_psi_phi()})
        if (!why.empty()) throw std::invalid_argument("not a G2 3-form: " + why);
    return t;
}

void G2StructureTable::fill_psi() {
    const PForm star = hodge_star(phi_form(), *this);
    std::fill(psi_.begin(), psi_.end(), FieldElement());
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            for (int k = 0; k < 7; ++k)
                for (int l = 0; l < 7; ++l) psi_[((i * 7 + j) * 7 + k) * 7 + l] = star.get({i, j, k, l});
}

PForm G2StructureTable::phi_form() const {
    PForm f(3);
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            for (int k = j + 1; k < 7; ++k)
                if (!phi(i, j, k).is_zero()) f.set({i, j, k}, phi(i, j, k));
    return f;
}

PForm G2StructureTable::psi_form() const {
    PForm f(4);
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            for (int k = j + 1; k < 7; ++k)
                for (int l = k + 1; l < 7; ++l)
                    if (!psi(i, j, k, l).is_zero()) f.set({i, j, k, l}, psi(i, j, k, l));
    return f;
}

std::string G2StructureTable::check_phi_phi() const {
    for (int k = 0; k < 7; ++k)
        for (int l = 0; l < 7; ++l) {
            FieldElement s;
            for (int i = 0; i < 7; ++i)
                for (int j = 0; j < 7; ++j) s += phi(i, j, k) * phi(i, j, l);
            if (s != FieldElement(k == l ? 6L : 0L))
                return "phi_ijk phi_ijl at (k,l)=(" + std::to_string(k + 1) + "," + std::to_string(l + 1) + ") is " + s.str();
        }
    return {};
}

std::string G2StructureTable::check_phi_norm() const {
    FieldElement s;
    for (const auto& x : phi_) s += x * x;
    return s == FieldElement(42L) ? std::string() : "phi_ijk phi_ijk is " + s.str();
}

std::string G2StructureTable::check_psi_phi() const {
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            for (int p = 0; p < 7; ++p) {
                FieldElement s;
                for (int k = 0; k < 7; ++k)
                    for (int l = 0; l < 7; ++l) s += psi(i, j, k, l) * phi(k, l, p);
                if (s != FieldElement(-4L) * phi(i, j, p))
                    return "psi_ijkl phi_klp at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                           std::to_string(p + 1) + ") is " + s.str();
            }
    return {};
}

std::string G2StructureTable::str() const { return phi_form().str(); }

PForm hodge_star(const PForm& a, const G2StructureTable& t) {
    PForm r(7 - a.degree());
    for (const auto& [m, c] : a.terms()) {
        const auto comp = static_cast<std::uint8_t>(~m & 0x7f);
        const int s = merge_sign(m, comp) * t.orientation();
        std::vector<int> idx = indices_of(comp);
        r += PForm::basis(idx).scaled(s > 0 ? c : -c);
    }
    return r;
}

// ------------------------------------------------------------ spinors

Spinor Spinor::from_vector(const FieldVector& v) {
    if (v.size() != 8) throw std::invalid_argument("spinor needs 8 components");
    Spinor s;
    s.scalar_part = v[0];
    for (int i = 0; i < 7; ++i) s.vector_part[i] = v[i + 1];
    return s;
}

FieldVector Spinor::to_vector() const {
    FieldVector v(8);
    v[0] = scalar_part;
    for (int i = 0; i < 7; ++i) v[i + 1] = vector_part[i];
    return v;
}

Vec7 cross_product(const Vec7& x, const Vec7& y, const G2StructureTable& t) {
    Vec7 r;
    for (int i = 0; i < 7; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < 7; ++j) {
            if (y[j].is_zero()) continue;
            const FieldElement xy = x[i] * y[j];
            for (int l = 0; l < 7; ++l)
                if (!t.phi(i, j, l).is_zero()) r[l] += xy * t.phi(i, j, l);
        }
    }
    return r;
}

FieldMatrix clifford_matrix(int a, const G2StructureTable& t) {
    // e_a·(f, Z) = (Z_a, −f e_a − e_a × Z)
    FieldMatrix m(8, 8);
    m(0, 1 + a) = 1L;
    m(1 + a, 0) = -1L;
    for (int j = 0; j < 7; ++j)
        for (int l = 0; l < 7; ++l)
            if (!t.phi(a, j, l).is_zero()) m(1 + l, 1 + j) -= t.phi(a, j, l);
    return m;
}

FieldMatrix form_action_matrix(const PForm& beta, const G2StructureTable& t) {
    std::array<FieldMatrix, 7> c;
    for (int a = 0; a < 7; ++a) c[a] = clifford_matrix(a, t);
    FieldMatrix out(8, 8);
    for (const auto& [m, coef] : beta.terms()) {
        FieldMatrix p = FieldMatrix::identity(8);
        for (int i : indices_of(m)) p = p * c[i];
        out += p.scaled(coef);
    }
    return out;
}

Spinor clifford_mul_vector(const Vec7& y, const Spinor& s, const G2StructureTable& t) {
    Spinor r;
    for (int i = 0; i < 7; ++i)
        if (!y[i].is_zero() && !s.vector_part[i].is_zero()) r.scalar_part += y[i] * s.vector_part[i];
    const Vec7 yz = cross_product(y, s.vector_part, t);
    for (int i = 0; i < 7; ++i) r.vector_part[i] = -(s.scalar_part * y[i]) - yz[i];
    return r;
}

Spinor clifford_mul_form(const PForm& beta, const Spinor& s, const G2StructureTable& t) {
    Spinor out;
    for (const auto& [m, coef] : beta.terms()) {
        Spinor cur = s;
        const auto idx = indices_of(m);
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) cur = clifford_mul_vector(unit_vector(*it), cur, t);
        out.scalar_part += coef * cur.scalar_part;
        for (int i = 0; i < 7; ++i) out.vector_part[i] += coef * cur.vector_part[i];
    }
    return out;
}

Lambda2Split lambda2_project(const PForm& beta, const G2StructureTable& t) {
    if (beta.degree() != 2) throw std::invalid_argument("lambda2_project needs a 2-form");
    const PForm s = hodge_star(wedge(t.phi_form(), beta), t);
    PForm seven = (beta - s).scaled(FieldElement(Rational(1, 3)));
    PForm fourteen = beta - seven;
    return {seven, fourteen};
}

Vec7 contract_with_phi(const PForm& beta, const G2StructureTable& t) {
    if (beta.degree() != 2) throw std::invalid_argument("contract_with_phi needs a 2-form");
    Vec7 r;
    for (const auto& [m, c] : beta.terms()) {
        const auto idx = indices_of(m);
        for (int k = 0; k < 7; ++k)
            if (!t.phi(idx[0], idx[1], k).is_zero()) r[k] += c * t.phi(idx[0], idx[1], k);
    }
    return r;
}

bool is_instanton_form(const PForm& beta, const G2StructureTable& t) {
    const Vec7 v = contract_with_phi(beta, t);
    return std::all_of(v.begin(), v.end(), [](const FieldElement& x) { return x.is_zero(); });
}

PForm derivation_on_phi(const FieldMatrix& a, const G2StructureTable& t) {
    PForm out(3);
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            for (int k = j + 1; k < 7; ++k) {
                FieldElement s;
                for (int x = 0; x < 7; ++x) {
                    if (!a(x, i).is_zero()) s += a(x, i) * t.phi(x, j, k);
                    if (!a(x, j).is_zero()) s += a(x, j) * t.phi(i, x, k);
                    if (!a(x, k).is_zero()) s += a(x, k) * t.phi(i, j, x);
                }
                if (!s.is_zero()) out.set({i, j, k}, -s);
            }
    return out;
}

bool casimir_identity_check(const PForm& alpha, const G2StructureTable& t) {
    const int p = alpha.degree();
    const long factor = ((p + 1) % 2 == 0 ? 1 : -1) * (7 - 2 * p);
    const FieldMatrix a = form_action_matrix(alpha, t);
    FieldMatrix sum(8, 8);
    for (int j = 0; j < 7; ++j) {
        const FieldMatrix c = clifford_matrix(j, t);
        sum += c * a * c;
    }
    return sum == a.scaled(FieldElement(factor));
}

}  // namespace g2d
