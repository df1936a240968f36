#include "g2d/algebraics.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace g2d {

namespace {

// internal index (i-bit << 3 | prime mask) <-> public coordinate position
constexpr int kMaskToPos[8] = {0, 1, 2, 4, 3, 5, 6, 7};
constexpr int kPosToMask[8] = {0, 1, 2, 4, 3, 5, 6, 7};
constexpr int kPrimes[3] = {2, 3, 5};
const char* const kRadicand[8] = {"", "sqrt2", "sqrt3", "sqrt6", "sqrt5", "sqrt10", "sqrt15", "sqrt30"};

int pos_of(std::uint8_t idx) { return kMaskToPos[idx & 7] + ((idx & 8) ? 8 : 0); }
std::uint8_t idx_of(int pos) {
    return static_cast<std::uint8_t>(kPosToMask[pos & 7] | (pos >= 8 ? 8 : 0));
}

// basis_a * basis_b = sign * prod * basis_(a^b)
long basis_product_scale(std::uint8_t a, std::uint8_t b) {
    long s = 1;
    const int common = a & b & 7;
    for (int k = 0; k < 3; ++k)
        if (common & (1 << k)) s *= kPrimes[k];
    if ((a & 8) && (b & 8)) s = -s;
    return s;
}

}  // namespace

std::string rational_str(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

FieldElement::FieldElement(long n) {
    if (n != 0) terms_.push_back({0, Rational(n)});
}

FieldElement::FieldElement(const Rational& q) {
    if (sgn(q) != 0) terms_.push_back({0, q});
}

FieldElement FieldElement::basis(int k) {
    if (k < 0 || k >= kDim) throw std::out_of_range("field basis index");
    FieldElement e;
    e.terms_.push_back({idx_of(k), Rational(1)});
    return e;
}

FieldElement FieldElement::imag_unit() { return basis(8); }

FieldElement FieldElement::sqrt(int d) {
    std::uint8_t mask = 0;
    int rest = d;
    for (int k = 0; k < 3; ++k)
        if (rest % kPrimes[k] == 0) {
            mask |= static_cast<std::uint8_t>(1 << k);
            rest /= kPrimes[k];
        }
    if (d <= 0 || rest != 1) throw std::invalid_argument("sqrt of " + std::to_string(d) + " is outside the field");
    FieldElement e;
    e.terms_.push_back({mask, Rational(1)});
    return e;
}

FieldElement FieldElement::from_coeffs(const std::array<Rational, kDim>& c) {
    FieldElement e;
    for (int pos = 0; pos < kDim; ++pos) e.add_term(idx_of(pos), c[pos]);
    return e;
}

std::array<Rational, FieldElement::kDim> FieldElement::coeffs() const {
    std::array<Rational, kDim> out;
    for (const auto& t : terms_) out[pos_of(t.idx)] = t.c;
    return out;
}

Rational FieldElement::coeff(int k) const {
    const auto idx = idx_of(k);
    for (const auto& t : terms_)
        if (t.idx == idx) return t.c;
    return 0;
}

bool FieldElement::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].idx == 0); }

Rational FieldElement::to_rational() const {
    if (!is_rational()) throw std::domain_error("field element is not rational: " + str());
    return terms_.empty() ? Rational(0) : terms_[0].c;
}

void FieldElement::add_term(std::uint8_t idx, const Rational& c) {
    if (sgn(c) == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), idx,
                               [](const Term& t, std::uint8_t i) { return t.idx < i; });
    if (it != terms_.end() && it->idx == idx) {
        it->c += c;
        if (sgn(it->c) == 0) terms_.erase(it);
    } else {
        terms_.insert(it, Term{idx, c});
    }
}

FieldElement FieldElement::conj() const {
    FieldElement r = *this;
    for (auto& t : r.terms_)
        if (t.idx & 8) t.c = -t.c;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].idx < o.terms_[j].idx)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].idx < terms_[i].idx) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].c + o.terms_[j].c;
            if (sgn(c) != 0) out.push_back({terms_[i].idx, std::move(c)});
            ++i, ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement field_mul(const FieldElement& a, const FieldElement& b) {
    FieldElement r;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
        const auto& x = a.terms_[0];
        const auto& y = b.terms_[0];
        r.terms_.push_back({static_cast<std::uint8_t>(x.idx ^ y.idx), x.c * y.c * basis_product_scale(x.idx, y.idx)});
        return r;
    }
    std::array<Rational, 16> acc;
    std::uint16_t used = 0;
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) {
            const auto k = static_cast<std::uint8_t>(x.idx ^ y.idx);
            acc[k] += x.c * y.c * basis_product_scale(x.idx, y.idx);
            used |= static_cast<std::uint16_t>(1u << k);
        }
    for (std::uint8_t k = 0; k < 16; ++k)
        if ((used >> k & 1) && sgn(acc[k]) != 0) r.terms_.push_back({k, std::move(acc[k])});
    return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) { return field_mul(a, b); }

FieldElement& FieldElement::operator*=(const FieldElement& o) { return *this = field_mul(*this, o); }

FieldElement field_inverse(const FieldElement& a) {
    if (a.is_zero()) throw division_by_zero("inverse of zero field element");
    FieldElement r;
    if (a.terms_.size() == 1) {
        // (c b)^-1 = b / (c b^2), with b^2 = +-radicand
        const auto& t = a.terms_[0];
        r.terms_.push_back({t.idx, 1 / (t.c * basis_product_scale(t.idx, t.idx))});
        return r;
    }
    // Column k of the multiplication-by-a matrix is a * basis_k; solve M x = e_0.
    constexpr int n = 16;
    std::array<std::array<Rational, n + 1>, n> m;
    for (std::uint8_t k = 0; k < n; ++k)
        for (const auto& t : a.terms_) m[t.idx ^ k][k] += t.c * basis_product_scale(t.idx, k);
    m[0][n] = 1;
    for (int col = 0, row = 0; col < n; ++col, ++row) {
        int p = row;
        while (p < n && sgn(m[p][col]) == 0) ++p;
        if (p == n) throw division_by_zero("singular multiplication map");  // impossible in a field
        std::swap(m[p], m[row]);
        const Rational inv = 1 / m[row][col];
        for (int c = col; c <= n; ++c) m[row][c] *= inv;
        for (int r2 = 0; r2 < n; ++r2) {
            if (r2 == row || sgn(m[r2][col]) == 0) continue;
            const Rational f = m[r2][col];
            for (int c = col; c <= n; ++c) m[r2][c] -= f * m[row][c];
        }
    }
    for (std::uint8_t k = 0; k < n; ++k)
        if (sgn(m[k][n]) != 0) r.terms_.push_back({k, m[k][n]});
    return r;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this = field_mul(*this, field_inverse(o)); }

bool FieldElement::operator==(const FieldElement& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t k = 0; k < terms_.size(); ++k)
        if (terms_[k].idx != o.terms_[k].idx || terms_[k].c != o.terms_[k].c) return false;
    return true;
}

bool FieldElement::operator<(const FieldElement& o) const {
    const auto a = coeffs();
    const auto b = o.coeffs();
    for (int k = 0; k < kDim; ++k)
        if (a[k] != b[k]) return a[k] < b[k];
    return false;
}

std::string FieldElement::str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<int, const Term*>> byPos;
    for (const auto& t : terms_) byPos.emplace_back(pos_of(t.idx), &t);
    std::sort(byPos.begin(), byPos.end(), [](auto& x, auto& y) { return x.first < y.first; });
    std::string out;
    bool first = true;
    for (const auto& [pos, t] : byPos) {
        Rational c = t->c;
        if (!first) {
            out += sgn(c) < 0 ? " - " : " + ";
            c = abs(c);
        } else if (sgn(c) < 0) {
            out += "-";
            c = -c;
        }
        first = false;
        std::string unit;
        if (t->idx & 8) unit = "i";
        if (t->idx & 7) unit += std::string(unit.empty() ? "" : "*") + kRadicand[t->idx & 7];
        if (unit.empty())
            out += c.get_str();
        else if (c == 1)
            out += unit;
        else
            out += c.get_str() + "*" + unit;
    }
    return out;
}

FieldElement parse_field(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty field element");
    FieldElement total;
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw std::invalid_argument("malformed field element: " + text);
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        const std::string term = s.substr(pos, end - pos);
        if (term.empty()) throw std::invalid_argument("malformed field element: " + text);
        FieldElement value(1L);
        std::stringstream ss(term);
        std::string factor;
        while (std::getline(ss, factor, '*')) {
            if (factor == "i")
                value *= FieldElement::imag_unit();
            else if (factor.rfind("sqrt", 0) == 0)
                value *= FieldElement::sqrt(std::stoi(factor.substr(4)));
            else
                value *= FieldElement(parse_rational(factor));
        }
        total += sign < 0 ? -value : value;
        pos = end;
    }
    return total;
}

// ---------------------------------------------------------------- matrices

FieldMatrix FieldMatrix::identity(std::size_t n) {
    FieldMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1L;
    return m;
}

FieldMatrix FieldMatrix::from_rows(const std::vector<FieldVector>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows[0].size();
    FieldMatrix m(rows.size(), c);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != c) throw std::invalid_argument("ragged rows");
        for (std::size_t k = 0; k < c; ++k) m(r, k) = rows[r][k];
    }
    return m;
}

FieldMatrix FieldMatrix::from_columns(const std::vector<FieldVector>& cols, std::size_t nrows) {
    FieldMatrix m(nrows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != nrows) throw std::invalid_argument("ragged columns");
        for (std::size_t r = 0; r < nrows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

FieldVector FieldMatrix::column(std::size_t c) const {
    FieldVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

FieldVector FieldMatrix::row(std::size_t r) const {
    return FieldVector(data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_));
}

bool FieldMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const FieldElement& x) { return x.is_zero(); });
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    FieldMatrix p(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const FieldElement& a = (*this)(r, k);
            if (a.is_zero()) continue;
            for (std::size_t c = 0; c < o.cols_; ++c) {
                const FieldElement& b = o(k, c);
                if (!b.is_zero()) p(r, c) += a * b;
            }
        }
    return p;
}

FieldVector FieldMatrix::operator*(const FieldVector& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    FieldVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k)
            if (!(*this)(r, k).is_zero() && !v[k].is_zero()) out[r] += (*this)(r, k) * v[k];
    return out;
}

FieldMatrix& FieldMatrix::operator+=(const FieldMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& o) const {
    FieldMatrix r = *this;
    return r += o;
}

FieldMatrix FieldMatrix::operator-() const {
    FieldMatrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& o) const { return *this + (-o); }

FieldMatrix FieldMatrix::scaled(const FieldElement& s) const {
    FieldMatrix r = *this;
    for (auto& x : r.data_)
        if (!x.is_zero()) x *= s;
    return r;
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

FieldElement FieldMatrix::trace() const {
    FieldElement t;
    for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) t += (*this)(k, k);
    return t;
}

std::string FieldMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

FieldMatrix commutator(const FieldMatrix& a, const FieldMatrix& b) { return a * b - b * a; }

FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b) {
    FieldMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    if (!b(p, q).is_zero()) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

FieldVector operator+(const FieldVector& a, const FieldVector& b) {
    FieldVector r = a;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
    return r;
}

FieldVector operator-(const FieldVector& a, const FieldVector& b) {
    FieldVector r = a;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
    return r;
}

FieldVector scale(const FieldVector& v, const FieldElement& s) {
    FieldVector r = v;
    for (auto& x : r)
        if (!x.is_zero()) x *= s;
    return r;
}

bool is_zero(const FieldVector& v) {
    return std::all_of(v.begin(), v.end(), [](const FieldElement& x) { return x.is_zero(); });
}

// ------------------------------------------------------------- elimination

Echelon rref(FieldMatrix m) {
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        const FieldElement inv = field_inverse(m(row, col));
        for (std::size_t c = col; c < m.cols(); ++c)
            if (!m(row, c).is_zero()) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            const FieldElement f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

std::size_t rank(const FieldMatrix& m) { return rref(m).pivot_cols.size(); }

std::vector<FieldVector> kernel_basis(const FieldMatrix& m) {
    const Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<FieldVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        FieldVector v(m.cols());
        v[f] = 1L;
        for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) v[e.pivot_cols[k]] = -e.reduced(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<FieldVector> solve(const FieldMatrix& a, const FieldVector& b) {
    FieldMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    const Echelon e = rref(aug);
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == a.cols()) return std::nullopt;
    FieldVector x(a.cols());
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) x[e.pivot_cols[k]] = e.reduced(k, a.cols());
    return x;
}

FieldMatrix inverse(const FieldMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = a.rows();
    FieldMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n + r) = 1L;
    }
    const Echelon e = rref(aug);
    if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1) throw division_by_zero("singular matrix");
    FieldMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
    return inv;
}

namespace {

// r += f * s over sorted sparse rows
void sparse_axpy(SparseEchelon::Row& r, const FieldElement& f, const SparseEchelon::Row& s) {
    SparseEchelon::Row out;
    out.reserve(r.size() + s.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
        if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
            out.push_back(std::move(r[i++]));
        } else if (i == r.size() || s[j].first < r[i].first) {
            out.emplace_back(s[j].first, f * s[j].second);
            ++j;
        } else {
            FieldElement v = r[i].second + f * s[j].second;
            if (!v.is_zero()) out.emplace_back(r[i].first, std::move(v));
            ++i, ++j;
        }
    }
    r = std::move(out);
}

const FieldElement* sparse_find(const SparseEchelon::Row& r, std::size_t col) {
    auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
    return (it != r.end() && it->first == col) ? &it->second : nullptr;
}

}  // namespace

bool SparseEchelon::add_row(Row row) {
    row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return e.second.is_zero(); }), row.end());
    // Stored rows vanish on each other's pivots, so the coefficients to subtract
    // are read off the incoming row once.
    std::vector<std::pair<std::size_t, FieldElement>> hits;
    for (const auto& [col, v] : row) {
        auto it = by_pivot_.find(col);
        if (it != by_pivot_.end()) hits.emplace_back(it->second, v);
    }
    for (const auto& [r, v] : hits) sparse_axpy(row, -v, rows_[r]);
    if (row.empty()) return false;
    const std::size_t pivot = row.front().first;
    const FieldElement inv = field_inverse(row.front().second);
    for (auto& e : row) e.second *= inv;
    for (auto& other : rows_) {
        const FieldElement* hit = sparse_find(other, pivot);
        if (hit) {
            const FieldElement f = -*hit;
            sparse_axpy(other, f, row);
        }
    }
    by_pivot_[pivot] = rows_.size();
    rows_.push_back(std::move(row));
    return true;
}

std::vector<std::size_t> SparseEchelon::free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < n_; ++c)
        if (!by_pivot_.count(c)) out.push_back(c);
    return out;
}

std::vector<FieldVector> SparseEchelon::kernel() const {
    std::vector<FieldVector> basis;
    for (std::size_t f : free_columns()) {
        FieldVector v(n_);
        v[f] = 1L;
        for (const auto& [p, r] : by_pivot_) {
            const FieldElement* x = sparse_find(rows_[r], f);
            if (x) v[p] = -*x;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

SpanCoordinates::SpanCoordinates(const std::vector<FieldVector>& family) : family_(family) {
    if (family_.empty()) return;
    const std::size_t n = family_[0].size();
    const FieldMatrix ft = FieldMatrix::from_rows(family_);  // k x n
    const Echelon e = rref(ft);
    if (e.pivot_cols.size() != family_.size()) throw std::invalid_argument("family is linearly dependent");
    rows_ = e.pivot_cols;
    FieldMatrix sub(rows_.size(), rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (std::size_t c = 0; c < family_.size(); ++c) sub(r, c) = family_[c][rows_[r]];
    inv_ = inverse(sub);
    (void)n;
}

FieldVector SpanCoordinates::coordinates(const FieldVector& v) const {
    FieldVector picked(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) picked[r] = v[rows_[r]];
    FieldVector c = inv_ * picked;
    FieldVector back(v.size());
    for (std::size_t k = 0; k < family_.size(); ++k)
        if (!c[k].is_zero())
            for (std::size_t r = 0; r < v.size(); ++r)
                if (!family_[k][r].is_zero()) back[r] += c[k] * family_[k][r];
    if (back != v) throw std::invalid_argument("vector outside the span");
    return c;
}

bool SpanCoordinates::contains(const FieldVector& v) const {
    try {
        coordinates(v);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

// ------------------------------------------------------------- polynomials

void trim(RationalPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Rational poly_eval(const RationalPoly& p, const Rational& x) {
    Rational v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

RationalPoly poly_derivative(const RationalPoly& p) {
    RationalPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    trim(d);
    return d;
}

namespace {

// quotient and remainder of a / b
std::pair<RationalPoly, RationalPoly> poly_divmod(RationalPoly a, RationalPoly b) {
    trim(a);
    trim(b);
    if (b.empty()) throw division_by_zero("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    RationalPoly q(a.size() - b.size() + 1);
    for (std::size_t k = a.size(); k-- >= b.size();) {
        const Rational f = a[k] / b.back();
        const std::size_t shift = k - (b.size() - 1);
        q[shift] = f;
        if (sgn(f) != 0)
            for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
        if (k == 0) break;
    }
    a.resize(b.size() - 1);
    trim(a);
    trim(q);
    return {q, a};
}

void make_monic(RationalPoly& p) {
    trim(p);
    if (p.empty()) return;
    const Rational lead = p.back();
    for (auto& c : p) c /= lead;
}

int sign_variations(const std::vector<RationalPoly>& seq, const Rational& x) {
    int count = 0, last = 0;
    for (const auto& p : seq) {
        const int s = sgn(poly_eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

// smallest-denominator fraction in [lo, hi], lo <= hi (Stern-Brocot descent)
Rational simplest_between(Rational lo, Rational hi) {
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return 0;
    if (sgn(hi) < 0) return -simplest_between(-hi, -lo);
    mpz_class fl = lo.get_num() / lo.get_den();  // floor for positive lo
    if (Rational(fl) == lo) return lo;
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    // both in (fl, fl+1): recurse on reciprocals of fractional parts
    const Rational a = lo - fl, b = hi - fl;
    return Rational(fl) + 1 / simplest_between(1 / b, 1 / a);
}

}  // namespace

RationalPoly poly_divide(const RationalPoly& a, const RationalPoly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.empty()) throw std::invalid_argument("polynomial division is not exact");
    return q;
}

RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a);
    return a;
}

std::map<Rational, int> rational_roots(RationalPoly p) {
    trim(p);
    std::map<Rational, int> roots;
    if (p.size() <= 1) return roots;
    // squarefree part, then Sturm isolation; a rational root p/q has q | lead of
    // the primitive integer form, so an interval narrower than 1/lead^2 holds at
    // most one candidate: its simplest fraction.
    RationalPoly f = poly_divide(p, poly_gcd(p, poly_derivative(p)));
    mpz_class den_lcm = 1;
    for (const auto& c : f) den_lcm = lcm(den_lcm, c.get_den());
    mpz_class lead = abs(mpz_class(f.back() * den_lcm));
    mpz_class g = 0;
    for (const auto& c : f) g = gcd(g, mpz_class(c * den_lcm));
    lead /= g;

    std::vector<RationalPoly> sturm{f, poly_derivative(f)};
    while (sturm.back().size() > 1) {
        auto r = poly_divmod(sturm[sturm.size() - 2], sturm.back()).second;
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        sturm.push_back(std::move(r));
    }
    Rational bound = 0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) bound = std::max(bound, Rational(abs(f[k] / f.back())));
    bound += 1;
    const Rational width_goal = Rational(1, 1) / Rational(lead * lead * 2);

    std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};  // half-open (lo, hi]
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        const int n = sign_variations(sturm, lo) - sign_variations(sturm, hi);
        if (n == 0) continue;
        if (n == 1 && hi - lo < width_goal) {
            const Rational cand = simplest_between(lo, hi);
            if (cand > lo && sgn(poly_eval(f, cand)) == 0) roots[cand] = 0;
            continue;
        }
        const Rational mid = (lo + hi) / 2;
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    for (auto& [r, mult] : roots) {
        RationalPoly rest = p;
        const RationalPoly lin{-r, Rational(1)};
        while (true) {
            auto [q, rem] = poly_divmod(rest, lin);
            if (!rem.empty()) break;
            ++mult;
            rest = std::move(q);
        }
    }
    return roots;
}

std::vector<FieldElement> charpoly(const FieldMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("charpoly of non-square matrix");
    // Faddeev-LeVerrier
    const std::size_t n = a.rows();
    std::vector<FieldElement> c(n + 1);
    c[n] = 1L;
    FieldMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        FieldMatrix next = a * m;
        for (std::size_t d = 0; d < n; ++d) next(d, d) += c[n - k + 1];
        m = std::move(next);
        c[n - k] = -(a * m).trace() / FieldElement(static_cast<long>(k));
    }
    return c;
}

EigenStructure rational_eigenstructure(const FieldMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("eigenstructure of non-square matrix");
    EigenStructure out;
    const auto cp = charpoly(m);
    RationalPoly g;
    for (int k = 0; k < FieldElement::kDim; ++k) {
        RationalPoly coord;
        for (const auto& c : cp) coord.push_back(c.coeff(k));
        trim(coord);
        if (coord.empty()) continue;
        g = g.empty() ? coord : poly_gcd(g, coord);
    }
    std::size_t found = 0;
    for (const auto& [lambda, mult] : rational_roots(g)) {
        FieldMatrix shifted = m;
        for (std::size_t d = 0; d < m.rows(); ++d) shifted(d, d) -= FieldElement(lambda);
        auto basis = kernel_basis(shifted);
        found += basis.size();
        out.algebraic[lambda] = mult;
        out.spaces[lambda] = std::move(basis);
    }
    out.residual = found != m.rows();
    return out;
}

}  // namespace g2d
