#pragma once
// Exact arithmetic over Q(i, sqrt2, sqrt3, sqrt5) and dense linear algebra on top of it.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace g2d {

using Rational = mpq_class;

std::string rational_str(const Rational& q);            // "p/q" or "p"
Rational parse_rational(const std::string& text);        // accepts "p", "-p/q"

class division_by_zero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Element of the degree-16 field.  Coordinates are over the basis
//   {1, √2, √3, √5, √6, √10, √15, √30} ⊗ {1, i}
// in that order (index k < 8 real part, k + 8 the i-multiple).
class FieldElement {
public:
    static constexpr int kDim = 16;

    FieldElement() = default;
    FieldElement(long n);  // NOLINT: implicit on purpose, integers embed
    FieldElement(const Rational& q);  // NOLINT

    static FieldElement basis(int k);
    static FieldElement imag_unit();
    // √d for squarefree d dividing 30
    static FieldElement sqrt(int d);
    static FieldElement from_coeffs(const std::array<Rational, kDim>& c);

    std::array<Rational, kDim> coeffs() const;
    Rational coeff(int k) const;

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    Rational to_rational() const;  // throws unless is_rational()
    std::size_t term_count() const { return terms_.size(); }

    FieldElement conj() const;  // complex conjugation i -> -i

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    FieldElement operator-() const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // total order on coordinates, used only for canonical sorting
    bool operator<(const FieldElement& o) const;

    std::string str() const;

private:
    // Internal index: bit 3 = factor i, bits 0..2 = which of 2, 3, 5 divide the radicand.
    struct Term {
        std::uint8_t idx;
        Rational c;
    };
    std::vector<Term> terms_;  // sorted by idx, no zero coefficients

    friend FieldElement field_mul(const FieldElement&, const FieldElement&);
    friend FieldElement field_inverse(const FieldElement&);
    void add_term(std::uint8_t idx, const Rational& c);
};

FieldElement field_mul(const FieldElement& a, const FieldElement& b);
// Solves the 16x16 rational system for multiplication by a.
FieldElement field_inverse(const FieldElement& a);
FieldElement parse_field(const std::string& text);  // e.g. "2/3*sqrt5 - i*sqrt2 + 1/2"

using FieldVector = std::vector<FieldElement>;

class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static FieldMatrix identity(std::size_t n);
    static FieldMatrix from_rows(const std::vector<FieldVector>& rows);
    static FieldMatrix from_columns(const std::vector<FieldVector>& cols, std::size_t nrows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    FieldElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const FieldElement& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<FieldElement>& entries() const { return data_; }

    FieldVector column(std::size_t c) const;
    FieldVector row(std::size_t r) const;
    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    FieldMatrix transpose() const;
    FieldMatrix operator*(const FieldMatrix& o) const;
    FieldVector operator*(const FieldVector& v) const;
    FieldMatrix operator+(const FieldMatrix& o) const;
    FieldMatrix operator-(const FieldMatrix& o) const;
    FieldMatrix operator-() const;
    FieldMatrix scaled(const FieldElement& s) const;
    FieldMatrix& operator+=(const FieldMatrix& o);
    bool operator==(const FieldMatrix& o) const;
    bool operator!=(const FieldMatrix& o) const { return !(*this == o); }
    FieldElement trace() const;

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> data_;
};

FieldMatrix commutator(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b);
FieldVector operator+(const FieldVector& a, const FieldVector& b);
FieldVector operator-(const FieldVector& a, const FieldVector& b);
FieldVector scale(const FieldVector& v, const FieldElement& s);
bool is_zero(const FieldVector& v);

// Reduced row echelon form; pivots on the first nonzero entry of each column.
struct Echelon {
    FieldMatrix reduced;
    std::vector<std::size_t> pivot_cols;
};
Echelon rref(FieldMatrix m);
std::size_t rank(const FieldMatrix& m);
// Right null space: one vector per free column, with a 1 in that slot.
std::vector<FieldVector> kernel_basis(const FieldMatrix& m);
std::optional<FieldVector> solve(const FieldMatrix& a, const FieldVector& b);
FieldMatrix inverse(const FieldMatrix& a);  // throws division_by_zero if singular

// Row-by-row elimination for tall, sparse systems.  Stored rows stay fully
// reduced, so the kernel comes out in reduced echelon form at any time.
class SparseEchelon {
public:
    using Row = std::vector<std::pair<std::size_t, FieldElement>>;  // sorted by column

    explicit SparseEchelon(std::size_t unknowns) : n_(unknowns) {}
    bool add_row(Row row);  // true when the rank grew
    std::size_t unknowns() const { return n_; }
    std::size_t rank() const { return rows_.size(); }
    std::vector<std::size_t> free_columns() const;
    // one vector per free column (ascending), 1 in that slot
    std::vector<FieldVector> kernel() const;

private:
    std::size_t n_;
    std::vector<Row> rows_;
    std::map<std::size_t, std::size_t> by_pivot_;  // pivot column -> row
};

// Coordinates with respect to a fixed linearly independent family.
class SpanCoordinates {
public:
    SpanCoordinates() = default;
    explicit SpanCoordinates(const std::vector<FieldVector>& family);
    std::size_t size() const { return family_.size(); }
    // throws std::invalid_argument when v is outside the span
    FieldVector coordinates(const FieldVector& v) const;
    bool contains(const FieldVector& v) const;

private:
    std::vector<FieldVector> family_;
    std::vector<std::size_t> rows_;  // selected coordinates where the family is independent
    FieldMatrix inv_;
};

// Rational polynomials, coefficients from the constant term upward.
using RationalPoly = std::vector<Rational>;
void trim(RationalPoly& p);
RationalPoly poly_gcd(RationalPoly a, RationalPoly b);
RationalPoly poly_derivative(const RationalPoly& p);
RationalPoly poly_divide(const RationalPoly& a, const RationalPoly& b);  // exact division
Rational poly_eval(const RationalPoly& p, const Rational& x);
// Distinct rational roots with multiplicities.
std::map<Rational, int> rational_roots(RationalPoly p);

// Characteristic polynomial det(xI - M), field coefficients from the constant term upward.
std::vector<FieldElement> charpoly(const FieldMatrix& m);

struct EigenStructure {
    std::map<Rational, std::vector<FieldVector>> spaces;
    std::map<Rational, int> algebraic;
    bool residual = false;
};
// Rational eigenvalues: a rational root of the field-coefficient characteristic
// polynomial is a common root of its 16 rational coordinate polynomials.
EigenStructure rational_eigenstructure(const FieldMatrix& m);

}  // namespace g2d
