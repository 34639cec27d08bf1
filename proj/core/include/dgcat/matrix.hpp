#pragma once

#include "dgcat/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dgcat {

using Vec = std::vector<Scalar>;

Vec operator+(const Vec&, const Vec&);
Vec operator-(const Vec&, const Vec&);
Vec operator*(const Scalar&, const Vec&);
bool is_zero(const Vec&);

/* Dense exact matrix. Everything downstream (kernels, cokernels, naturality systems,
 * adjunction isos) reduces to RREF over the configured field. Reduction is fully
 * deterministic: first nonzero pivot in column order, so all derived bases are
 * canonical for a given row space. */
struct Echelon;

class Matrix {
public:
    Matrix() : r_(0), c_(0) {}
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    static Matrix identity(size_t n);
    static Matrix from_columns(size_t rows, const std::vector<Vec>& cols);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Scalar& at(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Scalar& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

    Vec column(size_t j) const;
    Vec row(size_t i) const;
    void set_column(size_t j, const Vec& v);

    Matrix operator*(const Matrix&) const;
    Matrix operator+(const Matrix&) const;
    Matrix operator-(const Matrix&) const;
    Matrix operator-() const;
    Matrix scaled(const Scalar&) const;
    Vec apply(const Vec&) const;
    Matrix transpose() const;
    Matrix hcat(const Matrix&) const;  // [this | other]
    Matrix vcat(const Matrix&) const;  // [this ; other]

    bool is_zero() const;
    bool operator==(const Matrix&) const = default;

    Echelon rref() const;
    size_t rank() const;

    /* Columns form the canonical basis of the null space (free column = 1 slots). */
    Matrix kernel() const;
    Matrix kernel(std::vector<size_t>& free_cols) const;
    /* One solution of A x = b, if consistent. */
    std::optional<Vec> solve(const Vec& b) const;
    /* Columnwise solve of A X = B. */
    std::optional<Matrix> solve_matrix(const Matrix& b) const;
    std::optional<Matrix> inverse() const;
    bool invertible() const;

private:
    size_t r_, c_;
    std::vector<Scalar> a_;
};

struct Echelon {
    Matrix m;                    // reduced row echelon form
    std::vector<size_t> pivots;  // pivot column per nonzero row
};

/* Canonical complement data for K^dim / span(columns of gens):
 * `kept` lists the coordinates whose classes form the quotient basis, `proj` is the
 * projection matrix (kept.size() x dim) and `section` the coordinate section
 * (dim x kept.size()); proj * section = id and ker(proj) = span(gens). */
struct QuotientSplit {
    std::vector<size_t> kept;
    Matrix proj;
    Matrix section;
};
QuotientSplit quotient_by_columns(const Matrix& gens, size_t dim);

/* Does v lie in the column space? */
bool in_span(const Matrix& columns, const Vec& v);

}  // namespace dgcat
