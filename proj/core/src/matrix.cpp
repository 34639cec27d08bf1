#include "dgcat/matrix.hpp"

#include <stdexcept>

namespace dgcat {

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec: size mismatch in +");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec: size mismatch in -");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec operator*(const Scalar& s, const Vec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Matrix Matrix::identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one();
    return m;
}

Matrix Matrix::from_columns(size_t rows, const std::vector<Vec>& cols) {
    Matrix m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("matrix: bad column length");
        for (size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

Vec Matrix::column(size_t j) const {
    Vec v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = at(i, j);
    return v;
}

Vec Matrix::row(size_t i) const {
    Vec v(c_);
    for (size_t j = 0; j < c_; ++j) v[j] = at(i, j);
    return v;
}

void Matrix::set_column(size_t j, const Vec& v) {
    if (v.size() != r_) throw std::invalid_argument("matrix: bad column length");
    for (size_t i = 0; i < r_; ++i) at(i, j) = v[i];
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix: shape mismatch in *");
    Matrix m(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const Scalar& x = at(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < o.c_; ++j) m.at(i, j) += x * o.at(k, j);
        }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix: shape mismatch in +");
    Matrix m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix: shape mismatch in -");
    Matrix m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
}

Matrix Matrix::operator-() const {
    Matrix m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
    return m;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = s * a_[i];
    return m;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != c_) throw std::invalid_argument("matrix: shape mismatch in apply");
    Vec r(r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j)
            if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

Matrix Matrix::transpose() const {
    Matrix m(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Matrix Matrix::hcat(const Matrix& o) const {
    if (r_ != o.r_) throw std::invalid_argument("matrix: row mismatch in hcat");
    Matrix m(r_, c_ + o.c_);
    for (size_t i = 0; i < r_; ++i) {
        for (size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
        for (size_t j = 0; j < o.c_; ++j) m.at(i, c_ + j) = o.at(i, j);
    }
    return m;
}

Matrix Matrix::vcat(const Matrix& o) const {
    if (c_ != o.c_) throw std::invalid_argument("matrix: col mismatch in vcat");
    Matrix m(r_ + o.r_, c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
    for (size_t i = 0; i < o.r_; ++i)
        for (size_t j = 0; j < c_; ++j) m.at(r_ + i, j) = o.at(i, j);
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Echelon Matrix::rref() const {
    Echelon e{*this, {}};
    Matrix& m = e.m;
    size_t row = 0;
    for (size_t col = 0; col < c_ && row < r_; ++col) {
        size_t piv = row;
        while (piv < r_ && m.at(piv, col).is_zero()) ++piv;
        if (piv == r_) continue;
        if (piv != row)
            for (size_t j = 0; j < c_; ++j) std::swap(m.at(piv, j), m.at(row, j));
        Scalar f = m.at(row, col).inv();
        for (size_t j = col; j < c_; ++j) m.at(row, j) *= f;
        for (size_t i = 0; i < r_; ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            Scalar f2 = m.at(i, col);
            for (size_t j = col; j < c_; ++j) m.at(i, j) -= f2 * m.at(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    return e;
}

size_t Matrix::rank() const { return rref().pivots.size(); }

Matrix Matrix::kernel() const {
    std::vector<size_t> free_cols;
    return kernel(free_cols);
}

Matrix Matrix::kernel(std::vector<size_t>& free_cols) const {
    Echelon e = rref();
    free_cols.clear();
    {
        size_t pi = 0;
        for (size_t j = 0; j < c_; ++j) {
            if (pi < e.pivots.size() && e.pivots[pi] == j)
                ++pi;
            else
                free_cols.push_back(j);
        }
    }
    Matrix k(c_, free_cols.size());
    for (size_t idx = 0; idx < free_cols.size(); ++idx) {
        size_t fc = free_cols[idx];
        k.at(fc, idx) = Scalar::one();
        for (size_t r = 0; r < e.pivots.size(); ++r) k.at(e.pivots[r], idx) = -e.m.at(r, fc);
    }
    return k;
}

std::optional<Vec> Matrix::solve(const Vec& b) const {
    auto m = solve_matrix(from_columns(r_, {b}));
    if (!m) return std::nullopt;
    return m->column(0);
}

std::optional<Matrix> Matrix::solve_matrix(const Matrix& b) const {
    if (b.rows() != r_) throw std::invalid_argument("matrix: rhs row mismatch in solve");
    Echelon e = hcat(b).rref();
    /* Inconsistent iff some pivot lands in the rhs block. */
    for (size_t p : e.pivots)
        if (p >= c_) return std::nullopt;
    Matrix x(c_, b.cols());
    for (size_t r = 0; r < e.pivots.size(); ++r)
        for (size_t j = 0; j < b.cols(); ++j) x.at(e.pivots[r], j) = e.m.at(r, c_ + j);
    return x;
}

std::optional<Matrix> Matrix::inverse() const {
    if (r_ != c_) return std::nullopt;
    if (rank() != r_) return std::nullopt;
    return solve_matrix(identity(r_));
}

bool Matrix::invertible() const { return r_ == c_ && rank() == r_; }

QuotientSplit quotient_by_columns(const Matrix& gens, size_t dim) {
    if (gens.cols() != 0 && gens.rows() != dim)
        throw std::invalid_argument("quotient: generator length mismatch");
    /* Echelonize the generators as rows; pivot coordinates are killed, the rest
     * survive as the canonical quotient basis. */
    Matrix rows = gens.transpose();
    Echelon e = rows.rref();
    QuotientSplit q;
    {
        size_t pi = 0;
        for (size_t j = 0; j < dim; ++j) {
            if (pi < e.pivots.size() && e.pivots[pi] == j)
                ++pi;
            else
                q.kept.push_back(j);
        }
    }
    q.proj = Matrix(q.kept.size(), dim);
    for (size_t j = 0; j < dim; ++j) {
        /* Reduce e_j by the echelon rows, then read off surviving coordinates. */
        Vec x(dim);
        x[j] = Scalar::one();
        for (size_t r = 0; r < e.pivots.size(); ++r) {
            const Scalar& c = x[e.pivots[r]];
            if (c.is_zero()) continue;
            Scalar f = c;  // pivot entries are 1
            for (size_t k = 0; k < dim; ++k) x[k] -= f * e.m.at(r, k);
        }
        for (size_t i = 0; i < q.kept.size(); ++i) q.proj.at(i, j) = x[q.kept[i]];
    }
    q.section = Matrix(dim, q.kept.size());
    for (size_t i = 0; i < q.kept.size(); ++i) q.section.at(q.kept[i], i) = Scalar::one();
    return q;
}

bool in_span(const Matrix& columns, const Vec& v) {
    if (is_zero(v)) return true;
    return columns.solve(v).has_value();
}

}  // namespace dgcat
