#include "bvfrob/linalg.hpp"

#include <utility>

namespace bvf {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows)
{
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    return m;
}

Matrix Matrix::from_map(const GradedMap& g)
{
    Matrix m(g.rows(), g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (const auto& [j, a] : g.row(i))
            m(i, j) = a;
    return m;
}

Vec Matrix::row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

Vec Matrix::column(std::size_t j) const
{
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

Vec Matrix::apply(const Vec& x) const
{
    if (x.size() != cols_)
        throw MathError("matrix-vector dimension mismatch");
    Vec y(rows_, Scalar(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn((*this)(i, j)) != 0 && sgn(x[j]) != 0)
                y[i] += (*this)(i, j) * x[j];
    return y;
}

bool Matrix::is_zero() const
{
    for (const auto& x : a_)
        if (sgn(x) != 0)
            return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_)
        throw MathError("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (sgn(x) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0)
                    c(i, j) += x * b(k, j);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw MathError("matrix sum dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i)
        c.a_[i] += b.a_[i];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw MathError("matrix difference dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i)
        c.a_[i] -= b.a_[i];
    return c;
}

Echelon rref(Matrix m)
{
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && sgn(m(p, c)) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        Scalar inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || sgn(m(i, c)) == 0)
                continue;
            Scalar f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (sgn(m(r, j)) != 0)
                    m(i, j) -= f * m(r, j);
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.reduced = std::move(m);
    return e;
}

std::size_t rank(const Matrix& m) { return rref(m).pivot_cols.size(); }

std::vector<Vec> kernel_basis(const Matrix& m)
{
    Echelon e = rref(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto c : e.pivot_cols)
        is_pivot[c] = 1;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vec v(m.cols(), Scalar(0));
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            v[e.pivot_cols[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> image_basis(const Matrix& m)
{
    Echelon e = rref(m);
    std::vector<Vec> basis;
    for (auto c : e.pivot_cols)
        basis.push_back(m.column(c));
    return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b)
{
    if (b.size() != m.rows())
        throw MathError("right-hand side dimension mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Echelon e = rref(std::move(aug));
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols())
        return std::nullopt;
    Vec x(m.cols(), Scalar(0));
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
        x[e.pivot_cols[r]] = e.reduced(r, m.cols());
    return x;
}

Matrix inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw MathError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    Echelon e = rref(std::move(aug));
    if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1)
        throw MathError("matrix is singular");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = e.reduced(i, n + j);
    return inv;
}

Scalar determinant(Matrix m)
{
    if (m.rows() != m.cols())
        throw MathError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    Scalar det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(m(i, c)) == 0)
                continue;
            Scalar f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

std::optional<LinearSolution> solve_linear(const GradedMap& m, const Vec& target, bool with_kernel)
{
    if (target.size() != m.rows())
        throw MathError("solve_linear: target dimension mismatch");
    Matrix dense = Matrix::from_map(m);
    auto x = solve(dense, target);
    if (!x)
        return std::nullopt;
    LinearSolution s{std::move(*x), {}};
    if (with_kernel)
        s.kernel = kernel_basis(dense);
    return s;
}

KernelImage kernel_image(const GradedMap& m)
{
    Matrix dense = Matrix::from_map(m);
    return {kernel_basis(dense), image_basis(dense)};
}

}  // namespace bvf
