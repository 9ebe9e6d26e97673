#pragma once

#include "bvfrob/graded.hpp"

#include <optional>
#include <vector>

namespace bvf {

/// Dense exact matrix used for the elimination kernels.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Scalar(0)) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);
    static Matrix from_map(const GradedMap& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec column(std::size_t j) const;
    Matrix transpose() const;
    Vec apply(const Vec& x) const;
    bool is_zero() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

/// Reduced row echelon form with the first-nonzero pivot rule (rows scanned in order).
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivot_cols;
};

Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Kernel basis in the standard form: one vector per free column.
std::vector<Vec> kernel_basis(const Matrix& m);
/// Column-space basis: the pivot columns of m.
std::vector<Vec> image_basis(const Matrix& m);

/// Exact solution of m x = b, or nullopt (NO_SOLUTION). Free variables are set to zero.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
/// Inverse of a square matrix; throws MathError when singular.
Matrix inverse(const Matrix& m);
Scalar determinant(Matrix m);

struct LinearSolution {
    Vec x;
    std::vector<Vec> kernel;  // filled when requested
};

/// solve_linear on a graded map: nullopt means NO_SOLUTION.
std::optional<LinearSolution> solve_linear(const GradedMap& m, const Vec& target, bool with_kernel = false);

struct KernelImage {
    std::vector<Vec> kernel;
    std::vector<Vec> image;
};

KernelImage kernel_image(const GradedMap& m);

}  // namespace bvf
