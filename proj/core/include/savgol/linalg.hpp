#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace savgol {

/// Minimal dense row-major matrix. The filter problems are tiny (a few
/// dozen rows at most), so there is no need for a full linear algebra
/// dependency here.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix identity(std::size_t n) {
        Matrix eye(n, n);
        for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
        return eye;
    }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/// Cholesky factorization of a symmetric positive definite matrix.
/// Throws ConditioningError if a pivot is non-positive or the pivot-based
/// condition estimate exceeds max_condition.
class CholeskyFactor {
public:
    explicit CholeskyFactor(const Matrix& spd, double max_condition = 1e12);

    double condition_estimate() const { return condition_; }

    std::vector<double> solve(std::span<const double> rhs) const;

    /// Solve for every column of rhs at once.
    Matrix solve(const Matrix& rhs) const;

private:
    Matrix lower_;
    double condition_ = 0.0;
};

/// Least-squares solution of min ||a x - b||_2 for a tall full-rank matrix,
/// via Householder QR. Throws ConditioningError on rank deficiency.
std::vector<double> least_squares_qr(const Matrix& a, std::span<const double> b);

} // namespace savgol
