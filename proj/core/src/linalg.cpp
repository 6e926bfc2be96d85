#include "savgol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "savgol/errors.hpp"

namespace savgol {

Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

CholeskyFactor::CholeskyFactor(const Matrix& spd, double max_condition)
    : lower_(spd.rows(), spd.cols()) {
    const std::size_t n = spd.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, spd(i, i));

    double min_pivot = 0.0;
    double max_pivot = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double d = spd(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= lower_(j, k) * lower_(j, k);
        if (!(d > 0.0)) {
            throw ConditioningError(fmt::format(
                "normal-equations matrix is not positive definite at pivot {}; "
                "try fewer polynomial parameters", j));
        }
        const double piv = std::sqrt(d);
        lower_(j, j) = piv;
        min_pivot = (j == 0) ? piv : std::min(min_pivot, piv);
        max_pivot = std::max(max_pivot, piv);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = spd(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= lower_(i, k) * lower_(j, k);
            lower_(i, j) = s / piv;
        }
    }

    // Pivot-based condition estimate; crude but reliable for flagging the
    // near-singular Vandermonde systems that arise at large n.
    condition_ = (max_pivot / min_pivot) * (max_pivot / min_pivot);
    if (condition_ > max_condition) {
        throw ConditioningError(fmt::format(
            "normal-equations matrix is numerically singular "
            "(condition estimate {:.2e} exceeds {:.0e}); "
            "try fewer polynomial parameters", condition_, max_condition));
    }
}

std::vector<double> CholeskyFactor::solve(std::span<const double> rhs) const {
    const std::size_t n = lower_.rows();
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];
        for (std::size_t k = 0; k < i; ++k) s -= lower_(i, k) * x[k];
        x[i] = s / lower_(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= lower_(k, ii) * x[k];
        x[ii] = s / lower_(ii, ii);
    }
    return x;
}

Matrix CholeskyFactor::solve(const Matrix& rhs) const {
    Matrix out(rhs.rows(), rhs.cols());
    std::vector<double> col(rhs.rows());
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        for (std::size_t i = 0; i < rhs.rows(); ++i) col[i] = rhs(i, j);
        const std::vector<double> x = solve(col);
        for (std::size_t i = 0; i < rhs.rows(); ++i) out(i, j) = x[i];
    }
    return out;
}

std::vector<double> least_squares_qr(const Matrix& a, std::span<const double> b) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    if (b.size() != rows) {
        throw ValidationError("least_squares_qr: rhs length does not match matrix rows");
    }
    if (rows < cols) {
        throw ValidationError("least_squares_qr: system is under-determined");
    }

    Matrix r = a;
    std::vector<double> y(b.begin(), b.end());

    // Householder reflections applied column by column, updating rhs in step.
    for (std::size_t j = 0; j < cols; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < rows; ++i) norm += r(i, j) * r(i, j);
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            throw ConditioningError(fmt::format("least_squares_qr: rank deficient at column {}", j));
        }
        const double alpha = (r(j, j) > 0.0) ? -norm : norm;
        std::vector<double> v(rows - j);
        v[0] = r(j, j) - alpha;
        for (std::size_t i = j + 1; i < rows; ++i) v[i - j] = r(i, j);
        double vtv = 0.0;
        for (double vi : v) vtv += vi * vi;
        if (vtv > 0.0) {
            for (std::size_t c = j; c < cols; ++c) {
                double dot = 0.0;
                for (std::size_t i = j; i < rows; ++i) dot += v[i - j] * r(i, c);
                const double f = 2.0 * dot / vtv;
                for (std::size_t i = j; i < rows; ++i) r(i, c) -= f * v[i - j];
            }
            double dot = 0.0;
            for (std::size_t i = j; i < rows; ++i) dot += v[i - j] * y[i];
            const double f = 2.0 * dot / vtv;
            for (std::size_t i = j; i < rows; ++i) y[i] -= f * v[i - j];
        }
        r(j, j) = alpha;
    }

    double max_diag = 0.0;
    for (std::size_t j = 0; j < cols; ++j) max_diag = std::max(max_diag, std::abs(r(j, j)));
    std::vector<double> x(cols);
    for (std::size_t jj = cols; jj-- > 0;) {
        if (std::abs(r(jj, jj)) < 1e-13 * max_diag) {
            throw ConditioningError(fmt::format("least_squares_qr: rank deficient at column {}", jj));
        }
        double s = y[jj];
        for (std::size_t k = jj + 1; k < cols; ++k) s -= r(jj, k) * x[k];
        x[jj] = s / r(jj, jj);
    }
    return x;
}

} // namespace savgol
