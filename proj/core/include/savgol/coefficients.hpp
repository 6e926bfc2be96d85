#pragma once

#include <span>
#include <vector>

#include "savgol/filter_spec.hpp"
#include "savgol/linalg.hpp"

namespace savgol {

/// The pieces of the windowed weighted least-squares problem. The abscissa
/// is scaled to [-1, 1], so x_i = (i - 1 - m) / m for 1-based i = 1..2m+1
/// and the sample spacing is 1/m.
struct DesignMatrices {
    std::vector<double> abscissa;  ///< x values, length 2m+1
    Matrix vandermonde;            ///< (2m+1) x n, entry x_i^(j-1)
    std::vector<double> weight;    ///< diagonal residual weights, length 2m+1
    Matrix derivative_map;         ///< n x n superdiagonal map a -> (per-sample) a'
};

/// Diagonal residual weights for the spec. Mean is one in both modes; the
/// quadratic taper vanishes at the virtual indices 0 and 2m+2.
std::vector<double> build_weights(const FilterSpec& spec);

DesignMatrices build_design_matrices(const FilterSpec& spec);

/// All 2m+1 smoothing and derivative coefficient rows for one spec. Row j
/// (0-based) gives the filter output at window position j; the center row
/// half_window is the one used for interior samples, the others only where
/// the window is pinned to a data boundary.
class CoefficientBank {
public:
    CoefficientBank(FilterSpec spec, Matrix smooth, Matrix deriv)
        : spec_(spec), smooth_(std::move(smooth)), deriv_(std::move(deriv)) {}

    const FilterSpec& spec() const { return spec_; }
    int window_size() const { return spec_.window_size(); }

    std::span<const double> smooth_row(int j) const { return smooth_.row(j); }
    std::span<const double> deriv_row(int j) const { return deriv_.row(j); }
    std::span<const double> center_smooth_row() const { return smooth_.row(spec_.half_window); }
    std::span<const double> center_deriv_row() const { return deriv_.row(spec_.half_window); }

    const Matrix& smooth() const { return smooth_; }
    const Matrix& deriv() const { return deriv_; }

private:
    FilterSpec spec_;
    Matrix smooth_;
    Matrix deriv_;
};

/// Build the coefficient bank by solving the weighted normal equations with
/// a symmetric positive definite factorization (no explicit inverse).
/// Throws ConditioningError when the normal-equations matrix is numerically
/// singular (condition estimate above 1e12).
CoefficientBank build_coefficient_bank(const FilterSpec& spec);

} // namespace savgol
