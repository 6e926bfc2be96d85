#include "savgol/coefficients.hpp"

namespace savgol {

std::vector<double> build_weights(const FilterSpec& spec) {
    const int size = spec.window_size();
    std::vector<double> w(static_cast<std::size_t>(size), 1.0);
    if (spec.weighting == Weighting::Uniform) return w;

    const double m = spec.half_window;
    for (int i = 1; i <= size; ++i) {
        w[i - 1] = (3.0 * i / (2.0 * m + 3.0)) * (2.0 - i / (m + 1.0));
    }
    return w;
}

DesignMatrices build_design_matrices(const FilterSpec& spec) {
    const int size = spec.window_size();
    const int n = spec.params;
    const double m = spec.half_window;

    DesignMatrices d;
    d.abscissa.resize(size);
    for (int i = 0; i < size; ++i) d.abscissa[i] = (i - m) / m;

    d.vandermonde = Matrix(size, n);
    for (int i = 0; i < size; ++i) {
        double p = 1.0;
        for (int j = 0; j < n; ++j) {
            d.vandermonde(i, j) = p;
            p *= d.abscissa[i];
        }
    }

    d.weight = build_weights(spec);

    // Differentiation in the monomial basis, rescaled so the derivative is
    // per sample step rather than per unit of the [-1, 1] abscissa.
    d.derivative_map = Matrix(n, n);
    for (int k = 1; k < n; ++k) d.derivative_map(k - 1, k) = k / m;
    return d;
}

CoefficientBank build_coefficient_bank(const FilterSpec& spec) {
    const DesignMatrices d = build_design_matrices(spec);
    const int size = spec.window_size();
    const int n = spec.params;

    Matrix xtw(n, size);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < size; ++i) xtw(j, i) = d.vandermonde(i, j) * d.weight[i];
    }

    Matrix xtwx(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            double s = 0.0;
            for (int i = 0; i < size; ++i) s += xtw(a, i) * d.vandermonde(i, b);
            xtwx(a, b) = s;
        }
    }

    // projector = (X^T W X)^{-1} X^T W, solved column-wise
    const Matrix projector = CholeskyFactor(xtwx).solve(xtw);
    Matrix smooth = d.vandermonde * projector;
    Matrix deriv = d.vandermonde * (d.derivative_map * projector);
    return {spec, std::move(smooth), std::move(deriv)};
}

} // namespace savgol
