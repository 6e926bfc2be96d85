#include "doctest.h"
#include "savgol/diagnostics.hpp"
#include "savgol/filter.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace savgol;
namespace frozen = testsupport::frozen;
using frozen::tol;

namespace {

std::vector<double> snapshot_residuals() {
    const auto& y = testsupport::keeling().values;
    const auto f = apply_filter(FilterSpec(5, 9), y);
    std::vector<double> r(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] - f.smoothed[i];
    return r;
}

} // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("two-half variance test on the snapshot residuals") {
    const auto vt = variance_ratio_test(snapshot_residuals());
    CHECK(vt.first_count == 33);
    CHECK(vt.second_count == 34);
    CHECK(std::abs(vt.first_variance - frozen::f_var_first) < tol);
    CHECK(std::abs(vt.second_variance - frozen::f_var_second) < tol);
    CHECK(std::abs(vt.ratio - frozen::f_ratio) < tol);
    CHECK(std::abs(vt.p_value - frozen::f_p) < tol);
    CHECK(vt.pass_95);
}

TEST_CASE("variance test rejects degenerate input") {
    CHECK_THROWS_AS(variance_ratio_test(std::vector<double>(7, 1.0)), ValidationError);
    std::vector<double> flat_first = {2.0, 2.0, 2.0, 2.0, 1.0, 2.0, 1.5, 0.5};
    CHECK_THROWS_AS(variance_ratio_test(flat_first), ValidationError);
}

TEST_CASE("reversing an even-length sample inverts the ratio, not the verdict") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> r(20);
    for (auto& v : r) v = normal(rng);
    const auto fwd = variance_ratio_test(r);
    std::reverse(r.begin(), r.end());
    const auto rev = variance_ratio_test(r);
    CHECK(std::abs(fwd.ratio * rev.ratio - 1.0) < 1e-12);
    CHECK(std::abs(fwd.p_value - rev.p_value) < 1e-12);
    CHECK(fwd.pass_95 == rev.pass_95);
}

TEST_CASE("clearly unequal halves fail the test") {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> r(60);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double scale = (i < 30) ? 1.0 : 6.0;
        r[i] = scale * normal(rng);
    }
    const auto vt = variance_ratio_test(r);
    CHECK(vt.p_value < 0.05);
    CHECK_FALSE(vt.pass_95);
}

TEST_CASE("probability plot positions for three residuals") {
    const NoiseEstimate sd{1.0, NoiseMethod::ResidualVariance, Bias::Unbiased, FilterSpec(5, 9)};
    const std::vector<double> r = {1.0, -1.0, 0.0}; // unsorted on purpose
    const auto pp = normal_plot_data(r, sd);
    REQUIRE(pp.quantiles.size() == 3);
    CHECK(std::abs(pp.quantiles[0] - frozen::ppf_sixth) < 1e-9);
    CHECK(std::abs(pp.quantiles[1]) < 1e-12);
    CHECK(std::abs(pp.quantiles[2] + frozen::ppf_sixth) < 1e-9);
    CHECK(pp.sorted_residuals == std::vector<double>{-1.0, 0.0, 1.0});
}

TEST_CASE("residuals are normalized by the supplied SD") {
    const NoiseEstimate sd{2.0, NoiseMethod::ResidualVariance, Bias::Unbiased, FilterSpec(5, 9)};
    const std::vector<double> r = {4.0, -2.0, 1.0};
    const auto pp = normal_plot_data(r, sd);
    CHECK(pp.sorted_residuals == std::vector<double>{-1.0, 0.5, 2.0});
}

TEST_CASE("probability plot of the snapshot residuals stays near the line") {
    const auto r = snapshot_residuals();
    const NoiseEstimate sd{frozen::sd_unbiased, NoiseMethod::ResidualVariance, Bias::Unbiased,
                           FilterSpec(5, 9)};
    const auto pp = normal_plot_data(r, sd);
    REQUIRE(pp.quantiles.size() == r.size());
    CHECK(std::abs(pp.quantiles.front() - frozen::qq_first_quantile) < 1e-8);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        worst = std::max(worst, std::abs(pp.sorted_residuals[i] - pp.quantiles[i]));
    CHECK(std::abs(worst - frozen::qq_max_dev) < 1e-7);
}

TEST_CASE("probability plot rejects bad input") {
    const NoiseEstimate good{1.0, NoiseMethod::ResidualVariance, Bias::Unbiased, FilterSpec(5, 9)};
    CHECK_THROWS_AS(normal_plot_data(std::vector<double>{1.0, 2.0}, good), ValidationError);
    const NoiseEstimate zero{0.0, NoiseMethod::ResidualVariance, Bias::Unbiased, FilterSpec(5, 9)};
    CHECK_THROWS_AS(normal_plot_data(std::vector<double>{1.0, 2.0, 3.0}, zero), ValidationError);
}

TEST_CASE("global polynomial sweep on the snapshot") {
    const auto& y = testsupport::keeling().values;
    const auto sweep = polynomial_noise_oracle(y, 2, 20);
    REQUIRE(sweep.points.size() == 19);
    CHECK(sweep.points.front().degree == 2);
    CHECK(sweep.points.back().degree == 20);
    auto sd_at = [&](int degree) {
        for (const auto& p : sweep.points)
            if (p.degree == degree) return p.unbiased_sd;
        FAIL("missing degree");
        return 0.0;
    };
    CHECK(std::abs(sd_at(2) - frozen::poly_d2) < tol);
    CHECK(std::abs(sd_at(13) - frozen::poly_d13) < tol);
    CHECK(std::abs(sd_at(20) - frozen::poly_d20) < tol);
    CHECK(sweep.best_degree == frozen::poly_best_degree);
    CHECK(std::abs(sweep.min_sd - frozen::poly_d13) < tol);
}

TEST_CASE("a polynomial signal yields a near-zero residual at its degree") {
    std::vector<double> y(80);
    for (std::size_t t = 0; t < y.size(); ++t) {
        const double u = (static_cast<double>(t) - 40.0) / 20.0;
        y[t] = 3.0 + u * (0.5 + u * (-2.0 + u * 1.25));
    }
    const auto sweep = polynomial_noise_oracle(y, 2, 6);
    auto sd_at = [&](int degree) {
        for (const auto& p : sweep.points)
            if (p.degree == degree) return p.unbiased_sd;
        return -1.0;
    };
    CHECK(sd_at(2) > 1e-3);      // cubic structure left behind
    CHECK(sd_at(3) < 1e-10);     // exact from here on
    CHECK(sd_at(6) < 1e-10);
}

TEST_CASE("single global fit matches the filter when the window spans everything") {
    // with q = 2m+1 and uniform weights both paths compute the same
    // least-squares polynomial
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int n : {3, 5}) {
        const int m = 8;
        const std::size_t q = 2 * m + 1;
        std::vector<double> y(q);
        for (auto& v : y) v = uni(rng);
        const auto filt = apply_filter(FilterSpec(n, m, Weighting::Uniform), y);
        const auto fit = polynomial_fit_values(y, n - 1);
        for (std::size_t t = 0; t < q; ++t)
            CHECK(std::abs(filt.smoothed[t] - fit[t]) < 1e-8);
    }
}

TEST_CASE("polynomial helpers validate their arguments") {
    const std::vector<double> y(10, 1.0);
    CHECK_THROWS_AS(polynomial_fit_values(y, -1), ValidationError);
    CHECK_THROWS_AS(polynomial_fit_values(y, 9), ValidationError);
    CHECK_THROWS_AS(polynomial_noise_oracle(y, 5, 2), ValidationError);
    CHECK_THROWS_AS(polynomial_noise_oracle(y, 2, 9), ValidationError);
}

} // TEST_SUITE
