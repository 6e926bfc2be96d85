#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Shared fixtures for the test binaries: the vendored CO2 snapshot and
// reference values frozen from an independent implementation (numpy/scipy)
// run on that snapshot. Tolerances reflect the 10 printed decimals.

namespace testsupport {

struct Snapshot {
    std::vector<int> years;
    std::vector<double> values;
};

inline const Snapshot& keeling() {
    static const Snapshot snap = [] {
        Snapshot s;
        std::ifstream in(std::string(SAVGOL_DATA_DIR) + "/co2_annmean_mlo.csv");
        if (!in) throw std::runtime_error("vendored CO2 snapshot missing");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream row(line);
            std::string cell;
            std::getline(row, cell, ',');
            s.years.push_back(std::stoi(cell));
            std::getline(row, cell, ',');
            s.values.push_back(std::stod(cell));
        }
        return s;
    }();
    return snap;
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Values computed with an independent reference implementation on the
// vendored snapshot; regression anchors, not derived from this library.
namespace frozen {

constexpr double tol = 1e-8;

constexpr int q = 67;

// spec (n=5, m=9) on the snapshot
constexpr double sd_a = 0.3025570048;
constexpr double sd_b = 0.2947931714;
constexpr double sd_unbiased = 0.3524682440;
constexpr double yf_first = 315.2148102767;
constexpr double yf_mid = 355.4118883834;   // index 33
constexpr double yf_last = 423.7896267943;
constexpr double dyf_first = 1.0300363409;
constexpr double dyf_mid = 1.3141153628;
constexpr double dyf_last = 2.3717752973;

// sweep rows for n=5 (biased SDs)
constexpr double sweep5_m5_a = 0.2413655191, sweep5_m5_b = 0.2714801311;
constexpr double sweep5_m13_a = 0.3689130445, sweep5_m13_b = 0.3088575957;
constexpr double sweep5_m25_a = 0.5227859048, sweep5_m25_b = 0.3203096154;

// plateau floors and selections, max half-window 25
constexpr double floor_n3 = 0.3031724342;
constexpr double floor_n5 = 0.3061467959;
constexpr double floor_n7 = 0.3016420249;
constexpr int select_n3 = 6, select_n5 = 9, select_n7 = 13;
constexpr int run_first_n5 = 10, run_last_n5 = 25; // stable run of the n=5 sweep

// coefficient row 2-norms for (5, 9)
constexpr double smooth_norm_center = 0.4403464171;
constexpr double deriv_norm_center = 0.1121775460;
constexpr double deriv_norm_first = 0.7887268357;
constexpr double deriv_edge_ratio = 7.0310580331;

// two-half variance test on the (5, 9) residuals
constexpr double f_ratio = 0.6323135960;
constexpr double f_p = 0.1979105494;
constexpr double f_var_first = 0.0728114791;
constexpr double f_var_second = 0.1151508991;

// normal probability plot of the (5, 9) residuals, normalized by the
// unbiased SD
constexpr double qq_max_dev = 0.6197345201;
constexpr double qq_first_quantile = -2.4341847913;

// global polynomial sweep, degrees 2..20
constexpr double poly_d2 = 0.7425068837;
constexpr double poly_d13 = 0.3586812237;
constexpr double poly_d20 = 0.3706037506;
constexpr int poly_best_degree = 13;

// log-excess analysis, baseline 280, spec (5, 9)
constexpr double zf_first = 3.5627798028;
constexpr double dzf_first = 0.0269671508;
constexpr double mean_frac_rate = 0.0212681256;
constexpr double doubling_years = 32.5908918294;
constexpr double z_sd_a = 0.0043000809;
constexpr double z_sd_unbiased = 0.0050094426;
constexpr double log2_excess_last = 7.1674909900;

// scipy spot values for the special functions
constexpr double ppf_975 = 1.95996398454005;
constexpr double ppf_sixth = -0.967421566101701;   // p = 1/6
constexpr double ppf_1e5 = -4.26489079392282;      // p = 1e-5
constexpr double ppf_1e4 = -3.71901648545568;      // p = 1e-4
constexpr double ppf_03 = -0.524400512708041;      // p = 0.3
constexpr double cdf_1 = 0.841344746068543;
constexpr double cdf_25 = 0.993790334674224;
constexpr double cdf_m37 = 1.07799733477388e-4;
constexpr double one_sigma_z = 1.0000217133229992; // level 0.6827

struct BetaRef { double a, b, x, value; };
constexpr BetaRef beta_refs[] = {
    {0.5, 0.5, 0.3, 0.369010119565545},
    {2.0, 3.0, 0.4, 0.5248},
    {16.5, 17.0, 0.5, 0.534852197623737},
    {17.0, 16.5, 0.387, 0.0802683123786883},
    {5.0, 5.0, 0.5, 0.5},
    {30.0, 40.0, 0.35, 0.0898209460897998},
    {1.0, 1.0, 0.7, 0.7},
    {0.5, 8.0, 0.01, 0.307007850294188},
};

struct FRef { double x, d1, d2, value; };
constexpr FRef f_refs[] = {
    {0.6323135959719201, 32, 33, 0.0989552747263094},
    {1.0, 32, 33, 0.500721005115956},
    {2.0, 10, 8, 0.831013073998565},
    {0.5, 8, 10, 0.168986926001435},
    {3.2, 5, 2, 0.744935539027803},
    {0.1, 1, 1, 0.194982229042137},
};

} // namespace frozen
} // namespace testsupport
