#include "doctest.h"
#include "savgol/filter_spec.hpp"

#include <string>

using namespace savgol;

TEST_SUITE("filter_spec") {

TEST_CASE("valid specs expose window, degree and degrees of freedom") {
    const FilterSpec spec(5, 9);
    CHECK(spec.params == 5);
    CHECK(spec.half_window == 9);
    CHECK(spec.weighting == Weighting::OptimalQuadratic);
    CHECK(spec.window_size() == 19);
    CHECK(spec.degree() == 4);
    CHECK(spec.degrees_of_freedom() == 14);
    CHECK_FALSE(spec.even_params_advisory());

    CHECK(FilterSpec(2, 1).window_size() == 3);
    CHECK(FilterSpec(1, 1).degree() == 0);
}

TEST_CASE("construction rejects invalid parameter combinations") {
    CHECK_THROWS_AS(FilterSpec(0, 5), SpecError);
    CHECK_THROWS_AS(FilterSpec(-3, 5), SpecError);
    CHECK_THROWS_AS(FilterSpec(5, 0), SpecError);
    CHECK_THROWS_AS(FilterSpec(5, -1), SpecError);
    // window must strictly exceed the parameter count
    CHECK_THROWS_AS(FilterSpec(3, 1), SpecError);  // 2m+1 = 3 = n, zero dof
    CHECK_THROWS_AS(FilterSpec(5, 2), SpecError);
    CHECK_THROWS_AS(FilterSpec(7, 2), SpecError);
    CHECK_NOTHROW(FilterSpec(3, 2));
    CHECK_NOTHROW(FilterSpec(5, 3));
}

TEST_CASE("error messages name the violated inequality") {
    try {
        FilterSpec(3, 1);
        FAIL("expected SpecError");
    } catch (const SpecError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("2m+1 > n") != std::string::npos);
        CHECK(msg.find("3") != std::string::npos);
    }
    try {
        FilterSpec(4, 0);
        FAIL("expected SpecError");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()).find("m >= 1") != std::string::npos);
    }
}

TEST_CASE("even parameter counts carry an advisory, not an error") {
    CHECK(FilterSpec(4, 3).even_params_advisory());
    CHECK(FilterSpec(2, 1).even_params_advisory());
    CHECK_FALSE(FilterSpec(3, 2).even_params_advisory());
    CHECK_FALSE(FilterSpec(7, 13).even_params_advisory());
}

TEST_CASE("equality and weighting names") {
    CHECK(FilterSpec(5, 9) == FilterSpec(5, 9));
    CHECK(FilterSpec(5, 9) == FilterSpec(5, 9, Weighting::OptimalQuadratic));
    CHECK_FALSE(FilterSpec(5, 9) == FilterSpec(5, 9, Weighting::Uniform));
    CHECK_FALSE(FilterSpec(5, 9) == FilterSpec(5, 10));
    CHECK(std::string(to_string(Weighting::OptimalQuadratic)) == "optimal-quadratic");
    CHECK(std::string(to_string(Weighting::Uniform)) == "uniform");
}

} // TEST_SUITE
