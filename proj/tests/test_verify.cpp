#include "doctest.h"
#include "helpers.hpp"

#include "cns/verify.hpp"

using namespace cns;

TEST_SUITE("verify_harness") {
    TEST_CASE("fitted order of an exact power law") {
        std::vector<double> h{0.1, 0.05, 0.025}, e;
        for (double x : h) e.push_back(3.0 * x * x);
        CHECK(fitted_order(h, e) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK_THROWS_AS(fitted_order({0.1}, {1.0}), Error);
    }

    TEST_CASE("studies reject bad requests") {
        CHECK_THROWS_AS(mms_spatial("parabolic", {9, 17}), Error);
        CHECK_THROWS_AS(mms_spatial("heat", {9, 17, 33}), Error);
        CHECK_THROWS_AS(mms_temporal("stationary", {1e-2, 5e-3, 2.5e-3}), Error);
    }

    TEST_CASE("stationary Stokes spatial order") {
        ConvergenceTable t = mms_spatial("stationary", {17, 33, 65});
        CHECK(t.order >= 1.9);
    }

    TEST_CASE("parabolic temporal order") {
        ConvergenceTable t = mms_temporal("parabolic", {4e-3, 2e-3, 1e-3});
        CHECK(t.order >= 0.9);
    }

    TEST_CASE("compatible data scale with the amplitude where the constraints are linear") {
        Grid g(8, 8, 9, 2 * M_PI, 2 * M_PI, 1.0);
        Spectral sp(g);
        InitialData a = make_compatible_data(sp, 9, 0.02), b = make_compatible_data(sp, 9, 0.04);
        for (std::size_t i = 0; i < a.h0.size(); ++i) CHECK(b.h0[i] == doctest::Approx(2 * a.h0[i]).scale(1).epsilon(1e-14));
        for (std::size_t i = 0; i < a.eta0.size(); ++i) CHECK(b.eta0[i] == doctest::Approx(2 * a.eta0[i]).scale(1).epsilon(1e-14));
    }
}
