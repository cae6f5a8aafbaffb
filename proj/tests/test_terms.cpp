#include "doctest.h"
#include "helpers.hpp"

#include "cns/terms.hpp"
#include "cns/verify.hpp"

using namespace cns;

TEST_SUITE("nonlinear_terms") {
    TEST_CASE("zero state gives zero terms") {
        Grid g(8, 8, 9, 2 * M_PI, 2 * M_PI, 1.0);
        Spectral sp(g);
        GeometryCoeffs G = geometry_coeffs(sp, g.zeros_s(), g.zeros_s());
        Field z = g.zeros();
        Vec3 zv = g.zeros_v();
        CHECK(max_abs(eval_F4(sp, z, z, z, zv, G)) == 0.0);
        CHECK(max_abs(eval_F5(sp, z, zv, G)) == 0.0);
        Vec3 F = eval_F123(sp, z, zv, zv, z, G);
        for (int c = 0; c < 3; ++c) CHECK(max_abs(F[c]) == 0.0);
        CHECK(max_abs(eval_G1(sp, zv, g.zeros_s(), G)) == 0.0);
        CHECK(max_abs(eval_G3(sp, zv, g.zeros_s(), G, 1.0)) == 0.0);
        CHECK(max_abs(eval_G4(sp, z, z, g.zeros_s(), G)) == 0.0);
    }

    TEST_CASE("curvature difference is cubic in the amplitude") {
        Grid g(32, 8, 5, 2 * M_PI, 2 * M_PI, 1.0);
        Spectral sp(g);
        auto at = [&](double eps) {
            Surface eta = testutil::sample_s(g, [&](double x1, double) { return eps * std::cos(x1); });
            return max_abs(curvature_difference(sp, eta, 1.0));
        };
        CHECK(at(0.02) / at(0.01) == doctest::Approx(8.0).epsilon(0.01));
    }

    TEST_CASE("flat case agrees with the oracle") {
        Grid g(16, 16, 17, 2 * M_PI, 2 * M_PI, 1.0);
        Spectral sp(g);
        ResidualReport r = chain_rule_oracle(sp, flat_case(g), 0.0);
        REQUIRE(r.terms.size() == 9);
        for (const auto& [name, v] : r.terms) {
            INFO(name);
            CHECK(v <= 1e-10);
        }
    }

    TEST_CASE("axis swap maps the first components onto the second") {
        Grid g(16, 16, 17, 2 * M_PI, 2 * M_PI, 1.0);
        Spectral sp(g);
        ResidualReport a = chain_rule_oracle(sp, smooth_case(g, 0.05, false), 0.3);
        ResidualReport b = chain_rule_oracle(sp, smooth_case(g, 0.05, true), 0.3);
        CHECK(std::abs(a.get("F1") - b.get("F2")) <= 1e-10);
        CHECK(std::abs(a.get("F2") - b.get("F1")) <= 1e-10);
        CHECK(std::abs(a.get("G1") - b.get("G2")) <= 1e-10);
        CHECK(std::abs(a.get("G2") - b.get("G1")) <= 1e-10);
    }
}
