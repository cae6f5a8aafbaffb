#include "doctest.h"
#include "helpers.hpp"

#include "cns/terms.hpp"
#include "cns/transform.hpp"
#include "cns/verify.hpp"

using namespace cns;

TEST_SUITE("domain_transform") {
    TEST_CASE("flat surface gives the identity map") {
        Grid g(8, 8, 9, 2 * M_PI, 2 * M_PI, 1.0);
        Spectral sp(g);
        GeometryCoeffs G = geometry_coeffs(sp, g.zeros_s(), g.zeros_s());
        JacobianBounds jb = jacobian_bounds(G);
        CHECK(jb.jmin == 1.0);
        CHECK(jb.jmax == 1.0);
        CHECK(max_abs(G.alpha) == 0.0);
        Callback f = [](double x1, double x2, double z, double) { return std::sin(x1) * std::cos(x2) * z; };
        Field c = compose_with_theta(sp, f, g.zeros_s(), 0.0);
        Field s = testutil::sample(g, [](double x1, double x2, double y) { return std::sin(x1) * std::cos(x2) * y; });
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(s[i]).scale(1));
    }

    TEST_CASE("velocity maps are inverse to each other") {
        Grid g(8, 8, 9, 2 * M_PI, 2 * M_PI, 1.0);
        Spectral sp(g);
        Surface eta = testutil::sample_s(g, [](double x1, double x2) { return 0.05 * std::cos(x1 + x2); });
        GeometryCoeffs G = geometry_coeffs(sp, eta, g.zeros_s());
        Vec3 v{{testutil::random_field(g, 1), testutil::random_field(g, 2), testutil::random_field(g, 3)}};
        Vec3 back = velocity_to_flat(velocity_from_flat(v, G), G);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < v[c].size(); ++i) CHECK(back[c][i] == doctest::Approx(v[c][i]).epsilon(1e-12));
    }

    TEST_CASE("log transform round trip") {
        Field c{0.5, 1.0, 2.0, 7.25};
        Field h = log_transform(c, 2.0);
        CHECK(h[2] == doctest::Approx(0.0));
        Field back = inverse_log_transform(h, 2.0);
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(back[i] == doctest::Approx(c[i]).epsilon(1e-15));
    }

    TEST_CASE("divergence-free fields stay divergence-free to second order") {
        // u = (cos x1 e^z, 0, sin x1 e^z) is divergence-free on any domain
        Callback u1 = [](double x1, double, double z, double) { return std::cos(x1) * std::exp(z); };
        Callback u3 = [](double x1, double, double z, double) { return std::sin(x1) * std::exp(z); };
        Callback zero = [](double, double, double, double) { return 0.0; };
        double prev = 0;
        for (int nz : {17, 33}) {
            Grid g(16, 16, nz, 2 * M_PI, 2 * M_PI, 1.0);
            Spectral sp(g);
            Surface eta = testutil::sample_s(g, [](double x1, double x2) { return 0.05 * std::cos(x1) + 0.02 * std::sin(x2); });
            GeometryCoeffs G = geometry_coeffs(sp, eta, g.zeros_s());
            Vec3 u{{compose_with_theta(sp, u1, eta, 0), compose_with_theta(sp, zero, eta, 0),
                    compose_with_theta(sp, u3, eta, 0)}};
            double div = max_abs(divergence(sp, velocity_to_flat(u, G)));
            if (prev > 0) CHECK(prev / div == doctest::Approx(4.0).epsilon(0.15));
            prev = div;
        }
    }

    TEST_CASE("projecting the gradient of any extension gives the gradient of the harmonic extension") {
        std::vector<double> h, e;
        for (int nz : {17, 33, 65}) {
            h.push_back(1.0 / (nz - 1));
            e.push_back(testutil::projection_identity_error(16, nz));
        }
        CHECK(e.back() < e.front());
        CHECK(cns::fitted_order(h, e) >= 1.9);
    }
}
