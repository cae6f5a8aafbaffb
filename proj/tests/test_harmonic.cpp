#include "doctest.h"
#include "helpers.hpp"

#include "cns/harmonic.hpp"

using namespace cns;

TEST_SUITE("harmonic_extension") {
    TEST_CASE("zero data extends to zero") {
        Grid g(8, 8, 9, 2 * M_PI, 2 * M_PI, 1.0);
        Spectral sp(g);
        HarmonicExtension e = extend(sp, g.zeros_s());
        CHECK(max_abs(e.values) == 0.0);
    }

    TEST_CASE("single mode matches the cosh profile") {
        Grid g(16, 8, 17, 3.0, 2 * M_PI, 1.3);
        Spectral sp(g);
        const double k = 2 * M_PI / g.l1;
        Surface eta = testutil::sample_s(g, [&](double x1, double) { return std::cos(k * x1); });
        HarmonicExtension e = extend(sp, eta);
        double worst = 0;
        for (int i1 = 0; i1 < g.n1; ++i1)
            for (int i2 = 0; i2 < g.n2; ++i2)
                for (int z = 0; z < g.nz; ++z) {
                    double y = g.y(z);
                    double exact = std::cos(k * g.x1(i1)) * std::cosh(k * (y + g.b)) / std::cosh(k * g.b);
                    worst = std::max(worst, std::abs(e.values[g.idx(i1, i2, z)] - exact));
                }
        CHECK(worst <= 1e-12);
        // top row is the data
        Surface t = top(g, e.values);
        for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i] == eta[i]);
    }

    TEST_CASE("cosh profile derivatives") {
        const double K = 2.5, b = 0.8, y = -0.3, h = 1e-5;
        for (int n = 0; n < 3; ++n) {
            double fd = (cosh_profile(K, y + h, b, n) - cosh_profile(K, y - h, b, n)) / (2 * h);
            CHECK(fd == doctest::Approx(cosh_profile(K, y, b, n + 1)).epsilon(1e-8));
        }
        CHECK(cosh_profile(K, -b, b, 1) == doctest::Approx(0.0));
        CHECK(cosh_profile(K, 0.0, b, 0) == doctest::Approx(1.0));
        // no overflow for large K
        CHECK(std::isfinite(cosh_profile(800.0, -0.5, 1.0, 2)));
    }

    TEST_CASE("stencil residual of the extension is second order") {
        double prev = 0;
        for (int nz : {17, 33}) {
            Grid g(8, 8, nz, 2 * M_PI, 2 * M_PI, 1.0);
            Spectral sp(g);
            Surface eta = testutil::sample_s(g, [](double x1, double x2) { return std::cos(x1) + 0.3 * std::sin(2 * x2); });
            ExtensionResidual r = extension_residual(sp, extend(sp, eta));
            if (prev > 0) CHECK(prev / r.laplacian_max == doctest::Approx(4.0).epsilon(0.125));
            prev = r.laplacian_max;
        }
    }
}
