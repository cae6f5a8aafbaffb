#include "doctest.h"
#include "helpers.hpp"

#include "cns/energy.hpp"
#include "cns/harmonic.hpp"
#include "cns/solvers.hpp"
#include "cns/terms.hpp"

using namespace cns;

namespace {

Grid small() { return Grid(8, 8, 17, 2 * M_PI, 2 * M_PI, 1.0); }

Vec3 scaled(const Vec3& v, double s) {
    Vec3 r = v;
    for (int c = 0; c < 3; ++c)
        for (double& x : r[c]) x *= s;
    return r;
}

}  // namespace

TEST_SUITE("linear_solvers") {
    TEST_CASE("parabolic pair keeps zero data at zero") {
        Grid g = small();
        Spectral sp(g);
        ParabolicStepper st(sp, 1e-2);
        auto r = st.step(g.zeros(), g.zeros(), g.zeros(), g.zeros(), g.zeros(), g.zeros_s());
        CHECK(max_abs(r.w) == 0.0);
        CHECK(max_abs(r.h) == 0.0);
    }

    TEST_CASE("heat semigroup: L2 decay and the maximum principle") {
        Grid g = small();
        Spectral sp(g);
        ParabolicStepper st(sp, 1e-2);
        Field w = testutil::sample(g, [&](double x1, double x2, double y) {
            return (1.2 + std::cos(x1) * std::sin(x2)) * (y + 1) * (1 - y);
        });
        Field h = testutil::sample(g, [](double x1, double, double y) { return std::sin(x1) * y * (y + 2); });
        double prev = l2_norm(g, w), wmin = 0;
        for (int n = 0; n < 30; ++n) {
            auto r = st.step(w, h, g.zeros(), g.zeros(), g.zeros(), g.zeros_s());
            w = r.w;
            h = r.h;
            double now = l2_norm(g, w);
            CHECK(now <= prev);
            prev = now;
            wmin = std::min(wmin, *std::min_element(w.begin(), w.end()));
        }
        CHECK(wmin >= -1e-12);
    }

    TEST_CASE("compatible parabolic data report a zero residual") {
        Grid g = small();
        Spectral sp(g);
        Field h0 = testutil::sample(g, [](double x1, double, double y) { return std::cos(x1) * y * (y + 2); });
        Field w0 = testutil::sample(g, [](double, double x2, double y) { return std::sin(x2) * (y + 1); });
        Field a(g.size(), 0.1);
        // d3 w0 + a d3 h0 on Gamma
        Surface g4 = testutil::sample_s(g, [](double x1, double x2) { return std::sin(x2) + 0.1 * 2 * std::cos(x1); });
        CHECK(parabolic_compatibility(sp, w0, h0, a, g4) <= 1e-12);
    }

    TEST_CASE("Stokes: zero stays zero") {
        Grid g = small();
        Spectral sp(g);
        StokesStepper st(sp, 1e-2, 1.0, 1.0);
        StokesState s{g.zeros_v(), g.zeros(), g.zeros_s()};
        Surface z = g.zeros_s();
        s = st.step(s, g.zeros_v(), z, z, z);
        for (int c = 0; c < 3; ++c) CHECK(max_abs(s.v[c]) == 0.0);
        CHECK(max_abs(s.eta) == 0.0);
    }

    TEST_CASE("Stokes relaxation dissipates energy and stays divergence-free") {
        Grid g(16, 16, 17, 2 * M_PI, 2 * M_PI, 1.0);
        Spectral sp(g);
        StokesStepper st(sp, 1e-2, 1.0, 1.0);
        StokesState s{g.zeros_v(), g.zeros(), testutil::sample_s(g, [](double x1, double) { return 0.05 * std::cos(x1); })};
        Surface z = g.zeros_s();
        double E = stokes_energy(sp, s.v, s.eta, 1, 1);
        for (int n = 0; n < 40; ++n) {
            s = st.step(s, g.zeros_v(), z, z, z);
            double En = stokes_energy(sp, s.v, s.eta, 1, 1);
            CHECK(En <= E + 1e-12);
            E = En;
            CHECK(max_abs(stokes_divergence(sp, s.v)) <= 1e-9);
            CHECK(max_abs(bottom(g, s.v[2])) <= 1e-15);
        }
    }

    TEST_CASE("stationary Stokes: zero data") {
        Grid g = small();
        Spectral sp(g);
        Surface z = g.zeros_s();
        StationaryStokes s = solve_stationary_stokes(sp, g.zeros_v(), z, z, z);
        for (int c = 0; c < 3; ++c) CHECK(max_abs(s.omega[c]) == 0.0);
        CHECK(max_abs(s.q) == 0.0);
    }

    TEST_CASE("stationary Stokes solution is linear in the data") {
        Grid g = small();
        Spectral sp(g);
        Vec3 F{{testutil::random_field(g, 4), testutil::random_field(g, 5), testutil::random_field(g, 6)}};
        Surface g1 = testutil::sample_s(g, [](double x1, double) { return std::sin(x1); });
        Surface z = g.zeros_s();
        StationaryStokes a = solve_stationary_stokes(sp, F, g1, z, z);
        Surface g1b = g1;
        for (double& x : g1b) x *= 2;
        StationaryStokes b = solve_stationary_stokes(sp, scaled(F, 2.0), g1b, z, z);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < g.size(); ++i)
                CHECK(b.omega[c][i] == doctest::Approx(2 * a.omega[c][i]).scale(1).epsilon(1e-12));
        CHECK(max_abs(stokes_divergence(sp, a.omega)) <= 1e-9);
    }

    TEST_CASE("Leray projection: fixed points, annihilated gradients, idempotence") {
        Grid g(16, 16, 17, 2 * M_PI, 2 * M_PI, 1.0);
        Spectral sp(g);
        // gradient of rho0 with rho0 = 0 on Gamma
        Field rho = testutil::sample(g, [](double x1, double x2, double y) { return std::cos(x1 + x2) * y * (y + 0.5); });
        Vec3 gr = grad(sp, rho);
        Vec3 p = leray_projection(sp, gr);
        for (int c = 0; c < 3; ++c) CHECK(max_abs(p[c]) <= 1e-10);

        Vec3 u{{testutil::random_field(g, 7), testutil::random_field(g, 8), testutil::random_field(g, 9)}};
        Vec3 pu = leray_projection(sp, u);
        Vec3 ppu = leray_projection(sp, pu);
        double diff = 0, base = 0;
        for (int c = 0; c < 3; ++c) {
            Field d(g.size());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = ppu[c][i] - pu[c][i];
            diff += std::pow(l2_norm(g, d), 2);
            base += std::pow(l2_norm(g, u[c]), 2);
        }
        CHECK(std::sqrt(diff) <= 1e-9 * std::sqrt(base));
        CHECK(max_abs(bottom(g, pu[2])) <= 1e-12);
        // already projected fields are fixed
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < g.size(); ++i) CHECK(ppu[c][i] == doctest::Approx(pu[c][i]).scale(1).epsilon(1e-10));
    }

    TEST_CASE("Korn form of a shear") {
        Grid g(8, 6, 9, 2 * M_PI, 3.0, 1.5);
        Spectral sp(g);
        Vec3 v = g.zeros_v();
        CHECK(korn_form(sp, v, v) == 0.0);
        v[0] = testutil::sample(g, [&](double, double, double y) { return y + g.b; });
        CHECK(korn_form(sp, v, v) == doctest::Approx(g.l1 * g.l2 * g.b).epsilon(1e-8));
    }
}
