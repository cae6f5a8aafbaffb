#include <cmath>
#include <random>

#include "cns/error.hpp"
#include "cns/solvers.hpp"
#include "cns/terms.hpp"
#include "cns/verify.hpp"

namespace cns {

namespace {

// normalized sum of low modes with 1/(1+|k|^2) decay
Surface band_limited(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Surface s(g.ncol(), 0.0);
    for (int k1 = 0; k1 <= 2; ++k1)
        for (int k2 = -2; k2 <= 2; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;
            double amp = U(rng) / (1 + k1 * k1 + k2 * k2), ph = M_PI * U(rng);
            for (int i = 0; i < g.n1; ++i)
                for (int j = 0; j < g.n2; ++j)
                    s[i * g.n2 + j] += amp * std::cos(2 * M_PI * (k1 * g.x1(i) / g.l1 + k2 * g.x2(j) / g.l2) + ph);
        }
    double m = max_abs(s);
    if (m > 0)
        for (double& x : s) x /= m;
    return s;
}

Field profile(const Grid& g, const Surface& s, const std::vector<double>& p) {
    Field f(g.size());
    for (std::size_t c = 0; c < g.ncol(); ++c)
        for (int k = 0; k < g.nz; ++k) f[c * g.nz + k] = s[c] * p[k];
    return f;
}

}  // namespace

InitialData make_compatible_data(const Spectral& sp, std::uint64_t seed, double amplitude) {
    if (!(amplitude >= 0)) throw Error(ErrorKind::Config, "amplitude must be nonnegative");
    const Grid& g = sp.grid();
    const int nz = g.nz;
    const double b = g.b;
    std::mt19937_64 rng(seed);
    Surface Rh = band_limited(g, rng), Rw = band_limited(g, rng), R1 = band_limited(g, rng),
            R2 = band_limited(g, rng), E = band_limited(g, rng);
    const double A = amplitude;
    for (std::size_t i = 0; i < Rw.size(); ++i) {
        Rw[i] = A * (1 + 0.5 * Rw[i]);
        Rh[i] *= A;
        R1[i] *= A;
        R2[i] *= A;
        E[i] *= 0.2 * A;
    }
    InitialData d;
    d.eta0 = E;

    std::vector<double> ph(nz), pw(nz), pc(nz), pp(nz), r(nz, 0.0);
    for (int k = 0; k < nz; ++k) {
        double y = g.y(k);
        ph[k] = y * (y + 2 * b) / (b * b);
        pw[k] = (b * b - y * y) / (b * b);
        pc[k] = y * (y + b) / b;
        pp[k] = (y + b) * (y + b);
        if (k >= 2) r[k] = (y + b) * (y + b) * y / b;
    }
    // discrete clamp at the bottom: r0 = 0 and the one-sided derivative vanishes
    r[1] = r[2] / 4;
    r[nz - 1] = 0;
    d.h0 = profile(g, Rh, ph);

    // velocity as a discrete curl of A_i = R_i p + S_i r
    const double h = g.dz();
    auto dd_top = [&](const std::vector<double>& p) {
        auto D1 = [&](int j) {
            Stencil s = d1_stencil(nz, j, h);
            double r = 0;
            for (int i = 0; i < s.n; ++i) r += s.c[i] * p[s.node[i]];
            return r;
        };
        Stencil s = d1_stencil(nz, nz - 1, h);
        double r = 0;
        for (int i = 0; i < s.n; ++i) r += s.c[i] * D1(s.node[i]);
        return r;
    };
    const double kp = dd_top(pp), kr = dd_top(r);
    auto build_v = [&](const Surface& S1, const Surface& S2) {
        Field A1 = profile(g, R1, pp), A2 = profile(g, R2, pp);
        Field B1 = profile(g, S1, r), B2 = profile(g, S2, r);
        for (std::size_t i = 0; i < A1.size(); ++i) {
            A1[i] += B1[i];
            A2[i] += B2[i];
        }
        Vec3 v;
        v[0] = d_vertical(g, A2, 1);
        for (double& x : v[0]) x = -x;
        v[1] = d_vertical(g, A1, 1);
        v[2] = sp.dh(A2, 1, 0);
        Field t = sp.dh(A1, 0, 1);
        for (std::size_t i = 0; i < t.size(); ++i) v[2][i] -= t[i];
        return v;
    };
    Surface R2_11 = sp.dh_s(R2, 2, 0), R1_12 = sp.dh_s(R1, 1, 1), R2_12 = sp.dh_s(R2, 1, 1),
            R1_22 = sp.dh_s(R1, 0, 2);
    Surface S1 = g.zeros_s(), S2 = g.zeros_s();
    const double b2 = b * b;
    for (int it = 0;; ++it) {
        d.v0 = build_v(S1, S2);
        GeometryCoeffs G = geometry_coeffs(sp, d.eta0, top(g, d.v0[2]));
        Surface G1 = eval_G1(sp, d.v0, d.eta0, G), G2 = eval_G2(sp, d.v0, d.eta0, G);
        double change = 0, scale = 1e-300;
        for (std::size_t i = 0; i < S1.size(); ++i) {
            double n2 = (-G1[i] - R2[i] * kp + b2 * (R2_11[i] - R1_12[i])) / kr;
            double n1 = (G2[i] - R1[i] * kp - b2 * (R2_12[i] - R1_22[i])) / kr;
            change = std::max({change, std::abs(n1 - S1[i]), std::abs(n2 - S2[i])});
            scale = std::max({scale, std::abs(n1), std::abs(n2)});
            S1[i] = n1;
            S2[i] = n2;
        }
        // round-off floor is a few ulp of the blend scale
        if (change <= 1e-13 * scale || A == 0) {
            d.v0 = build_v(S1, S2);
            break;
        }
        if (it >= 100) throw Error(ErrorKind::Compatibility, "make_compatible_data: tangential blend did not settle");
    }

    // density: w0 = 0 on S_B, flux law on Gamma solved for the y(y+b) coefficient
    d.w0 = profile(g, Rw, pw);
    GeometryCoeffs G = geometry_coeffs(sp, d.eta0, top(g, d.v0[2]));
    Surface G4 = eval_G4(sp, d.w0, d.h0, d.eta0, G);
    Surface h3 = flux_derivative(g, d.h0, true), wt = top(g, d.w0);
    Surface c(g.ncol());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = G4[i] - wt[i] * h3[i];
    Field wc = profile(g, c, pc);
    for (std::size_t i = 0; i < wc.size(); ++i) d.w0[i] += wc[i];
    return d;
}

}  // namespace cns
