#include <array>
#include <cmath>

#include "cns/error.hpp"
#include "cns/harmonic.hpp"
#include "cns/parallel.hpp"
#include "cns/terms.hpp"
#include "cns/verify.hpp"

namespace cns {

namespace {

// central differences, eighth order
constexpr double kD1[4] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
constexpr double kD2c = -205.0 / 72;
constexpr double kD2[4] = {8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
constexpr double kStep = 0.02;

using P4 = std::array<double, 4>;  // x1, x2, y or z, t
using Fn = std::function<double(const P4&)>;

double fd1(const Fn& f, P4 p, int ax) {
    double r = 0, x = p[ax];
    for (int i = 0; i < 4; ++i) {
        p[ax] = x + (i + 1) * kStep;
        double a = f(p);
        p[ax] = x - (i + 1) * kStep;
        r += kD1[i] * (a - f(p));
    }
    return r / kStep;
}

double fd2(const Fn& f, P4 p, int ax) {
    double x = p[ax], r = kD2c * f(p);
    for (int i = 0; i < 4; ++i) {
        p[ax] = x + (i + 1) * kStep;
        double a = f(p);
        p[ax] = x - (i + 1) * kStep;
        r += kD2[i] * (a + f(p));
    }
    return r / (kStep * kStep);
}

double lap(const Fn& f, const P4& p) { return fd2(f, p, 0) + fd2(f, p, 1) + fd2(f, p, 2); }

// harmonic extension of the mode sum and its first derivatives, closed form
struct EtaBar {
    const std::vector<SurfaceMode>& modes;
    double b;
    // value, d1, d2, d3 at (x1, x2, y, t)
    std::array<double, 4> at(const P4& p) const {
        std::array<double, 4> r{0, 0, 0, 0};
        for (const auto& m : modes) {
            double K = std::hypot(m.k1, m.k2), e = m.amp * std::exp(m.rate * p[3]);
            double ps = m.k1 * p[0] + m.k2 * p[1] + m.phase;
            double P = cosh_profile(K, p[2], b, 0), dP = cosh_profile(K, p[2], b, 1);
            r[0] += e * std::cos(ps) * P;
            r[1] -= e * m.k1 * std::sin(ps) * P;
            r[2] -= e * m.k2 * std::sin(ps) * P;
            r[3] += e * std::cos(ps) * dP;
        }
        return r;
    }
    double theta3(const P4& p) const {
        double e = at(p)[0];
        return e + p[2] * (1 + e / b);
    }
};

// eta derivatives on Gamma: value, 1, 2, 11, 12, 22
std::array<double, 6> eta_derivs(const std::vector<SurfaceMode>& modes, double x1, double x2, double t) {
    std::array<double, 6> r{};
    for (const auto& m : modes) {
        double e = m.amp * std::exp(m.rate * t), ps = m.k1 * x1 + m.k2 * x2 + m.phase;
        double c = std::cos(ps), s = std::sin(ps);
        r[0] += e * c;
        r[1] -= e * m.k1 * s;
        r[2] -= e * m.k2 * s;
        r[3] -= e * m.k1 * m.k1 * c;
        r[4] -= e * m.k1 * m.k2 * c;
        r[5] -= e * m.k2 * m.k2 * c;
    }
    return r;
}

struct Composed {
    const ManufacturedCase& c;
    EtaBar eb;
    P4 phys(const P4& p) const { return {p[0], p[1], eb.theta3(p), p[3]}; }
    double call(const Callback& f, const P4& X) const { return f(X[0], X[1], X[2], X[3]); }
    Fn scalar(const Callback& f) const {
        return [this, &f](const P4& p) { return call(f, phys(p)); };
    }
    Fn velocity(int i) const {
        return [this, i](const P4& p) {
            auto e = eb.at(p);
            double s = 1 + p[2] / eb.b;
            double al = s * e[1], be = s * e[2], J = 1 + e[0] / eb.b + s * e[3];
            P4 X = phys(p);
            double u1 = call(c.u[0], X), u2 = call(c.u[1], X);
            if (i == 0) return J * u1;
            if (i == 1) return J * u2;
            return call(c.u[2], X) - al * u1 - be * u2;
        };
    }
    Fn physical(const Callback& f) const {
        return [&f](const P4& X) { return f(X[0], X[1], X[2], X[3]); };
    }
};

}  // namespace

double ResidualReport::get(const std::string& name) const {
    for (const auto& t : terms)
        if (t.first == name) return t.second;
    throw Error(ErrorKind::Config, "no residual named " + name);
}

ResidualReport chain_rule_oracle(const Spectral& sp, const ManufacturedCase& mc, double t) {
    const Grid& g = sp.grid();
    const int nz = g.nz;
    const double b = g.b;
    Composed C{mc, EtaBar{mc.eta, b}};
    const Fn W = C.scalar(mc.m), H = C.scalar(mc.ctilde), Q = C.scalar(mc.p), PH = C.scalar(mc.phi);
    const Fn V[3] = {C.velocity(0), C.velocity(1), C.velocity(2)};
    const Fn m = C.physical(mc.m), ct = C.physical(mc.ctilde), pp = C.physical(mc.p), Ph = C.physical(mc.phi);
    const Fn u[3] = {C.physical(mc.u[0]), C.physical(mc.u[1]), C.physical(mc.u[2])};

    // path (i): evaluators on grid samples
    Field w(g.size()), h(g.size()), q(g.size()), phi(g.size());
    Vec3 v = g.zeros_v();
    Surface eta(g.ncol()), eta_t(g.ncol());
    parallel_for(int(g.ncol()), [&](int col) {
        int i1 = col / g.n2, i2 = col % g.n2;
        double x1 = g.x1(i1), x2 = g.x2(i2);
        for (int k = 0; k < nz; ++k) {
            P4 p{x1, x2, g.y(k), t};
            std::size_t i = std::size_t(col) * nz + k;
            w[i] = W(p);
            h[i] = H(p);
            q[i] = Q(p);
            phi[i] = PH(p);
            for (int c = 0; c < 3; ++c) v[c][i] = V[c](p);
        }
        double e = 0, et = 0;
        for (const auto& md : mc.eta) {
            double a = md.amp * std::exp(md.rate * t) * std::cos(md.k1 * x1 + md.k2 * x2 + md.phase);
            e += a;
            et += md.rate * a;
        }
        eta[col] = e;
        eta_t[col] = et;
    });
    GeometryCoeffs G = geometry_coeffs(sp, eta, eta_t);
    Field F4 = eval_F4(sp, w, w, h, v, G), F5 = eval_F5(sp, h, v, G);
    Vec3 F = eval_F123(sp, w, v, grad(sp, q), phi, G);
    Surface G1 = eval_G1(sp, v, eta, G), G2 = eval_G2(sp, v, eta, G), G3 = eval_G3(sp, v, eta, G, mc.sigma),
            G4 = eval_G4(sp, w, h, eta, G);

    // path (ii): differences of the composed functions and the physical residuals at theta
    const int ncol = int(g.ncol());
    std::vector<std::array<double, 9>> colmax(ncol);
    parallel_for(ncol, [&](int col) {
        auto& r = colmax[col];
        r.fill(0.0);
        int i1 = col / g.n2, i2 = col % g.n2;
        double x1 = g.x1(i1), x2 = g.x2(i2);
        for (int k = 0; k < nz; ++k) {
            const std::size_t i = std::size_t(col) * nz + k;
            const P4 p{x1, x2, g.y(k), t};
            const P4 X = C.phys(p);
            auto e = C.eb.at(p);
            double s = 1 + p[2] / b;
            double al = s * e[1], be = s * e[2], J = 1 + e[0] / b + s * e[3];

            double mv = m(X), mt = fd1(m, X, 3), ctt = fd1(ct, X, 3);
            double gm[3], gc[3], gp[3], gP[3], uv[3], gu[3][3];
            for (int a = 0; a < 3; ++a) {
                gm[a] = fd1(m, X, a);
                gc[a] = fd1(ct, X, a);
                gp[a] = fd1(pp, X, a);
                gP[a] = fd1(Ph, X, a);
                uv[a] = u[a](X);
            }
            for (int a = 0; a < 3; ++a)
                for (int bb = 0; bb < 3; ++bb) gu[a][bb] = fd1(u[a], X, bb);
            double lm = lap(m, X), lc = lap(ct, X);
            double Rm = mt - lm - (gm[0] * gc[0] + gm[1] * gc[1] + gm[2] * gc[2] + mv * lc);
            double Rc = ctt - lc + gc[0] * gc[0] + gc[1] * gc[1] + gc[2] * gc[2] - mv;
            for (int a = 0; a < 3; ++a) Rm += uv[a] * gm[a], Rc += uv[a] * gc[a];
            double Ru[3];
            for (int a = 0; a < 3; ++a) {
                Ru[a] = fd1(u[a], X, 3) + gp[a] + mv * gP[a] - lap(u[a], X);
                for (int bb = 0; bb < 3; ++bb) Ru[a] += uv[bb] * gu[a][bb];
            }

            double wv = W(p), gw[3], gh[3], gq[3], gph[3];
            for (int a = 0; a < 3; ++a) {
                gw[a] = fd1(W, p, a);
                gh[a] = fd1(H, p, a);
                gq[a] = fd1(Q, p, a);
                gph[a] = fd1(PH, p, a);
            }
            double lh = lap(H, p);
            double L4 = fd1(W, p, 3) - lap(W, p) - (gw[0] * gh[0] + gw[1] * gh[1] + gw[2] * gh[2] + wv * lh);
            double L5 = fd1(H, p, 3) - lh - wv;
            double Lv[3];
            for (int a = 0; a < 3; ++a) Lv[a] = fd1(V[a], p, 3) - lap(V[a], p) + gq[a] + wv * gph[a];
            double JR[3] = {J * Ru[0], J * Ru[1], -al * Ru[0] - be * Ru[1] + Ru[2]};

            r[0] = std::max(r[0], std::abs(F4[i] - (L4 - Rm)));
            r[1] = std::max(r[1], std::abs(F5[i] - (L5 - Rc)));
            for (int a = 0; a < 3; ++a) r[2 + a] = std::max(r[2 + a], std::abs(F[a][i] - (Lv[a] - JR[a])));

            if (k != nz - 1) continue;
            // boundary laws on Gamma
            auto ed = eta_derivs(mc.eta, x1, x2, t);
            double n[3] = {-ed[1], -ed[2], 1.0};
            double S[3][3];
            for (int a = 0; a < 3; ++a)
                for (int bb = 0; bb < 3; ++bb) S[a][bb] = gu[a][bb] + gu[bb][a];
            double Sn[3];
            for (int a = 0; a < 3; ++a) Sn[a] = S[a][0] * n[0] + S[a][1] * n[1] + S[a][2] * n[2];
            double T1[3] = {1, 0, ed[1]}, T2[3] = {0, 1, ed[2]};
            double dv[3][3];
            for (int a = 0; a < 3; ++a)
                for (int bb = 0; bb < 3; ++bb) dv[a][bb] = fd1(V[a], p, bb);
            double o1 = dv[0][2] + dv[2][0] - (Sn[0] * T1[0] + Sn[1] * T1[1] + Sn[2] * T1[2]);
            double o2 = dv[1][2] + dv[2][1] - (Sn[0] * T2[0] + Sn[1] * T2[1] + Sn[2] * T2[2]);
            double nn = n[0] * n[0] + n[1] * n[1] + 1;
            double SNN = (n[0] * Sn[0] + n[1] * Sn[1] + n[2] * Sn[2]) / nn;
            double g1 = ed[1], g2 = ed[2];
            double curv = ((1 + g2 * g2) * ed[3] - 2 * g1 * g2 * ed[4] + (1 + g1 * g1) * ed[5]) / std::pow(nn, 1.5);
            double o3 = mc.sigma * (curv - ed[3] - ed[5]) + 2 * dv[2][2] - SNN;
            double flux = (gm[0] + mv * gc[0]) * n[0] + (gm[1] + mv * gc[1]) * n[1] + (gm[2] + mv * gc[2]) * n[2];
            double o4 = gw[2] + wv * gh[2] - J / nn * flux;
            r[5] = std::abs(G1[col] - o1);
            r[6] = std::abs(G2[col] - o2);
            r[7] = std::abs(G3[col] - o3);
            r[8] = std::abs(G4[col] - o4);
        }
    });
    static const char* names[9] = {"F4", "F5", "F1", "F2", "F3", "G1", "G2", "G3", "G4"};
    ResidualReport rep;
    for (int a = 0; a < 9; ++a) {
        double mx = 0;
        for (const auto& r : colmax) mx = std::max(mx, r[a]);
        rep.terms.emplace_back(names[a], mx);
    }
    return rep;
}

ManufacturedCase smooth_case(const Grid& g, double A, bool swap) {
    const double k1 = 2 * M_PI / g.l1, k2 = 2 * M_PI / g.l2;
    ManufacturedCase c;
    c.m = [=](double x1, double x2, double z, double t) {
        return 1 + 0.3 * std::sin(k1 * x1) * std::cos(k2 * x2) * std::exp(0.5 * z - t);
    };
    c.ctilde = [=](double x1, double x2, double z, double t) {
        return 0.2 * std::cos(k1 * x1 + 0.3) * (z + 1) * (z + 1) * std::exp(-0.5 * t) + 0.1 * std::sin(k2 * x2) * z;
    };
    // curl of (0.2 sin(k2 x2) cos z, 0.3 cos(k1 x1) sin(z + 0.5), 0) e^{-t}
    c.u[0] = [=](double x1, double, double z, double t) {
        return -0.3 * std::cos(k1 * x1) * std::cos(z + 0.5) * std::exp(-t);
    };
    c.u[1] = [=](double, double x2, double z, double t) {
        return -0.2 * std::sin(k2 * x2) * std::sin(z) * std::exp(-t);
    };
    c.u[2] = [=](double x1, double x2, double z, double t) {
        return -0.3 * k1 * std::sin(k1 * x1) * std::sin(z + 0.5) * std::exp(-t) -
               0.2 * k2 * std::cos(k2 * x2) * std::cos(z) * std::exp(-t);
    };
    c.p = [=](double x1, double x2, double z, double t) {
        return 0.5 * std::cos(k1 * x1) * std::sin(k2 * x2) * std::exp(z - t) + z;
    };
    c.phi = [=](double x1, double, double z, double) { return z + 0.1 * std::sin(k1 * x1) * z * z; };
    c.eta = {{A, k1, 0, 0.0, -0.5}, {0.5 * A, k1, k2, 0.7, -0.2}, {0.3 * A, 0, 2 * k2, -0.4, 0.1}};
    if (swap) {
        auto sw = [](Callback f) {
            return Callback([f](double x1, double x2, double z, double t) { return f(x2, x1, z, t); });
        };
        ManufacturedCase s = c;
        s.m = sw(c.m);
        s.ctilde = sw(c.ctilde);
        s.p = sw(c.p);
        s.phi = sw(c.phi);
        s.u[0] = sw(c.u[1]);
        s.u[1] = sw(c.u[0]);
        s.u[2] = sw(c.u[2]);
        for (auto& md : s.eta) std::swap(md.k1, md.k2);
        return s;
    }
    return c;
}

ManufacturedCase flat_case(const Grid& g) {
    const double k1 = 2 * M_PI / g.l1, k2 = 2 * M_PI / g.l2;
    ManufacturedCase c;
    c.m = [=](double x1, double x2, double z, double t) {
        return (1 + 0.3 * std::sin(k1 * x1) * std::cos(k2 * x2)) * (1 + 0.2 * z + 0.1 * z * z) * std::exp(-t);
    };
    c.ctilde = [=](double x1, double, double z, double t) {
        return 0.2 * std::cos(k1 * x1 + 0.3) * (z + 1) * (z + 1) * std::exp(-0.5 * t);
    };
    c.u[0] = [=](double, double x2, double z, double t) {
        return std::sin(k2 * x2) * (1 + z + 0.5 * z * z) * std::exp(-t);
    };
    c.u[1] = [=](double x1, double, double z, double t) { return std::cos(k1 * x1) * (0.5 - z * z) * std::exp(-t); };
    c.u[2] = [=](double x1, double x2, double, double t) { return 0.3 * std::cos(k1 * x1 + k2 * x2) * std::exp(-t); };
    c.p = [=](double x1, double x2, double z, double t) {
        return std::cos(k1 * x1) * std::sin(k2 * x2) * (1 + z * z) * std::exp(-t);
    };
    c.phi = [=](double x1, double, double z, double) { return z + 0.1 * std::sin(k1 * x1) * z * z; };
    return c;
}

}  // namespace cns
