#include "cns/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "cns/error.hpp"
#include "cns/parallel.hpp"
#include "cns/terms.hpp"

namespace cns {

namespace {

const cplx I(0, 1);

void add_st(BandLU& M, int row, const Stencil& s, int stride, int comp, cplx scale) {
    for (int i = 0; i < s.n; ++i) M.add(row, stride * s.node[i] + comp, scale * s.c[i]);
}

template <class T>
double col_apply(const Stencil& s, const T* col) {
    double r = 0;
    for (int i = 0; i < s.n; ++i) r += s.c[i] * col[s.node[i]];
    return r;
}

// fourth-order one-sided first derivative for the Neumann and flux rows of the parabolic pair
Stencil flux_stencil(int nz, int j, double h) {
    if (nz < 5) return d1_stencil(nz, j, h);
    static constexpr double c[5] = {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -1.0 / 4};
    Stencil s;
    s.n = 5;
    const int dir = j == 0 ? 1 : -1;
    for (int i = 0; i < 5; ++i) {
        s.node[i] = j + dir * i;
        s.c[i] = dir * c[i] / h;
    }
    return s;
}

double horizontal_mean_at(const Grid& g, const Field& f, int k) {
    double s = 0;
    for (std::size_t c = 0; c < g.ncol(); ++c) s += f[c * g.nz + k];
    return s / double(g.ncol());
}

}  // namespace

// ---------------------------------------------------------------- parabolic pair

ParabolicStepper::ParabolicStepper(const Spectral& sp, double dt, double tol, int max_sweeps)
    : sp_(sp), dt_(dt), tol_(tol), max_sweeps_(max_sweeps) {
    if (!(dt > 0)) throw Error(ErrorKind::Config, "dt must be positive");
}

ParabolicStepper::Result ParabolicStepper::step(const Field& w_prev, const Field& h_prev, const Field& a,
                                                const Field& f4, const Field& f5, const Surface& g4) const {
    const Grid& g = sp_.grid();
    const int nz = g.nz, n = 2 * nz;
    const double h = g.dz(), dt = dt_;
    std::vector<double> abar(nz), dabar(nz);
    for (int k = 0; k < nz; ++k) abar[k] = horizontal_mean_at(g, a, k);
    for (int k = 0; k < nz; ++k) dabar[k] = col_apply(d1_stencil(nz, k, h), abar.data());
    Field ap(a.size());
    bool varying = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ap[i] = a[i] - abar[i % nz];
        if (std::abs(ap[i]) > 1e-15 * (1 + std::abs(a[i]))) varying = true;
    }
    Field dap = d_vertical(g, ap, 1);

    const int nm = sp_.nmodes();
    std::vector<BandLU> lu(nm);
    parallel_for(nm, [&](int m) {
        const double K2 = sp_.ksq(m);
        BandLU M(n, 9, 9);
        M.add(0, 0, 1.0);
        add_st(M, 1, flux_stencil(nz, 0, h), 2, 1, 1.0);
        for (int j = 1; j < nz - 1; ++j) {
            Stencil s2 = d2_stencil(nz, j, h), s1 = d1_stencil(nz, j, h);
            int rw = 2 * j, rh = 2 * j + 1;
            M.add(rw, 2 * j, 1 + dt * K2);
            add_st(M, rw, s2, 2, 0, -dt);
            M.add(rw, 2 * j + 1, dt * abar[j] * K2);
            add_st(M, rw, s2, 2, 1, -dt * abar[j]);
            add_st(M, rw, s1, 2, 1, -dt * dabar[j]);
            M.add(rh, 2 * j + 1, 1 + dt * K2);
            add_st(M, rh, s2, 2, 1, -dt);
            M.add(rh, 2 * j, -dt);
        }
        int t = nz - 1;
        Stencil st = flux_stencil(nz, t, h);
        add_st(M, 2 * t, st, 2, 0, 1.0);
        add_st(M, 2 * t, st, 2, 1, abar[t]);
        M.add(2 * t + 1, 2 * t + 1, 1.0);
        M.factor();
        lu[m] = std::move(M);
    });

    Field rw(w_prev.size()), rh(h_prev.size());
    for (std::size_t i = 0; i < rw.size(); ++i) {
        rw[i] = w_prev[i] + dt * f4[i];
        rh[i] = h_prev[i] + dt * f5[i];
    }
    const CField Rw = sp_.forward(rw), Rh = sp_.forward(rh);
    Result res;
    res.w = w_prev;
    res.h = h_prev;
    Field corr(g.size(), 0.0);
    Surface gtop = g4;
    for (int sweep = 1;; ++sweep) {
        CField Cc = sp_.forward(corr), Gc = sp_.forward_s(gtop);
        CField W(Rw.size()), H(Rh.size());
        parallel_for(nm, [&](int m) {
            std::vector<cplx> x(n);
            const std::size_t o = std::size_t(m) * nz;
            x[0] = 0;
            x[1] = 0;
            for (int j = 1; j < nz - 1; ++j) {
                x[2 * j] = Rw[o + j] + dt * Cc[o + j];
                x[2 * j + 1] = Rh[o + j];
            }
            x[2 * (nz - 1)] = Gc[m];
            x[2 * (nz - 1) + 1] = 0;
            lu[m].solve(x);
            for (int j = 0; j < nz; ++j) {
                W[o + j] = x[2 * j];
                H[o + j] = x[2 * j + 1];
            }
        });
        Field wn = sp_.backward(W), hn = sp_.backward(H);
        double change = 0, scale = 1;
        for (std::size_t i = 0; i < wn.size(); ++i) {
            change = std::max({change, std::abs(wn[i] - res.w[i]), std::abs(hn[i] - res.h[i])});
            scale = std::max({scale, std::abs(wn[i]), std::abs(hn[i])});
        }
        res.w = std::move(wn);
        res.h = std::move(hn);
        res.sweeps = sweep;
        res.change = change;
        if (!varying) break;
        if (sweep > 1 && change <= tol_ * scale) break;
        if (sweep >= max_sweeps_)
            throw Error(ErrorKind::NoConvergence,
                        "parabolic inner iteration did not converge (change " + std::to_string(change) +
                            "); coefficient a too large for the frozen-mean splitting");
        // lagged part of div(a grad h) and of the boundary flux
        CField hc = sp_.forward(res.h);
        Field h1 = sp_.apply(hc, 1, 0), h2 = sp_.apply(hc, 0, 1);
        Field h3 = d_vertical(g, res.h, 1), h33 = d_vertical(g, res.h, 2);
        for (std::size_t i = 0; i < h1.size(); ++i) {
            h1[i] *= ap[i];
            h2[i] *= ap[i];
        }
        Field c1 = sp_.dh(h1, 1, 0), c2 = sp_.dh(h2, 0, 1);
        for (std::size_t i = 0; i < corr.size(); ++i) corr[i] = c1[i] + c2[i] + ap[i] * h33[i] + dap[i] * h3[i];
        const Stencil ft = flux_stencil(nz, nz - 1, h);
        for (std::size_t c = 0; c < g.ncol(); ++c) {
            std::size_t i = c * nz + nz - 1;
            gtop[c] = g4[c] - ap[i] * col_apply(ft, res.h.data() + c * nz);
        }
    }
    return res;
}

Surface flux_derivative(const Grid& g, const Field& f, bool at_top) {
    const int j = at_top ? g.nz - 1 : 0;
    const Stencil s = flux_stencil(g.nz, j, g.dz());
    Surface out(g.ncol());
    for (std::size_t c = 0; c < g.ncol(); ++c) out[c] = col_apply(s, f.data() + c * g.nz);
    return out;
}

ParabolicTrajectory solve_parabolic_pair(const Spectral& sp, const ParabolicProblem& p) {
    std::size_t nt = p.a.size();
    if (nt < 2 || p.f4.size() != nt || p.f5.size() != nt || p.g4.size() != nt)
        throw Error(ErrorKind::Config, "solve_parabolic_pair: inconsistent trajectory lengths");
    ParabolicStepper st(sp, p.dt);
    ParabolicTrajectory out;
    out.w.push_back(p.w0);
    out.h.push_back(p.h0);
    for (std::size_t n = 1; n < nt; ++n) {
        auto r = st.step(out.w.back(), out.h.back(), p.a[n], p.f4[n], p.f5[n], p.g4[n]);
        out.max_sweeps_used = std::max(out.max_sweeps_used, r.sweeps);
        out.w.push_back(std::move(r.w));
        out.h.push_back(std::move(r.h));
    }
    return out;
}

double parabolic_compatibility(const Spectral& sp, const Field& w0, const Field& h0, const Field& a,
                               const Surface& g4) {
    const Grid& g = sp.grid();
    const Stencil ft = flux_stencil(g.nz, g.nz - 1, g.dz()), fb = flux_stencil(g.nz, 0, g.dz());
    double r = 0;
    for (std::size_t c = 0; c < g.ncol(); ++c) {
        std::size_t t = c * g.nz + g.nz - 1, b = c * g.nz;
        double w3 = col_apply(ft, w0.data() + b), h3 = col_apply(ft, h0.data() + b);
        r = std::max({r, std::abs(w3 + a[t] * h3 - g4[c]), std::abs(h0[t]), std::abs(w0[b]),
                      std::abs(col_apply(fb, h0.data() + b))});
    }
    return r;
}

// ---------------------------------------------------------------- Stokes

namespace {

// cI: identity coefficient, cd: viscous/pressure scaling, ceta: implicit surface coefficient
// Per mode unknowns at node j are [v1, v2, v3, q]. The pressure slot of node j < nz-1 holds q at the
// midpoint j+1/2, where continuity is imposed; the slot of the top node holds the surface pressure.
BandLU assemble_stokes(const Spectral& sp, int m, double cI, double cd, double ceta) {
    const Grid& g = sp.grid();
    const int nz = g.nz, n = 4 * nz, t = nz - 1;
    const double h = g.dz(), K2 = sp.ksq(m);
    const cplx s1 = I * sp.kt1(m), s2 = I * sp.kt2(m);
    BandLU M(n, 15, 15);
    auto u = [](int j, int c) { return 4 * j + c; };
    for (int c = 0; c < 3; ++c) M.add(u(0, c), u(0, c), 1.0);
    for (int j = 0; j < t; ++j) {
        const int r = u(j, 3);
        M.add(r, u(j, 0), 0.5 * s1);
        M.add(r, u(j + 1, 0), 0.5 * s1);
        M.add(r, u(j, 1), 0.5 * s2);
        M.add(r, u(j + 1, 1), 0.5 * s2);
        M.add(r, u(j + 1, 2), 1.0 / h);
        M.add(r, u(j, 2), -1.0 / h);
    }
    for (int j = 1; j < t; ++j) {
        Stencil d2s = d2_stencil(nz, j, h);
        for (int c = 0; c < 3; ++c) {
            M.add(u(j, c), u(j, c), cI + cd * K2);
            add_st(M, u(j, c), d2s, 4, c, -cd);
        }
        M.add(u(j, 0), u(j - 1, 3), 0.5 * cd * s1);
        M.add(u(j, 0), u(j, 3), 0.5 * cd * s1);
        M.add(u(j, 1), u(j - 1, 3), 0.5 * cd * s2);
        M.add(u(j, 1), u(j, 3), 0.5 * cd * s2);
        M.add(u(j, 2), u(j, 3), cd / h);
        M.add(u(j, 2), u(j - 1, 3), -cd / h);
    }
    Stencil d1t = d1_stencil(nz, t, h);
    add_st(M, u(t, 0), d1t, 4, 0, 1.0);
    M.add(u(t, 0), u(t, 2), s1);
    add_st(M, u(t, 1), d1t, 4, 1, 1.0);
    M.add(u(t, 1), u(t, 2), s2);
    M.add(u(t, 2), u(t, 3), 1.0);
    add_st(M, u(t, 2), d1t, 4, 2, -2.0);
    M.add(u(t, 2), u(t, 2), -ceta);
    // surface pressure extrapolated from the two nearest midpoints
    M.add(u(t, 3), u(t, 3), 1.0);
    M.add(u(t, 3), u(t - 1, 3), -1.5);
    if (t >= 2) M.add(u(t, 3), u(t - 2, 3), 0.5);
    M.factor();
    return M;
}

// rhs rows: momentum at interior nodes, tangential and normal data on top; pressure returned on nodes
void stokes_solve(const Spectral& sp, const std::vector<BandLU>& lu, const CField R[3], const CField& G1,
                  const CField& G2, const CField& G3, CField out[4]) {
    const Grid& g = sp.grid();
    const int nz = g.nz, nm = sp.nmodes();
    for (int c = 0; c < 4; ++c) out[c].assign(std::size_t(nm) * nz, 0.0);
    parallel_for(nm, [&](int m) {
        const std::size_t o = std::size_t(m) * nz;
        std::vector<cplx> x(4 * nz, 0.0);
        for (int j = 1; j < nz - 1; ++j)
            for (int c = 0; c < 3; ++c) x[4 * j + c] = R[c][o + j];
        const int t = nz - 1;
        x[4 * t + 0] = G1[m];
        x[4 * t + 1] = G2[m];
        x[4 * t + 2] = G3[m];
        lu[m].solve(x);
        for (int j = 0; j < nz; ++j)
            for (int c = 0; c < 3; ++c) out[c][o + j] = x[4 * j + c];
        auto mid = [&](int j) { return x[4 * j + 3]; };
        for (int j = 1; j < t; ++j) out[3][o + j] = 0.5 * (mid(j - 1) + mid(j));
        out[3][o] = t >= 2 ? 1.5 * mid(0) - 0.5 * mid(1) : mid(0);
        out[3][o + t] = x[4 * t + 3];
    });
}

}  // namespace

StokesStepper::StokesStepper(const Spectral& sp, double dt, double gamma, double sigma)
    : sp_(sp), dt_(dt), gamma_(gamma), sigma_(sigma), lu_(sp.nmodes()) {
    if (!(dt > 0)) throw Error(ErrorKind::Config, "dt must be positive");
    if (!(gamma > 0) || !(sigma > 0)) throw Error(ErrorKind::Config, "gamma and sigma must be positive");
    parallel_for(sp.nmodes(), [&](int m) {
        lu_[m] = assemble_stokes(sp, m, 1.0, dt, dt * (gamma + sigma * sp.ksq(m)));
    });
}

StokesState StokesStepper::step(const StokesState& prev, const Vec3& force, const Surface& g1, const Surface& g2,
                                const Surface& g3) const {
    const Grid& g = sp_.grid();
    CField R[3];
    for (int c = 0; c < 3; ++c) {
        Field r(g.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = prev.v[c][i] + dt_ * force[c][i];
        R[c] = sp_.forward(r);
    }
    CField E = sp_.forward_s(prev.eta), G3 = sp_.forward_s(g3);
    for (int m = 0; m < sp_.nmodes(); ++m) G3[m] = (gamma_ + sigma_ * sp_.ksq(m)) * E[m] - G3[m];
    CField out[4];
    stokes_solve(sp_, lu_, R, sp_.forward_s(g1), sp_.forward_s(g2), G3, out);
    StokesState s;
    for (int c = 0; c < 3; ++c) s.v[c] = sp_.backward(out[c]);
    s.q = sp_.backward(out[3]);
    Surface v3 = top(g, s.v[2]);
    s.eta.resize(g.ncol());
    for (std::size_t c = 0; c < g.ncol(); ++c) s.eta[c] = prev.eta[c] + dt_ * v3[c];
    return s;
}

Field stokes_divergence(const Spectral& sp, const Vec3& v) {
    const Grid& g = sp.grid();
    const int nz = g.nz;
    const double h = g.dz();
    Field avg1(g.size(), 0.0), avg2(g.size(), 0.0), out(g.size(), 0.0);
    for (std::size_t c = 0; c < g.ncol(); ++c)
        for (int k = 0; k + 1 < nz; ++k) {
            std::size_t i = c * nz + k;
            avg1[i] = 0.5 * (v[0][i] + v[0][i + 1]);
            avg2[i] = 0.5 * (v[1][i] + v[1][i + 1]);
            out[i] = (v[2][i + 1] - v[2][i]) / h;
        }
    Field d1 = sp.apply(sp.forward(avg1), 1, 0), d2 = sp.apply(sp.forward(avg2), 0, 1);
    for (std::size_t c = 0; c < g.ncol(); ++c)
        for (int k = 0; k + 1 < nz; ++k) {
            std::size_t i = c * nz + k;
            out[i] += d1[i] + d2[i];
        }
    return out;
}

StationaryStokes solve_stationary_stokes(const Spectral& sp, const Vec3& F, const Surface& g1, const Surface& g2,
                                         const Surface& g3) {
    std::vector<BandLU> lu(sp.nmodes());
    parallel_for(sp.nmodes(), [&](int m) { lu[m] = assemble_stokes(sp, m, 0.0, 1.0, 0.0); });
    CField R[3] = {sp.forward(F[0]), sp.forward(F[1]), sp.forward(F[2])};
    CField out[4];
    stokes_solve(sp, lu, R, sp.forward_s(g1), sp.forward_s(g2), sp.forward_s(g3), out);
    StationaryStokes s;
    for (int c = 0; c < 3; ++c) s.omega[c] = sp.backward(out[c]);
    s.q = sp.backward(out[3]);
    return s;
}

// ---------------------------------------------------------------- projection, Korn

Vec3 leray_projection(const Spectral& sp, const Vec3& u) {
    const Grid& g = sp.grid();
    const int nz = g.nz, nm = sp.nmodes();
    const double h = g.dz();
    CField div = sp.forward(divergence(sp, u)), U3 = sp.forward(u[2]);
    CField rho(div.size());
    parallel_for(nm, [&](int m) {
        BandLU M(nz, 4, 4);
        const double kt2 = sp.kt1(m) * sp.kt1(m) + sp.kt2(m) * sp.kt2(m);
        add_st(M, 0, d1_stencil(nz, 0, h), 1, 0, 1.0);
        for (int j = 1; j < nz - 1; ++j) {
            M.add(j, j, -kt2);
            Stencil outer = d1_stencil(nz, j, h);
            for (int a = 0; a < outer.n; ++a) add_st(M, j, d1_stencil(nz, outer.node[a], h), 1, 0, outer.c[a]);
        }
        M.add(nz - 1, nz - 1, 1.0);
        M.factor();
        const std::size_t o = std::size_t(m) * nz;
        std::vector<cplx> x(nz);
        x[0] = U3[o];
        for (int j = 1; j < nz - 1; ++j) x[j] = div[o + j];
        x[nz - 1] = 0;
        M.solve(x);
        for (int j = 0; j < nz; ++j) rho[o + j] = x[j];
    });
    Field r = sp.backward(rho);
    Vec3 gr = grad(sp, r);
    Vec3 p = u;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < r.size(); ++i) p[c][i] -= gr[c][i];
    return p;
}

double korn_form(const Spectral& sp, const Vec3& v, const Vec3& u) {
    const Grid& g = sp.grid();
    Vec3 gv[3] = {grad(sp, v[0]), grad(sp, v[1]), grad(sp, v[2])};
    Vec3 gu[3] = {grad(sp, u[0]), grad(sp, u[1]), grad(sp, u[2])};
    Field acc(g.size(), 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (std::size_t n = 0; n < acc.size(); ++n)
                acc[n] += 0.5 * (gv[i][j][n] + gv[j][i][n]) * (gu[i][j][n] + gu[j][i][n]);
    return integrate(g, acc);
}

}  // namespace cns
