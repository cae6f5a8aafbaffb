#include "cns/picard.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cns/error.hpp"
#include "cns/harmonic.hpp"
#include "cns/solvers.hpp"
#include "cns/terms.hpp"

namespace cns {

namespace {

Surface scaled(const Surface& s, double f) {
    Surface r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = f * s[i];
    return r;
}

double max_abs_diff(const Surface& a, const Surface& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Field potential(const Spectral& sp, const PicardConfig& cfg, const Surface& eta, double t) {
    if (!cfg.phi) return sp.grid().zeros();
    return compose_with_theta(sp, cfg.phi, eta, t);
}

Vec3 density_force(const Field& w, const Vec3& grad_phi, const Vec3* base) {
    Vec3 f;
    for (int c = 0; c < 3; ++c) {
        f[c].resize(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) f[c][i] = (base ? (*base)[c][i] : 0.0) - w[i] * grad_phi[c][i];
    }
    return f;
}

void check_window(const JacobianBounds& jb, std::size_t level, const PicardConfig& cfg, const Grid& g,
                  const Surface& eta) {
    if (jb.jmin > 0.5 && jb.jmax < 1.5) return;
    std::ostringstream m;
    m << "Jacobian window violated at level " << level << ": Jmin=" << jb.jmin << " Jmax=" << jb.jmax;
    if (!cfg.dump_dir.empty()) {
        std::string path = cfg.dump_dir + "/jacobian_violation_eta.cnss";
        write_surface(path, g, eta);
        m << " (surface dumped to " << path << ")";
    }
    throw Error(ErrorKind::Jacobian, m.str());
}

JacobianBounds merge(JacobianBounds a, const JacobianBounds& b) {
    a.jmin = std::min(a.jmin, b.jmin);
    a.jmax = std::max(a.jmax, b.jmax);
    return a;
}

JacobianBounds trajectory_window(const Spectral& sp, const Trajectory& tr) {
    JacobianBounds jb{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Surface& e : tr.eta) jb = merge(jb, jacobian_window(sp, e));
    return jb;
}

}  // namespace

InitialData zero_data(const Grid& g) { return InitialData{g.zeros(), g.zeros(), g.zeros_v(), g.zeros_s()}; }

int PicardConfig::levels() const {
    if (!(dt > 0) || !(T > 0)) throw Error(ErrorKind::Config, "dt and T must be positive");
    long n = std::lround(T / dt);
    if (n < 1 || std::abs(n * dt - T) > 1e-9 * T) throw Error(ErrorKind::Config, "T must be a multiple of dt");
    return int(n) + 1;
}

double CompatibilityReport::worst() const {
    double m = 0;
    for (const auto& r : residuals) m = std::max(m, r.second);
    return m;
}

CompatibilityReport check_compatibility(const Spectral& sp, const InitialData& d, double tol) {
    const Grid& g = sp.grid();
    CompatibilityReport r;
    r.tol = tol;
    GeometryCoeffs G = geometry_coeffs(sp, d.eta0, top(g, d.v0[2]));

    r.residuals.emplace_back("div_v0", max_abs(divergence(sp, d.v0)));
    double vb = 0;
    for (int c = 0; c < 3; ++c) vb = std::max(vb, max_abs(bottom(g, d.v0[c])));
    r.residuals.emplace_back("v0_bottom", vb);

    Vec3 g1 = grad(sp, d.v0[0]), g2 = grad(sp, d.v0[1]), g3 = grad(sp, d.v0[2]);
    Surface t1 = top(g, g1[2]), t2 = top(g, g2[2]), a1 = top(g, g3[0]), a2 = top(g, g3[1]);
    for (std::size_t i = 0; i < t1.size(); ++i) {
        t1[i] += a1[i];
        t2[i] += a2[i];
    }
    r.residuals.emplace_back("tangential_1", max_abs_diff(t1, eval_G1(sp, d.v0, d.eta0, G)));
    r.residuals.emplace_back("tangential_2", max_abs_diff(t2, eval_G2(sp, d.v0, d.eta0, G)));

    Surface w3 = flux_derivative(g, d.w0, true), h3 = flux_derivative(g, d.h0, true), wt = top(g, d.w0);
    for (std::size_t i = 0; i < w3.size(); ++i) w3[i] += wt[i] * h3[i];
    r.residuals.emplace_back("flux", max_abs_diff(w3, eval_G4(sp, d.w0, d.h0, d.eta0, G)));
    r.residuals.emplace_back("h0_top", max_abs(top(g, d.h0)));
    r.residuals.emplace_back("w0_bottom", max_abs(bottom(g, d.w0)));
    r.residuals.emplace_back("dh0_bottom", max_abs(flux_derivative(g, d.h0, false)));
    r.pass = r.worst() <= tol;
    return r;
}

JacobianBounds jacobian_window(const Spectral& sp, const Surface& eta) {
    const Grid& g = sp.grid();
    CField c = sp.forward_s(eta);
    Field e = extension_derivative(sp, c, 0, 0, 0), e3 = extension_derivative(sp, c, 0, 0, 1);
    JacobianBounds jb{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < e.size(); ++i) {
        double y = g.y(int(i % g.nz));
        double J = 1 + e[i] / g.b + (1 + y / g.b) * e3[i];
        jb.jmin = std::min(jb.jmin, J);
        jb.jmax = std::max(jb.jmax, J);
    }
    return jb;
}

Trajectory bootstrap_iterates(const Spectral& sp, const PicardConfig& cfg, const InitialData& d) {
    const Grid& g = sp.grid();
    const int L = cfg.levels();
    const double dt = cfg.dt;
    Trajectory tr = constant_trajectory(g, L, dt);
    tr.w[0] = d.w0;
    tr.h[0] = d.h0;
    tr.v[0] = d.v0;
    tr.eta[0] = d.eta0;

    GeometryCoeffs G0 = geometry_coeffs(sp, d.eta0, top(g, d.v0[2]));
    Surface g1 = eval_G1(sp, d.v0, d.eta0, G0), g2 = eval_G2(sp, d.v0, d.eta0, G0);
    Surface g4 = eval_G4(sp, d.w0, d.h0, d.eta0, G0);
    Surface wt = top(g, d.w0), h3 = flux_derivative(g, d.h0, true);
    for (std::size_t i = 0; i < g4.size(); ++i) g4[i] -= wt[i] * h3[i];

    const Field zero = g.zeros();
    const Surface zs = g.zeros_s();
    ParabolicStepper ps(sp, dt, cfg.inner_tol);
    StokesStepper st(sp, dt, cfg.gamma, cfg.sigma);
    for (int n = 1; n < L; ++n) {
        const double t = n * dt, e = std::exp(-t);
        auto pr = ps.step(tr.w[n - 1], tr.h[n - 1], zero, zero, zero, scaled(g4, e));
        tr.w[n] = std::move(pr.w);
        tr.h[n] = std::move(pr.h);
        Vec3 gphi = grad(sp, potential(sp, cfg, d.eta0, t));
        StokesState prev{tr.v[n - 1], Field(), tr.eta[n - 1]};
        StokesState s = st.step(prev, density_force(tr.w[n], gphi, nullptr), scaled(g1, e), scaled(g2, e), zs);
        tr.v[n] = std::move(s.v);
        tr.q[n] = std::move(s.q);
        tr.eta[n] = std::move(s.eta);
    }
    tr.q[0] = tr.q[1];
    return tr;
}

Trajectory picard_step(const Spectral& sp, const PicardConfig& cfg, const InitialData& d, const Trajectory& prev2,
                       const Trajectory& prev1, JacobianBounds* bounds) {
    const Grid& g = sp.grid();
    const int L = cfg.levels();
    if (int(prev1.levels()) != L || int(prev2.levels()) != L)
        throw Error(ErrorKind::Config, "picard_step: predecessor trajectories do not match the time grid");
    const double dt = cfg.dt;
    Trajectory tr = constant_trajectory(g, L, dt);
    tr.w[0] = d.w0;
    tr.h[0] = d.h0;
    tr.v[0] = d.v0;
    tr.eta[0] = d.eta0;

    ParabolicStepper ps(sp, dt, cfg.inner_tol);
    StokesStepper st(sp, dt, cfg.gamma, cfg.sigma);
    JacobianBounds jb{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (int n = 1; n < L; ++n) {
        const double t = n * dt;
        const Surface& eta = prev1.eta[n];
        const Vec3& v = prev1.v[n];
        GeometryCoeffs G = geometry_coeffs(sp, eta, top(g, v[2]));
        JacobianBounds b = jacobian_bounds(G);
        check_window(b, n, cfg, g, eta);
        jb = merge(jb, b);

        Field f4 = eval_F4(sp, prev2.w[n], prev1.w[n], prev1.h[n], v, G);
        Field f5 = eval_F5(sp, prev1.h[n], v, G);
        Surface g4 = eval_G4(sp, prev1.w[n], prev1.h[n], eta, G);
        auto pr = ps.step(tr.w[n - 1], tr.h[n - 1], prev1.w[n], f4, f5, g4);
        tr.w[n] = std::move(pr.w);
        tr.h[n] = std::move(pr.h);

        Field phi = potential(sp, cfg, eta, t);
        Vec3 F = eval_F123(sp, prev1.w[n], v, grad(sp, prev1.q[n]), phi, G);
        Vec3 force = density_force(tr.w[n], grad(sp, phi), &F);
        StokesState prev{tr.v[n - 1], Field(), tr.eta[n - 1]};
        StokesState s = st.step(prev, force, eval_G1(sp, v, eta, G), eval_G2(sp, v, eta, G),
                                eval_G3(sp, v, eta, G, cfg.sigma));
        tr.v[n] = std::move(s.v);
        tr.q[n] = std::move(s.q);
        tr.eta[n] = std::move(s.eta);
    }
    tr.q[0] = tr.q[1];
    if (bounds) *bounds = jb;
    return tr;
}

void write_convergence_csv(const std::string& path, const ConvergenceReport& r) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::Config, "cannot write " + path);
    f.precision(17);
    f << "sweep,diff_norm,diff_primal,diff_surrogate,ratio,Jmin,Jmax,iterate_norm,stokes_energy\n";
    for (const auto& s : r.rows) {
        f << s.sweep << ',' << s.diff_norm << ',' << s.diff_primal << ',' << s.diff_surrogate << ',';
        if (!std::isnan(s.ratio)) f << s.ratio;
        f << ',' << s.jmin << ',' << s.jmax << ',' << s.iterate_norm << ',' << s.stokes_energy << '\n';
    }
}

PicardResult run(const Spectral& sp, const PicardConfig& cfg, const InitialData& d) {
    PicardResult res;
    res.data_norm = data_norm(sp, d.w0, d.h0, d.v0, d.eta0);
    if (!(res.data_norm < cfg.eps0)) {
        std::ostringstream m;
        m << "initial data norm " << res.data_norm << " is not below the smallness threshold eps0=" << cfg.eps0;
        throw Error(ErrorKind::Config, m.str());
    }
    CompatibilityReport cr = check_compatibility(sp, d, cfg.compat_tol);
    if (!cr.pass) {
        std::ostringstream m;
        m << "initial data fail compatibility:";
        for (const auto& [k, v] : cr.residuals)
            if (v > cr.tol) m << ' ' << k << '=' << v;
        throw Error(ErrorKind::Compatibility, m.str());
    }
    check_window(jacobian_window(sp, d.eta0), 0, cfg, sp.grid(), d.eta0);

    auto row_for = [&](int sweep, const Trajectory& x, const QuintupleNorm& dn, const JacobianBounds& jb) {
        SweepRow r;
        r.sweep = sweep;
        r.diff_norm = dn.total();
        r.diff_primal = dn.primal();
        r.diff_surrogate = dn.surrogate();
        r.ratio = std::numeric_limits<double>::quiet_NaN();
        r.jmin = jb.jmin;
        r.jmax = jb.jmax;
        r.iterate_norm = quintuple_norm(sp, x).total();
        r.stokes_energy = stokes_energy(sp, x.v.back(), x.eta.back(), cfg.gamma, cfg.sigma);
        return r;
    };

    Trajectory prev1 = bootstrap_iterates(sp, cfg, d);
    {
        QuintupleNorm dn = quintuple_norm(sp, prev1);
        JacobianBounds jb = trajectory_window(sp, prev1);
        check_window(jb, 0, cfg, sp.grid(), prev1.eta.back());
        res.report.rows.push_back(row_for(1, prev1, dn, jb));
    }
    if (res.report.rows.back().diff_norm < cfg.diff_tol) {
        res.report.converged = true;
        res.traj = std::move(prev1);
        return res;
    }
    Trajectory prev2 = prev1;
    for (int sweep = 2; sweep <= cfg.max_sweeps; ++sweep) {
        Trajectory next = picard_step(sp, cfg, d, prev2, prev1);
        JacobianBounds jb = trajectory_window(sp, next);
        check_window(jb, 0, cfg, sp.grid(), next.eta.back());
        SweepRow r = row_for(sweep, next, quintuple_norm(sp, difference(next, prev1)), jb);
        auto& rows = res.report.rows;
        if (sweep >= 4) {
            double a = r.diff_norm, b = rows[sweep - 2].diff_norm, c = rows[sweep - 3].diff_norm;
            r.ratio = (a * a + 0.5 * b * b) / (b * b + 0.5 * c * c);
        }
        rows.push_back(r);
        prev2 = std::move(prev1);
        prev1 = std::move(next);
        if (r.diff_norm < cfg.diff_tol) {
            res.report.converged = true;
            break;
        }
    }
    res.traj = std::move(prev1);
    if (!res.report.converged) {
        std::ostringstream m;
        m << "no convergence in " << cfg.max_sweeps << " sweeps; diff/ratio history:";
        for (const auto& r : res.report.rows) m << " (" << r.diff_norm << ", " << r.ratio << ")";
        throw NoConvergenceError(m.str(), res.report);
    }
    return res;
}

PhysicalTrajectory invert_to_moving_domain(const Spectral& sp, const Trajectory& tr, double c_hat) {
    const Grid& g = sp.grid();
    PhysicalTrajectory p;
    p.dt = tr.dt;
    p.m_min = std::numeric_limits<double>::infinity();
    p.c_min = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < tr.levels(); ++n) {
        GeometryCoeffs G = geometry_coeffs(sp, tr.eta[n], top(g, tr.v[n][2]));
        p.m.push_back(tr.w[n]);
        p.c.push_back(inverse_log_transform(tr.h[n], c_hat));
        p.u.push_back(velocity_from_flat(tr.v[n], G));
        p.p.push_back(tr.q[n]);
        p.eta.push_back(tr.eta[n]);
        for (double x : p.m.back()) p.m_min = std::min(p.m_min, x);
        for (double x : p.c.back()) p.c_min = std::min(p.c_min, x);
    }
    p.positive = p.m_min >= -1e-12 && p.c_min > 0;
    return p;
}

}  // namespace cns
