#include "cns/energy.hpp"

#include <cmath>
#include <fstream>

#include "cns/error.hpp"
#include "cns/harmonic.hpp"
#include "cns/norms.hpp"
#include "cns/terms.hpp"

namespace cns {

namespace {

void need_two(std::size_t n) {
    if (n < 2) throw Error(ErrorKind::Config, "norm needs a trajectory with at least two time levels");
}

Field backward_diff(const Field& a, const Field& b, double dt) {
    Field d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = (a[i] - b[i]) / dt;
    return d;
}

// squared pieces of one component, accumulated
struct Sq {
    std::vector<double> h2, h3, t0, t1;  // per level / per interval
};

Sq pieces(const Spectral& sp, const std::vector<Field>& f, double dt) {
    Sq s;
    for (const Field& x : f) {
        s.h2.push_back(sobolev_norm_sq(sp, x, 2));
        s.h3.push_back(sobolev_norm_sq(sp, x, 3));
    }
    for (std::size_t n = 1; n < f.size(); ++n) {
        Field d = backward_diff(f[n], f[n - 1], dt);
        s.t0.push_back(sobolev_norm_sq(sp, d, 0));
        s.t1.push_back(sobolev_norm_sq(sp, d, 1));
    }
    return s;
}

void add(Sq& a, const Sq& b) {
    for (std::size_t i = 0; i < a.h2.size(); ++i) {
        a.h2[i] += b.h2[i];
        a.h3[i] += b.h3[i];
    }
    for (std::size_t i = 0; i < a.t0.size(); ++i) {
        a.t0[i] += b.t0[i];
        a.t1[i] += b.t1[i];
    }
}

double sup_sqrt(const std::vector<double>& x) {
    double m = 0;
    for (double v : x) m = std::max(m, v);
    return std::sqrt(m);
}

// trapezoid over levels
double l2t_levels(const std::vector<double>& sq, double dt) {
    double s = 0;
    for (std::size_t n = 0; n < sq.size(); ++n) s += (n == 0 || n + 1 == sq.size() ? 0.5 : 1.0) * sq[n];
    return std::sqrt(s * dt);
}

// midpoint sum over intervals
double l2t_intervals(const std::vector<double>& sq, double dt) {
    double s = 0;
    for (double v : sq) s += v;
    return std::sqrt(s * dt);
}

TripleNorm finish(const Sq& s, double dt) {
    TripleNorm t;
    t.sup_h2 = sup_sqrt(s.h2);
    t.sup_t_l2 = sup_sqrt(s.t0);
    t.l2_h3 = l2t_levels(s.h3, dt);
    t.l2_t_h1 = l2t_intervals(s.t1, dt);
    return t;
}

double vec_l2_sq(const Grid& g, const Vec3& v) {
    double s = 0;
    for (int c = 0; c < 3; ++c) {
        double n = l2_norm(g, v[c]);
        s += n * n;
    }
    return s;
}

double vec_sob_sq(const Spectral& sp, const Vec3& v, int m) {
    double s = 0;
    for (int c = 0; c < 3; ++c) s += sobolev_norm_sq(sp, v[c], m);
    return s;
}

double sq(double x) { return x * x; }

// squared H^2 norm of the Hessian of the harmonic extension
double ext_hessian_sq(const Spectral& sp, const Surface& eta) {
    CField c = sp.forward_s(eta);
    double s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            int a[3] = {0, 0, 0};
            ++a[i];
            ++a[j];
            double v = sobolev_norm_sq(sp, extension_derivative(sp, c, a[0], a[1], a[2]), 2);
            s += (i == j ? 1.0 : 2.0) * v;
        }
    return s;
}

double grad_eta_sq(const Spectral& sp, const Surface& eta, double s) {
    return sq(surface_fractional_norm(sp, sp.dh_s(eta, 1, 0), s)) +
           sq(surface_fractional_norm(sp, sp.dh_s(eta, 0, 1), s));
}

}  // namespace

Trajectory constant_trajectory(const Grid& g, std::size_t levels, double dt) {
    Trajectory t;
    t.dt = dt;
    t.w.assign(levels, g.zeros());
    t.h.assign(levels, g.zeros());
    t.q.assign(levels, g.zeros());
    t.v.assign(levels, g.zeros_v());
    t.eta.assign(levels, g.zeros_s());
    return t;
}

Trajectory difference(const Trajectory& a, const Trajectory& b) {
    if (a.levels() != b.levels()) throw Error(ErrorKind::Config, "difference: trajectory lengths differ");
    Trajectory d = a;
    auto sub = [](std::vector<double>& x, const std::vector<double>& y) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
    };
    for (std::size_t n = 0; n < a.levels(); ++n) {
        sub(d.w[n], b.w[n]);
        sub(d.h[n], b.h[n]);
        sub(d.q[n], b.q[n]);
        sub(d.eta[n], b.eta[n]);
        for (int c = 0; c < 3; ++c) sub(d.v[n][c], b.v[n][c]);
    }
    return d;
}

TripleNorm triple_norm_parts(const Spectral& sp, const std::vector<Field>& f, double dt) {
    need_two(f.size());
    return finish(pieces(sp, f, dt), dt);
}

TripleNorm triple_norm_parts(const Spectral& sp, const std::vector<Vec3>& f, double dt) {
    need_two(f.size());
    Sq acc;
    for (int c = 0; c < 3; ++c) {
        std::vector<Field> comp;
        comp.reserve(f.size());
        for (const Vec3& v : f) comp.push_back(v[c]);
        Sq s = pieces(sp, comp, dt);
        if (c == 0)
            acc = std::move(s);
        else
            add(acc, s);
    }
    return finish(acc, dt);
}

double triple_norm(const Spectral& sp, const std::vector<Field>& f, double dt) {
    return triple_norm_parts(sp, f, dt).total();
}

double QuintupleNorm::primal() const {
    return w.total() + h.total() + v.total() + grad_q_sup_l2 + grad_q_l2_h1 + eta_sup_h3 + grad_eta_l2_h52 +
           ext_hessian_l2_h2;
}

QuintupleNorm quintuple_norm(const Spectral& sp, const Trajectory& tr) {
    const std::size_t N = tr.levels();
    need_two(N);
    const Grid& g = sp.grid();
    const double dt = tr.dt;
    QuintupleNorm r;
    r.w = triple_norm_parts(sp, tr.w, dt);
    r.h = triple_norm_parts(sp, tr.h, dt);
    r.v = triple_norm_parts(sp, tr.v, dt);

    // gradient of v_t traced on Gamma
    std::vector<double> vt;
    for (std::size_t n = 1; n < N; ++n) {
        double s = 0;
        for (int c = 0; c < 3; ++c) {
            Field d = backward_diff(tr.v[n][c], tr.v[n - 1][c], dt);
            Vec3 gd = grad(sp, d);
            for (int j = 0; j < 3; ++j) s += sq(surface_fractional_norm(sp, top(g, gd[j]), -0.5));
        }
        vt.push_back(s);
    }
    r.grad_vt_trace_surrogate = l2t_intervals(vt, dt);

    // pressure pieces on levels 1..N-1
    std::vector<double> q0, q1, qt;
    Vec3 prev;
    for (std::size_t n = 1; n < N; ++n) {
        Vec3 gq = grad(sp, tr.q[n]);
        q0.push_back(vec_l2_sq(g, gq));
        q1.push_back(vec_sob_sq(sp, gq, 1));
        if (n > 1) {
            double s = 0;
            for (int c = 0; c < 3; ++c) s += sq(multiplier_norm(sp, backward_diff(gq[c], prev[c], dt), -1.0));
            qt.push_back(s);
        }
        prev = std::move(gq);
    }
    r.grad_q_sup_l2 = sup_sqrt(q0);
    r.grad_q_l2_h1 = l2t_levels(q1, dt);
    r.grad_qt_surrogate = l2t_intervals(qt, dt);

    std::vector<double> e3, e52, eh;
    for (std::size_t n = 0; n < N; ++n) {
        e3.push_back(sq(surface_fractional_norm(sp, tr.eta[n], 3.0)));
        e52.push_back(grad_eta_sq(sp, tr.eta[n], 2.5));
        eh.push_back(ext_hessian_sq(sp, tr.eta[n]));
    }
    r.eta_sup_h3 = sup_sqrt(e3);
    r.grad_eta_l2_h52 = l2t_levels(e52, dt);
    r.ext_hessian_l2_h2 = l2t_levels(eh, dt);
    return r;
}

double stokes_energy(const Spectral& sp, const Vec3& v, const Surface& eta, double gamma, double sigma) {
    const Grid& g = sp.grid();
    return vec_l2_sq(g, v) + gamma * sq(l2_norm_s(g, eta)) + sigma * grad_eta_sq(sp, eta, 0.0);
}

double data_norm(const Spectral& sp, const Field& w0, const Field& h0, const Vec3& v0, const Surface& eta0) {
    return sobolev_norm(sp, w0, 2) + sobolev_norm(sp, h0, 2) + std::sqrt(vec_sob_sq(sp, v0, 2)) +
           surface_fractional_norm(sp, eta0, 3.0);
}

EstimateCheck theorem_estimate_check(const Spectral& sp, const Trajectory& tr, double data, double c_cal) {
    const std::size_t N = tr.levels();
    need_two(N);
    double sup = 0;
    std::vector<double> integrand;
    for (std::size_t n = 0; n < N; ++n) {
        const std::size_t nq = n == 0 ? 1 : n;
        Vec3 gq = grad(sp, tr.q[nq]);
        double a = sobolev_norm(sp, tr.w[n], 2) + sobolev_norm(sp, tr.h[n], 2) +
                   std::sqrt(vec_sob_sq(sp, tr.v[n], 2)) + std::sqrt(vec_l2_sq(sp.grid(), gq)) +
                   surface_fractional_norm(sp, tr.eta[n], 3.0);
        sup = std::max(sup, a * a);
        double b = sobolev_norm(sp, tr.w[n], 3) + sobolev_norm(sp, tr.h[n], 3) +
                   std::sqrt(vec_sob_sq(sp, tr.v[n], 3)) + std::sqrt(vec_sob_sq(sp, gq, 1)) +
                   std::sqrt(grad_eta_sq(sp, tr.eta[n], 2.5));
        integrand.push_back(b * b);
    }
    EstimateCheck r;
    r.lhs = sup + sq(l2t_levels(integrand, tr.dt));
    r.rhs = c_cal * data * data;
    r.pass = r.lhs <= r.rhs;
    return r;
}

std::vector<EnergyRow> energy_rows(const Spectral& sp, const Trajectory& tr, double gamma, double sigma) {
    std::vector<EnergyRow> rows;
    for (std::size_t n = 0; n < tr.levels(); ++n) {
        const std::size_t nq = n == 0 ? std::min<std::size_t>(1, tr.levels() - 1) : n;
        Vec3 gq = grad(sp, tr.q[nq]);
        rows.push_back({n * tr.dt, stokes_energy(sp, tr.v[n], tr.eta[n], gamma, sigma),
                        sobolev_norm(sp, tr.w[n], 2), sobolev_norm(sp, tr.h[n], 2),
                        std::sqrt(vec_sob_sq(sp, tr.v[n], 2)), std::sqrt(vec_l2_sq(sp.grid(), gq)),
                        surface_fractional_norm(sp, tr.eta[n], 3.0)});
    }
    return rows;
}

void write_energy_csv(const std::string& path, const std::vector<EnergyRow>& rows, const QuintupleNorm& s) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::Config, "cannot write " + path);
    f.precision(17);
    f << "kind,t,stokes_energy,w_h2,h_h2,v_h2,grad_q_l2,eta_h3,quintuple_primal,quintuple_surrogate\n";
    auto row = [&](const char* kind, const EnergyRow& r) {
        f << kind << ',' << r.t << ',' << r.stokes_energy << ',' << r.w_h2 << ',' << r.h_h2 << ',' << r.v_h2 << ','
          << r.grad_q_l2 << ',' << r.eta_h3;
    };
    for (const auto& r : rows) {
        row("step", r);
        f << ",,\n";
    }
    if (!rows.empty()) {
        row("summary", rows.back());
        f << ',' << s.primal() << ',' << s.surrogate() << '\n';
    }
}

}  // namespace cns
