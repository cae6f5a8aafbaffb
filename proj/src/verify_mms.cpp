#include <array>
#include <cmath>
#include <fstream>

#include "cns/error.hpp"
#include "cns/parallel.hpp"
#include "cns/solvers.hpp"
#include "cns/verify.hpp"

namespace cns {

namespace {

constexpr double kD1[4] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
constexpr double kD2c = -205.0 / 72;
constexpr double kD2[4] = {8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
constexpr double kStep = 0.02;

double d1(const Callback& f, std::array<double, 4> p, int ax) {
    double r = 0, x = p[ax];
    for (int i = 0; i < 4; ++i) {
        p[ax] = x + (i + 1) * kStep;
        double a = f(p[0], p[1], p[2], p[3]);
        p[ax] = x - (i + 1) * kStep;
        r += kD1[i] * (a - f(p[0], p[1], p[2], p[3]));
    }
    return r / kStep;
}

double d2(const Callback& f, std::array<double, 4> p, int ax) {
    double x = p[ax], r = kD2c * f(p[0], p[1], p[2], p[3]);
    for (int i = 0; i < 4; ++i) {
        p[ax] = x + (i + 1) * kStep;
        double a = f(p[0], p[1], p[2], p[3]);
        p[ax] = x - (i + 1) * kStep;
        r += kD2[i] * (a + f(p[0], p[1], p[2], p[3]));
    }
    return r / (kStep * kStep);
}

double lap(const Callback& f, const std::array<double, 4>& p) { return d2(f, p, 0) + d2(f, p, 1) + d2(f, p, 2); }

// time derivative: exact, or the backward quotient the solver uses
double dt_of(const Callback& f, const std::array<double, 4>& p, double dt, bool discrete) {
    if (!discrete) return d1(f, p, 3);
    return (f(p[0], p[1], p[2], p[3]) - f(p[0], p[1], p[2], p[3] - dt)) / dt;
}

template <class K>
Field sample(const Grid& g, double t, K&& k) {
    Field f(g.size());
    parallel_for(int(g.ncol()), [&](int col) {
        int i1 = col / g.n2, i2 = col % g.n2;
        for (int z = 0; z < g.nz; ++z) f[std::size_t(col) * g.nz + z] = k(std::array<double, 4>{g.x1(i1), g.x2(i2), g.y(z), t});
    });
    return f;
}

template <class K>
Surface sample_top(const Grid& g, double t, K&& k) {
    Surface s(g.ncol());
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2) s[i1 * g.n2 + i2] = k(std::array<double, 4>{g.x1(i1), g.x2(i2), 0.0, t});
    return s;
}

Field sample_cb(const Grid& g, double t, const Callback& f) {
    return sample(g, t, [&](const std::array<double, 4>& p) { return f(p[0], p[1], p[2], p[3]); });
}

double max_err(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

struct ParabolicCase {
    Callback w, h, a;
};
struct StokesCase {
    Callback v[3], q, eta;  // eta ignores its z argument
};

// temporal cases are quadratic in y and low-mode in x, so the grid represents them exactly
ParabolicCase parabolic_case(bool smooth_in_y) {
    ParabolicCase c;
    const double b = 1.0;
    if (smooth_in_y) {
        c.w = [=](double x1, double, double y, double t) {
            return std::exp(-t) * (1 + 0.5 * std::cos(x1)) * std::sin(M_PI * (y + b) / (2 * b));
        };
        c.h = [=](double, double x2, double y, double t) {
            return std::exp(-t) * (std::cos(x2) + 0.5) * std::cos(M_PI * (y + b) / (2 * b));
        };
    } else {
        c.w = [=](double x1, double, double y, double t) {
            return std::exp(-t) * (1 + 0.5 * std::cos(x1)) * (y + b) * (1 - 0.3 * y);
        };
        c.h = [=](double, double x2, double y, double t) {
            return std::exp(-t) * (std::cos(x2) + 0.5) * y * (y + 2 * b);
        };
    }
    c.a = [](double x1, double, double y, double) { return 0.1 * (1 + 0.5 * std::cos(x1)) * (1 + 0.5 * y); };
    return c;
}

StokesCase stokes_case(bool smooth_in_y) {
    StokesCase c;
    const double b = 1.0;
    if (smooth_in_y) {
        // stream functions vanish with their y-derivative at S_B and vanish on Gamma: eta stays put
        auto P1 = [=](double y) { return y * (y + b) * (y + b) * std::exp(y); };
        auto P1y = [=](double y) { return ((y + b) * (y + b) + 2 * y * (y + b) + y * (y + b) * (y + b)) * std::exp(y); };
        auto P2 = [=](double y) { return y * (y + b) * (y + b) * std::exp(0.5 * y); };
        auto P2y = [=](double y) {
            return ((y + b) * (y + b) + 2 * y * (y + b) + 0.5 * y * (y + b) * (y + b)) * std::exp(0.5 * y);
        };
        c.v[0] = [=](double x1, double, double y, double t) { return -std::cos(x1) * P1y(y) * std::exp(-t); };
        c.v[1] = [=](double, double x2, double y, double t) { return -0.5 * std::cos(x2 + 0.3) * P2y(y) * std::exp(-t); };
        c.v[2] = [=](double x1, double x2, double y, double t) {
            return (-std::sin(x1) * P1(y) - 0.5 * std::sin(x2 + 0.3) * P2(y)) * std::exp(-t);
        };
        c.q = [](double x1, double x2, double y, double t) { return std::cos(x1) * std::sin(x2) * std::exp(y - t); };
        c.eta = [](double x1, double x2, double, double) { return 0.01 * std::cos(x2) + 0.02 * std::sin(x1 + x2); };
    } else {
        // psi = cos(x1)(y+b)^2 and 0.5 cos(x2+0.3)(y+b)^2, times e^{-t}
        c.v[0] = [=](double x1, double, double y, double t) { return -2 * std::cos(x1) * (y + b) * std::exp(-t); };
        c.v[1] = [=](double, double x2, double y, double t) { return -std::cos(x2 + 0.3) * (y + b) * std::exp(-t); };
        auto v3 = [=](double x1, double x2, double y) {
            return -std::sin(x1) * (y + b) * (y + b) - 0.5 * std::sin(x2 + 0.3) * (y + b) * (y + b);
        };
        c.v[2] = [=](double x1, double x2, double y, double t) { return v3(x1, x2, y) * std::exp(-t); };
        c.q = [](double x1, double x2, double y, double t) {
            return std::cos(x1) * std::sin(x2) * (1 + y) * std::exp(-t);
        };
        // eta_t = v3 on Gamma
        c.eta = [=](double x1, double x2, double, double t) {
            return 0.01 * std::cos(x2) + (1 - std::exp(-t)) * v3(x1, x2, 0.0);
        };
    }
    return c;
}

double run_parabolic(int nz, double dt, double T, bool smooth_in_y, bool discrete_forcing) {
    Grid g(16, 16, nz, 2 * M_PI, 2 * M_PI, 1.0);
    Spectral sp(g);
    ParabolicCase c = parabolic_case(smooth_in_y);
    ParabolicStepper st(sp, dt);
    Field w = sample_cb(g, 0, c.w), h = sample_cb(g, 0, c.h);
    const int N = int(std::lround(T / dt));
    for (int n = 1; n <= N; ++n) {
        double t = n * dt;
        Field a = sample_cb(g, t, c.a);
        Field f4 = sample(g, t, [&](const std::array<double, 4>& p) {
            double div = c.a(p[0], p[1], p[2], p[3]) * lap(c.h, p);
            for (int ax = 0; ax < 3; ++ax) div += d1(c.a, p, ax) * d1(c.h, p, ax);
            return dt_of(c.w, p, dt, discrete_forcing) - lap(c.w, p) - div;
        });
        Field f5 = sample(g, t, [&](const std::array<double, 4>& p) {
            return dt_of(c.h, p, dt, discrete_forcing) - lap(c.h, p) - c.w(p[0], p[1], p[2], p[3]);
        });
        Surface g4 = sample_top(g, t, [&](const std::array<double, 4>& p) {
            return d1(c.w, p, 2) + c.a(p[0], p[1], p[2], p[3]) * d1(c.h, p, 2);
        });
        auto r = st.step(w, h, a, f4, f5, g4);
        w = std::move(r.w);
        h = std::move(r.h);
    }
    return std::max(max_err(w, sample_cb(g, N * dt, c.w)), max_err(h, sample_cb(g, N * dt, c.h)));
}

double run_stokes(int nz, double dt, double T, bool smooth_in_y, bool discrete_forcing) {
    Grid g(16, 16, nz, 2 * M_PI, 2 * M_PI, 1.0);
    Spectral sp(g);
    StokesCase c = stokes_case(smooth_in_y);
    const double gamma = 1, sigma = 1;
    StokesStepper st(sp, dt, gamma, sigma);
    StokesState s;
    for (int k = 0; k < 3; ++k) s.v[k] = sample_cb(g, 0, c.v[k]);
    s.eta = sample_top(g, 0, [&](const std::array<double, 4>& p) { return c.eta(p[0], p[1], 0, p[3]); });
    const int N = int(std::lround(T / dt));
    for (int n = 1; n <= N; ++n) {
        double t = n * dt;
        Vec3 f;
        for (int k = 0; k < 3; ++k)
            f[k] = sample(g, t, [&](const std::array<double, 4>& p) {
                return dt_of(c.v[k], p, dt, discrete_forcing) - lap(c.v[k], p) + d1(c.q, p, k);
            });
        Surface g1 = sample_top(g, t, [&](const std::array<double, 4>& p) { return d1(c.v[0], p, 2) + d1(c.v[2], p, 0); });
        Surface g2 = sample_top(g, t, [&](const std::array<double, 4>& p) { return d1(c.v[1], p, 2) + d1(c.v[2], p, 1); });
        Surface g3 = sample_top(g, t, [&](const std::array<double, 4>& p) {
            double e = c.eta(p[0], p[1], 0, p[3]);
            double le = d2(c.eta, p, 0) + d2(c.eta, p, 1);
            return gamma * e - sigma * le - c.q(p[0], p[1], p[2], p[3]) + 2 * d1(c.v[2], p, 2);
        });
        s = st.step(s, f, g1, g2, g3);
    }
    double e = 0;
    for (int k = 0; k < 3; ++k) e = std::max(e, max_err(s.v[k], sample_cb(g, N * dt, c.v[k])));
    Surface ex = sample_top(g, N * dt, [&](const std::array<double, 4>& p) { return c.eta(p[0], p[1], 0, p[3]); });
    return std::max(e, max_err(s.eta, ex));
}

double run_stationary(int nz) {
    Grid g(16, 16, nz, 2 * M_PI, 2 * M_PI, 1.0);
    Spectral sp(g);
    StokesCase c = stokes_case(true);
    const double t = 0;
    Vec3 F;
    for (int k = 0; k < 3; ++k)
        F[k] = sample(g, t, [&](const std::array<double, 4>& p) { return -lap(c.v[k], p) + d1(c.q, p, k); });
    Surface g1 = sample_top(g, t, [&](const std::array<double, 4>& p) { return d1(c.v[0], p, 2) + d1(c.v[2], p, 0); });
    Surface g2 = sample_top(g, t, [&](const std::array<double, 4>& p) { return d1(c.v[1], p, 2) + d1(c.v[2], p, 1); });
    Surface g3 = sample_top(g, t, [&](const std::array<double, 4>& p) {
        return c.q(p[0], p[1], p[2], p[3]) - 2 * d1(c.v[2], p, 2);
    });
    StationaryStokes s = solve_stationary_stokes(sp, F, g1, g2, g3);
    double e = 0;
    for (int k = 0; k < 3; ++k) e = std::max(e, max_err(s.omega[k], sample_cb(g, t, c.v[k])));
    return e;
}

}  // namespace

double fitted_order(const std::vector<double>& step, const std::vector<double>& error) {
    if (step.size() != error.size() || step.size() < 2) throw Error(ErrorKind::Config, "fitted_order: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(step.size());
    for (std::size_t i = 0; i < step.size(); ++i) {
        double x = std::log(step[i]), y = std::log(error[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceTable mms_spatial(const std::string& solver, const std::vector<int>& nz_list) {
    if (nz_list.size() < 3) throw Error(ErrorKind::Config, "mms study needs at least three grids");
    ConvergenceTable t;
    t.solver = solver;
    t.kind = "spatial";
    for (int nz : nz_list) {
        double e;
        if (solver == "parabolic")
            e = run_parabolic(nz, 1e-2, 0.1, true, true);
        else if (solver == "stokes")
            e = run_stokes(nz, 1e-2, 0.1, true, true);
        else if (solver == "stationary")
            e = run_stationary(nz);
        else
            throw Error(ErrorKind::Config, "unknown mms solver '" + solver + "' (parabolic|stokes|stationary)");
        t.step.push_back(1.0 / (nz - 1));
        t.error.push_back(e);
    }
    t.order = fitted_order(t.step, t.error);
    return t;
}

ConvergenceTable mms_temporal(const std::string& solver, const std::vector<double>& dt_list) {
    if (dt_list.size() < 3) throw Error(ErrorKind::Config, "mms study needs at least three time steps");
    ConvergenceTable t;
    t.solver = solver;
    t.kind = "temporal";
    for (double dt : dt_list) {
        double e;
        if (solver == "parabolic")
            e = run_parabolic(9, dt, 0.2, false, false);
        else if (solver == "stokes")
            e = run_stokes(9, dt, 0.2, false, false);
        else
            throw Error(ErrorKind::Config, "no temporal study for solver '" + solver + "' (parabolic|stokes)");
        t.step.push_back(dt);
        t.error.push_back(e);
    }
    t.order = fitted_order(t.step, t.error);
    return t;
}

void write_table_csv(const std::string& path, const std::vector<ConvergenceTable>& tables) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::Config, "cannot write " + path);
    f.precision(17);
    f << "solver,kind,step,error,order\n";
    for (const auto& t : tables)
        for (std::size_t i = 0; i < t.step.size(); ++i)
            f << t.solver << ',' << t.kind << ',' << t.step[i] << ',' << t.error[i] << ',' << t.order << '\n';
}

}  // namespace cns
