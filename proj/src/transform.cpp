#include "cns/transform.hpp"

#include <algorithm>
#include <cmath>

#include "cns/error.hpp"

namespace cns {

int multi_index(int a1, int a2, int a3) {
    // enumerate by total order, then a1 descending, then a2 descending
    static const auto table = [] {
        std::array<int, 64> t{};
        t.fill(-1);
        int n = 0;
        for (int o = 0; o <= 3; ++o)
            for (int a = o; a >= 0; --a)
                for (int b = o - a; b >= 0; --b) t[a * 16 + b * 4 + (o - a - b)] = n++;
        return t;
    }();
    return table[a1 * 16 + a2 * 4 + a3];
}

GeometryCoeffs geometry_coeffs(const Spectral& sp, const Surface& eta, const Surface& eta_t) {
    const Grid& g = sp.grid();
    GeometryCoeffs r;
    r.etabar = extend(sp, eta);
    CField eh = sp.forward_s(eta);
    for (int o = 0; o <= 3; ++o)
        for (int a = o; a >= 0; --a)
            for (int b = o - a; b >= 0; --b) {
                int c = o - a - b;
                r.E[multi_index(a, b, c)] = extension_derivative(sp, eh, a, b, c);
            }
    CField th = sp.forward_s(eta_t);
    r.Et[0] = extension_derivative(sp, th, 0, 0, 0);
    r.Et[1] = extension_derivative(sp, th, 1, 0, 0);
    r.Et[2] = extension_derivative(sp, th, 0, 1, 0);
    r.Et[3] = extension_derivative(sp, th, 0, 0, 1);
    r.etabar_t = r.Et[0];

    const std::size_t n = g.size();
    r.alpha.resize(n); r.beta.resize(n); r.J.resize(n); r.Jinv.resize(n);
    r.xi31.resize(n); r.xi32.resize(n); r.xi33.resize(n);
    const Field& E0 = r.E[multi_index(0, 0, 0)];
    const Field& E1 = r.E[multi_index(1, 0, 0)];
    const Field& E2 = r.E[multi_index(0, 1, 0)];
    const Field& E3 = r.E[multi_index(0, 0, 1)];
    for (std::size_t i = 0; i < n; ++i) {
        double s = 1 + g.y(int(i % g.nz)) / g.b;
        r.alpha[i] = s * E1[i];
        r.beta[i] = s * E2[i];
        r.J[i] = 1 + E0[i] / g.b + E3[i] * s;
        if (!(r.J[i] > 0))
            throw Error(ErrorKind::Jacobian, "geometry_coeffs: J <= 0, flattening map is singular");
        r.Jinv[i] = 1 / r.J[i];
        r.xi31[i] = -r.Jinv[i] * r.alpha[i];
        r.xi32[i] = -r.Jinv[i] * r.beta[i];
        r.xi33[i] = r.Jinv[i];
    }
    return r;
}

namespace {

Jet ejet(const GeometryCoeffs& G, std::size_t i, int a1, int a2, int a3) {
    auto e = [&](int p, int q, int s) { return G.E[multi_index(a1 + p, a2 + q, a3 + s)][i]; };
    Jet j;
    j.v = e(0, 0, 0);
    j.g[0] = e(1, 0, 0); j.g[1] = e(0, 1, 0); j.g[2] = e(0, 0, 1);
    j.H[0] = e(2, 0, 0); j.H[1] = e(0, 2, 0); j.H[2] = e(0, 0, 2);
    j.H[3] = e(1, 1, 0); j.H[4] = e(1, 0, 1); j.H[5] = e(0, 1, 1);
    return j;
}

}  // namespace

Jet GeometryCoeffs::s_jet(const Grid& g, std::size_t i) const {
    Jet s;
    s.v = 1 + g.y(int(i % g.nz)) / g.b;
    s.g[2] = 1 / g.b;
    return s;
}

Jet GeometryCoeffs::alpha_jet(const Grid& g, std::size_t i) const { return s_jet(g, i) * ejet(*this, i, 1, 0, 0); }

Jet GeometryCoeffs::beta_jet(const Grid& g, std::size_t i) const { return s_jet(g, i) * ejet(*this, i, 0, 1, 0); }

Jet GeometryCoeffs::J_jet(const Grid& g, std::size_t i) const {
    return 1.0 + ejet(*this, i, 0, 0, 0) / g.b + s_jet(g, i) * ejet(*this, i, 0, 0, 1);
}

Jet GeometryCoeffs::etat_jet(std::size_t i) const {
    Jet j;
    j.v = Et[0][i];
    for (int k = 0; k < 3; ++k) j.g[k] = Et[k + 1][i];
    for (double& x : j.H) x = std::numeric_limits<double>::quiet_NaN();
    return j;
}

JacobianBounds jacobian_bounds(const GeometryCoeffs& g) {
    auto [lo, hi] = std::minmax_element(g.J.begin(), g.J.end());
    return {*lo, *hi};
}

Vec3 velocity_from_flat(const Vec3& v, const GeometryCoeffs& g) {
    Vec3 u = v;
    for (std::size_t i = 0; i < v[0].size(); ++i) {
        double ji = g.Jinv[i];
        u[0][i] = ji * v[0][i];
        u[1][i] = ji * v[1][i];
        u[2][i] = ji * g.alpha[i] * v[0][i] + ji * g.beta[i] * v[1][i] + v[2][i];
    }
    return u;
}

Vec3 velocity_to_flat(const Vec3& u, const GeometryCoeffs& g) {
    Vec3 v = u;
    for (std::size_t i = 0; i < u[0].size(); ++i) {
        v[0][i] = g.J[i] * u[0][i];
        v[1][i] = g.J[i] * u[1][i];
        v[2][i] = u[2][i] - g.alpha[i] * u[0][i] - g.beta[i] * u[1][i];
    }
    return v;
}

Field log_transform(const Field& c, double c_hat) {
    if (!(c_hat > 0)) throw Error(ErrorKind::Config, "log_transform: c_hat must be positive");
    Field r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!(c[i] > 0)) throw Error(ErrorKind::Numeric, "log_transform: c must be positive");
        r[i] = -std::log(c[i]) + std::log(c_hat);
    }
    return r;
}

Field inverse_log_transform(const Field& h, double c_hat) {
    Field r(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) r[i] = c_hat * std::exp(-h[i]);
    return r;
}

Field theta3(const Grid& g, const Field& etabar) {
    Field r(etabar.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        double y = g.y(int(i % g.nz));
        r[i] = etabar[i] + y * (1 + etabar[i] / g.b);
    }
    return r;
}

Field compose_with_theta(const Spectral& sp, const Callback& f, const Surface& eta, double t) {
    const Grid& g = sp.grid();
    Field z = theta3(g, extend(sp, eta).values);
    Field r(g.size());
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            for (int k = 0; k < g.nz; ++k) {
                std::size_t i = g.idx(i1, i2, k);
                r[i] = f(g.x1(i1), g.x2(i2), z[i], t);
            }
    return r;
}

Derivs derivs(const Spectral& sp, const Field& f) {
    const Grid& g = sp.grid();
    Derivs r;
    r.f = f;
    CField c = sp.forward(f);
    r.d1 = sp.apply(c, 1, 0);
    r.d2 = sp.apply(c, 0, 1);
    r.d11 = sp.apply(c, 2, 0);
    r.d22 = sp.apply(c, 0, 2);
    r.d12 = sp.apply(c, 1, 1);
    r.d3 = d_vertical(g, f, 1);
    r.d33 = d_vertical(g, f, 2);
    CField c3 = sp.forward(r.d3);
    r.d13 = sp.apply(c3, 1, 0);
    r.d23 = sp.apply(c3, 0, 1);
    return r;
}

Jet Derivs::at(std::size_t i) const {
    Jet j;
    j.v = f[i];
    j.g[0] = d1[i]; j.g[1] = d2[i]; j.g[2] = d3[i];
    j.H[0] = d11[i]; j.H[1] = d22[i]; j.H[2] = d33[i];
    j.H[3] = d12[i]; j.H[4] = d13[i]; j.H[5] = d23[i];
    return j;
}

}  // namespace cns
