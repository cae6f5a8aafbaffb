#include "cns/terms.hpp"

#include <cmath>

#include "cns/parallel.hpp"

namespace cns {

namespace {

struct Geo {
    Jet s, al, be, J, Ji, et;
};

Geo geo_at(const Grid& gr, const GeometryCoeffs& g, std::size_t i) {
    Geo r;
    r.s = g.s_jet(gr, i);
    r.al = g.alpha_jet(gr, i);
    r.be = g.beta_jet(gr, i);
    r.J = g.J_jet(gr, i);
    r.Ji = inv(r.J);
    r.et = g.etat_jet(i);
    return r;
}

Jet d1(const Jet& a) { return d(a, 0); }
Jet d2(const Jet& a) { return d(a, 1); }
Jet d3(const Jet& a) { return d(a, 2); }

// physical derivative
Jet Dp(const Geo& G, const Jet& f, int j) {
    if (j == 0) return d1(f) - G.Ji * G.al * d3(f);
    if (j == 1) return d2(f) - G.Ji * G.be * d3(f);
    return G.Ji * d3(f);
}

template <class K>
void for_nodes(const Grid& g, K&& k) {
    const int nz = g.nz;
    parallel_for(int(g.ncol()), [&](int c) {
        for (int z = 0; z < nz; ++z) k(std::size_t(c) * nz + z);
    });
}

template <class K>
void for_top(const Grid& g, K&& k) {
    parallel_for(int(g.ncol()), [&](int c) { k(std::size_t(c), std::size_t(c) * g.nz + g.nz - 1); });
}

}  // namespace

Vec3 grad(const Spectral& sp, const Field& f) {
    CField c = sp.forward(f);
    return Vec3{{sp.apply(c, 1, 0), sp.apply(c, 0, 1), d_vertical(sp.grid(), f, 1)}};
}

Field divergence(const Spectral& sp, const Vec3& v) {
    Field a = sp.dh(v[0], 1, 0), b = sp.dh(v[1], 0, 1), c = d_vertical(sp.grid(), v[2], 1);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i] + c[i];
    return a;
}

Field eval_F4(const Spectral& sp, const Field& w_lag, const Field& w, const Field& h, const Vec3& v,
              const GeometryCoeffs& g) {
    const Grid& gr = sp.grid();
    Derivs W = derivs(sp, w), WL = derivs(sp, w_lag), Hd = derivs(sp, h);
    Field out(gr.size());
    for_nodes(gr, [&](std::size_t i) {
        Geo G = geo_at(gr, g, i);
        const Jet &al = G.al, &be = G.be, &Ji = G.Ji;
        Jet wj = W.at(i), wl = WL.at(i), hj = Hd.at(i);
        double v1 = v[0][i], v2 = v[1][i], v3 = v[2][i];
        double w0 = wj.v, l0 = wl.v;
        double w1 = wj.g[0], w2 = wj.g[1], w3 = wj.g[2];
        double h1 = hj.g[0], h2 = hj.g[1], h3 = hj.g[2];
        double A = Ji.v * Ji.v * (al.v * al.v + be.v * be.v + 1) - 1;
        double ja1 = d1(Ji * al).v, jb2 = d2(Ji * be).v;
        double ja3 = d3(Ji * al).v, jb3 = d3(Ji * be).v, ji3 = d3(Ji).v;
        double r = A * (wj.h(2, 2) + wl.g[2] * h3 + l0 * hj.h(2, 2))
                   - 2 * Ji.v * al.v * (wj.h(0, 2) + l0 * hj.h(0, 2))
                   - 2 * Ji.v * be.v * (wj.h(1, 2) + l0 * hj.h(1, 2));
        r += -Ji.v * v1 * (w1 - Ji.v * al.v * w3) - Ji.v * v2 * (w2 - Ji.v * be.v * w3)
             - Ji.v * (Ji.v * al.v * v1 + Ji.v * be.v * v2 + v3) * w3;
        r += -ja1 * w3 - jb2 * w3 + Ji.v * al.v * ja3 * w3 + Ji.v * be.v * jb3 * w3;
        r += -Ji.v * al.v * (w1 * h3 + w3 * h1) - Ji.v * be.v * (w2 * h3 + w3 * h2) - w0 * ja1 * h3;
        r += -w0 * jb2 * h3 + w0 * Ji.v * al.v * ja3 * h3 + w0 * Ji.v * be.v * jb3 * h3 + Ji.v * ji3 * w3;
        r += w0 * Ji.v * ji3 * h3;
        r += Ji.v * w3 * G.s.v * G.et.v;
        out[i] = r;
    });
    return out;
}

Field eval_F5(const Spectral& sp, const Field& h, const Vec3& v, const GeometryCoeffs& g) {
    const Grid& gr = sp.grid();
    Derivs Hd = derivs(sp, h);
    Field out(gr.size());
    for_nodes(gr, [&](std::size_t i) {
        Geo G = geo_at(gr, g, i);
        const Jet &al = G.al, &be = G.be, &Ji = G.Ji;
        Jet hj = Hd.at(i);
        double v1 = v[0][i], v2 = v[1][i], v3 = v[2][i];
        double h1 = hj.g[0], h2 = hj.g[1], h3 = hj.g[2];
        double ji = Ji.v;
        double A = ji * ji * (al.v * al.v + be.v * be.v + 1) - 1;
        double r = A * hj.h(2, 2) - 2 * ji * al.v * hj.h(0, 2) - 2 * ji * be.v * hj.h(1, 2);
        r += -ji * v1 * (h1 - ji * al.v * h3) - ji * v2 * (h2 - ji * be.v * h3)
             - ji * (ji * al.v * v1 + ji * be.v * v2 + v3) * h3;
        r += -d1(Ji * al).v * h3 - d2(Ji * be).v * h3 + ji * al.v * d3(Ji * al).v * h3
             + ji * be.v * d3(Ji * be).v * h3;
        double p1 = h1 - ji * al.v * h3, p2 = h2 - ji * be.v * h3;
        r += -p1 * p1 - p2 * p2 - ji * ji * h3 * h3 + ji * d3(Ji).v * h3;
        r += ji * h3 * G.s.v * G.et.v;
        out[i] = r;
    });
    return out;
}

Vec3 eval_F123(const Spectral& sp, const Field& w, const Vec3& v, const Vec3& grad_q, const Field& phi,
               const GeometryCoeffs& g) {
    const Grid& gr = sp.grid();
    Derivs V[3] = {derivs(sp, v[0]), derivs(sp, v[1]), derivs(sp, v[2])};
    Vec3 gphi = grad(sp, phi);
    Vec3 out = gr.zeros_v();
    const double b = gr.b;
    for_nodes(gr, [&](std::size_t i) {
        Geo G = geo_at(gr, g, i);
        const Jet &al = G.al, &be = G.be, &Ji = G.Ji, &J = G.J, &s = G.s, &et = G.et;
        Jet v1 = V[0].at(i), v2 = V[1].at(i), v3 = V[2].at(i);
        double w0 = w[i];
        double q[3] = {grad_q[0][i], grad_q[1][i], grad_q[2][i]};
        double ph[3] = {gphi[0][i], gphi[1][i], gphi[2][i]};
        Jet Ji2 = Ji * Ji;
        double A = Ji2.v * (al.v * al.v + be.v * be.v + 1) - 1;
        Jet j3 = d3(Ji);
        // horizontal components; ax = 0 or 1 selects the substitution
        for (int ax = 0; ax < 2; ++ax) {
            const Jet& Vc = ax == 0 ? v1 : v2;
            const Jet& a = ax == 0 ? al : be;
            double r = A * Vc.h(2, 2) - 2 * Ji.v * al.v * Vc.h(0, 2) - 2 * Ji.v * be.v * Vc.h(1, 2);
            r += 2 * J.v * d1(Ji).v * Vc.g[0] + J.v * Ji.h(0, 0) * Vc.v + 2 * J.v * d2(Ji).v * Vc.g[1]
                 + J.v * Ji.h(1, 1) * Vc.v + d3(Ji * j3 * Vc).v;
            r += d3(Ji2).v * Vc.g[2] - J.v * d1(al * Ji * Vc * j3).v - J.v * d1(al * Ji2).v * Vc.g[2]
                 - J.v * d2(be * Ji * Vc * j3).v;
            r += -J.v * d2(be * Ji2).v * Vc.g[2] - al.v * d3(Vc * d1(Ji)).v - al.v * j3.v * Vc.g[0]
                 - be.v * d3(Vc * d2(Ji)).v - be.v * j3.v * Vc.g[1];
            r += al.v * d3(Ji * al * Vc * j3).v + al.v * d3(Ji2 * al).v * Vc.g[2]
                 + be.v * d3(Ji * be * Vc * j3).v + be.v * d3(Ji2 * be).v * Vc.g[2];
            Jet jv = Ji * Vc;
            r += -v1.v * d1(jv).v - v2.v * d2(jv).v - v3.v * d3(jv).v;
            r += Ji.v * Vc.v * (et.v / b + et.g[2] * s.v) + d3(jv).v * s.v * et.v;
            r += w0 * a.v * ph[2] + w0 * (1 - J.v) * ph[ax] + a.v * q[2] + (1 - J.v) * q[ax];
            out[ax][i] = r;
        }
        // vertical component
        Jet c = Ji * j3 - d1(Ji * al) - d2(Ji * be) + Ji * al * d3(Ji * al) + Ji * be * d3(Ji * be);
        double r = A * v3.h(2, 2) - 2 * Ji.v * al.v * v3.h(0, 2) - 2 * Ji.v * be.v * v3.h(1, 2)
                   + c.v * v3.g[2];
        auto Lp = [&](const Jet& f) {
            double acc = 0;
            for (int j = 0; j < 3; ++j) acc += Dp(G, Dp(G, f, j), j).v;
            return acc;
        };
        auto gdot = [&](const Jet& x, const Jet& y) {
            double acc = 0;
            for (int j = 0; j < 3; ++j) acc += Dp(G, x, j).v * Dp(G, y, j).v;
            return acc;
        };
        Jet f1 = Ji * v1, f2 = Ji * v2;
        r += f1.v * Lp(al) + 2 * gdot(al, f1) + f2.v * Lp(be) + 2 * gdot(be, f2);
        r += -Ji.v * (v1.v * v3.g[0] + v2.v * v3.g[1] + v3.v * v3.g[2]);
        r += -Ji2.v * (v1.v * v1.v * al.g[0] + v1.v * v2.v * (be.g[0] + al.g[1]) + v2.v * v2.v * be.g[1]
                       + v1.v * v3.v * al.g[2] + v2.v * v3.v * be.g[2]);
        r += Ji.v * (v1.v * Ji.v * al.g[2] + v2.v * Ji.v * be.g[2] + v3.g[2]) * s.v * et.v
             - Ji.v * v1.v * s.v * et.g[0] - Ji.v * v2.v * s.v * et.g[1];
        double m = 1 - Ji.v * (al.v * al.v + be.v * be.v + 1);
        r += w0 * al.v * ph[0] + w0 * be.v * ph[1] + w0 * m * ph[2] + al.v * q[0] + be.v * q[1] + m * q[2];
        out[2][i] = r;
    });
    return out;
}

namespace {

// G1 for ax = 0, G2 for ax = 1 (indices swapped)
Surface eval_Gt(const Spectral& sp, const Vec3& v, const GeometryCoeffs& g, int ax) {
    const Grid& gr = sp.grid();
    Derivs V[3] = {derivs(sp, v[0]), derivs(sp, v[1]), derivs(sp, v[2])};
    Surface out(gr.ncol());
    for_top(gr, [&](std::size_t c, std::size_t i) {
        Geo G = geo_at(gr, g, i);
        const Jet& Ji = G.Ji;
        // a/b: own and other direction; va/vb likewise
        const Jet& a = ax == 0 ? G.al : G.be;
        const Jet& bb = ax == 0 ? G.be : G.al;
        const Jet va = V[ax].at(i), vb = V[1 - ax].at(i), v3 = V[2].at(i);
        auto da = [&](const Jet& f) { return d(f, ax); };
        auto db = [&](const Jet& f) { return d(f, 1 - ax); };
        Jet X = Ji * V[0].at(i) * G.al + Ji * V[1].at(i) * G.be;
        Jet U3 = X + v3;
        Jet ja = Ji * va, jb = Ji * vb;
        double r = 2 * (da(ja) - Ji * a * d3(ja)).v * a.v + (db(ja) - Ji * bb * d3(ja)).v * bb.v
                   + (da(jb) - Ji * a * d3(jb)).v * bb.v + (1 - Ji.v * Ji.v) * va.g[2];
        r += -(Ji.v * va.v * d3(Ji).v + da(X).v) + Ji.v * a.v * d3(U3).v;
        r += (Ji.v * d3(ja).v + da(U3).v - Ji.v * a.v * d3(U3).v) * a.v * a.v;
        r += (Ji.v * d3(jb).v + db(U3).v - Ji.v * bb.v * d3(U3).v) * a.v * bb.v;
        r += -2 * Ji.v * d3(U3).v * a.v;
        out[c] = r;
    });
    return out;
}

}  // namespace

Surface eval_G1(const Spectral& sp, const Vec3& v, const Surface&, const GeometryCoeffs& g) {
    return eval_Gt(sp, v, g, 0);
}

Surface eval_G2(const Spectral& sp, const Vec3& v, const Surface&, const GeometryCoeffs& g) {
    return eval_Gt(sp, v, g, 1);
}

Surface curvature_difference(const Spectral& sp, const Surface& eta, double sigma) {
    CField c = sp.forward_s(eta);
    Surface e1 = sp.apply_s(c, 1, 0), e2 = sp.apply_s(c, 0, 1), lap = sp.apply_s(c, 2, 0);
    Surface l2 = sp.apply_s(c, 0, 2);
    for (std::size_t i = 0; i < eta.size(); ++i) {
        double q = 1 / std::sqrt(1 + e1[i] * e1[i] + e2[i] * e2[i]);
        e1[i] *= q;
        e2[i] *= q;
        lap[i] += l2[i];
    }
    Surface div = sp.dh_s(e1, 1, 0), d2 = sp.dh_s(e2, 0, 1);
    for (std::size_t i = 0; i < eta.size(); ++i) div[i] = sigma * (div[i] + d2[i] - lap[i]);
    return div;
}

Surface eval_G3(const Spectral& sp, const Vec3& v, const Surface& eta, const GeometryCoeffs& g, double sigma) {
    const Grid& gr = sp.grid();
    Derivs V[3] = {derivs(sp, v[0]), derivs(sp, v[1]), derivs(sp, v[2])};
    Surface out = curvature_difference(sp, eta, sigma);
    for_top(gr, [&](std::size_t c, std::size_t i) {
        Geo G = geo_at(gr, g, i);
        const Jet &al = G.al, &be = G.be, &Ji = G.Ji;
        Jet v1 = V[0].at(i), v2 = V[1].at(i), v3 = V[2].at(i);
        Jet j1 = Ji * v1, j2 = Ji * v2;
        Jet X = j1 * al + j2 * be, U3 = X + v3;
        double a = al.v, bv = be.v, ji = Ji.v, u3 = d3(U3).v;
        double P = -2 * (d1(j1).v - ji * a * d3(j1).v) * a * a - 2 * (d2(j2).v - ji * bv * d3(j2).v) * bv * bv;
        P += -2 * (d2(j1).v - ji * bv * d3(j1).v + d1(j2).v - ji * a * d3(j2).v) * a * bv;
        P += (ji * d3(j1).v + d1(U3).v) * a - ji * a * u3 * a;
        P += (ji * d3(j2).v + d2(U3).v) * bv - ji * bv * u3 * bv;
        P += (ji * d3(j1).v + d1(U3).v - ji * a * u3) * a;
        P += (ji * d3(j2).v + d2(U3).v - ji * bv * u3) * bv;
        P += -2 * ji * d3(X).v + 2 * (1 + a * a + bv * bv - ji) * v3.g[2];
        out[c] += P / (1 + a * a + bv * bv);
    });
    return out;
}

Surface eval_G4(const Spectral& sp, const Field& w, const Field& h, const Surface&, const GeometryCoeffs& g) {
    const Grid& gr = sp.grid();
    Field w1 = sp.dh(w, 1, 0), w2 = sp.dh(w, 0, 1), h1 = sp.dh(h, 1, 0), h2 = sp.dh(h, 0, 1);
    Surface out(gr.ncol());
    for_top(gr, [&](std::size_t c, std::size_t i) {
        double a = g.alpha[i], bv = g.beta[i];
        out[c] = g.J[i] / (a * a + bv * bv + 1) * (a * (w1[i] + w[i] * h1[i]) + bv * (w2[i] + w[i] * h2[i]));
    });
    return out;
}

}  // namespace cns
