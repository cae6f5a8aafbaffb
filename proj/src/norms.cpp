#include "cns/norms.hpp"

#include <cmath>

#include "cns/error.hpp"

namespace cns {

namespace {

double half_weight(const Spectral& sp, int m) {
    int i2 = m % sp.nh();
    return (i2 == 0 || 2 * i2 == sp.grid().n2) ? 1.0 : 2.0;
}

// trapezoid over y of sum_m w_m |sym_m|^2 |c_mk|^2, scaled to the physical integral
double parseval(const Spectral& sp, const CField& c, const std::vector<double>& sym2) {
    const Grid& g = sp.grid();
    const int nz = g.nz;
    std::vector<double> lev(nz, 0.0);
    for (int m = 0; m < sp.nmodes(); ++m) {
        double w = half_weight(sp, m) * sym2[m];
        if (w == 0) continue;
        for (int k = 0; k < nz; ++k) lev[k] += w * std::norm(c[std::size_t(m) * nz + k]);
    }
    double s = 0.5 * (lev[0] + lev[nz - 1]);
    for (int k = 1; k < nz - 1; ++k) s += lev[k];
    double n = double(g.n1) * g.n2;
    return s * g.dz() * g.area() / (n * n);
}

}  // namespace

double sobolev_norm_sq(const Spectral& sp, const Field& f, int m) {
    if (m < 0 || m > 3) throw Error(ErrorKind::Config, "sobolev_norm: m must be in 0..3");
    const Grid& g = sp.grid();
    if (m >= 3 && g.nz < 4) throw Error(ErrorKind::Config, "sobolev_norm: Nz too small");
    double total = 0;
    Field v = f;
    for (int a3 = 0; a3 <= m; ++a3) {
        if (a3 == 1) v = d_vertical(g, f, 1);
        if (a3 == 2) v = d_vertical(g, f, 2);
        if (a3 == 3) v = d_vertical(g, d_vertical(g, f, 2), 1);
        CField c = sp.forward(v);
        std::vector<double> sym2(sp.nmodes(), 0.0);
        for (int a1 = 0; a1 + a3 <= m; ++a1)
            for (int a2 = 0; a1 + a2 + a3 <= m; ++a2)
                for (int q = 0; q < sp.nmodes(); ++q) sym2[q] += std::norm(sp.symbol(q, a1, a2));
        total += parseval(sp, c, sym2);
    }
    return total;
}

double sobolev_norm(const Spectral& sp, const Field& f, int m) { return std::sqrt(sobolev_norm_sq(sp, f, m)); }

double surface_fractional_norm(const Spectral& sp, const Surface& eta, double s) {
    CField c = sp.forward_s(eta);
    const Grid& g = sp.grid();
    double n = double(g.n1) * g.n2;
    double acc = 0;
    for (int m = 0; m < sp.nmodes(); ++m)
        acc += half_weight(sp, m) * std::pow(1 + sp.ksq(m), s) * std::norm(c[m]);
    return std::sqrt(acc * g.area() / (n * n));
}

double multiplier_norm(const Spectral& sp, const Field& f, double s) {
    CField c = sp.forward(f);
    std::vector<double> sym2(sp.nmodes());
    for (int m = 0; m < sp.nmodes(); ++m) sym2[m] = std::pow(1 + sp.ksq(m), s);
    return std::sqrt(parseval(sp, c, sym2));
}

}  // namespace cns
