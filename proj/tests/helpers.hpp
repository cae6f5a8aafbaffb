#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "cns/harmonic.hpp"
#include "cns/solvers.hpp"
#include "cns/terms.hpp"

namespace testutil {

inline cns::Field random_field(const cns::Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> n;
    cns::Field f(g.size());
    for (double& x : f) x = n(rng);
    return f;
}

template <class F>
cns::Field sample(const cns::Grid& g, F&& f) {
    cns::Field out(g.size());
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            for (int k = 0; k < g.nz; ++k) out[g.idx(i1, i2, k)] = f(g.x1(i1), g.x2(i2), g.y(k));
    return out;
}

template <class F>
cns::Surface sample_s(const cns::Grid& g, F&& f) {
    cns::Surface out(g.ncol());
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2) out[i1 * g.n2 + i2] = f(g.x1(i1), g.x2(i2));
    return out;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("cns_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

// ||P(grad xi~) - grad H(xi) ||_L2 for a two-mode xi and a non-harmonic extension xi~
inline double projection_identity_error(int n, int nz) {
    cns::Grid g(n, n, nz, 2 * M_PI, 2 * M_PI, 1.0);
    cns::Spectral sp(g);
    const double b = g.b;
    auto xi = [](double x1, double x2) { return 0.1 * std::cos(x1) + 0.05 * std::sin(2 * x2 + 0.3); };
    cns::Field ext = sample(g, [&](double x1, double x2, double y) {
        double s = 1 + y / b;
        return xi(x1, x2) * s * s * std::exp(y);
    });
    cns::Vec3 p = cns::leray_projection(sp, cns::grad(sp, ext));
    using cns::cosh_profile;
    cns::Vec3 exact{{sample(g, [&](double x1, double, double y) { return -0.1 * std::sin(x1) * cosh_profile(1, y, b, 0); }),
                     sample(g, [&](double, double x2, double y) { return 0.1 * std::cos(2 * x2 + 0.3) * cosh_profile(2, y, b, 0); }),
                     sample(g, [&](double x1, double x2, double y) {
                         return 0.1 * std::cos(x1) * cosh_profile(1, y, b, 1) +
                                0.05 * std::sin(2 * x2 + 0.3) * cosh_profile(2, y, b, 1);
                     })}};
    double e2 = 0;
    for (int c = 0; c < 3; ++c) {
        cns::Field d(g.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = p[c][i] - exact[c][i];
        e2 += std::pow(cns::l2_norm(g, d), 2);
    }
    return std::sqrt(e2);
}

}  // namespace testutil
