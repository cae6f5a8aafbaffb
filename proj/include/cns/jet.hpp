#pragma once

#include <cmath>
#include <limits>

namespace cns {

// value, gradient and Hessian at a point; Hessian slots 11,22,33,12,13,23
struct Jet {
    double v = 0;
    double g[3] = {0, 0, 0};
    double H[6] = {0, 0, 0, 0, 0, 0};

    static constexpr int hi(int i, int j) {
        if (i == j) return i;
        int a = i < j ? i : j, b = i < j ? j : i;
        return a == 0 ? (b == 1 ? 3 : 4) : 5;
    }
    double h(int i, int j) const { return H[hi(i, j)]; }
};

inline Jet cjet(double c) {
    Jet r;
    r.v = c;
    return r;
}

inline Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v + b.v;
    for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] + b.g[i];
    for (int i = 0; i < 6; ++i) r.H[i] = a.H[i] + b.H[i];
    return r;
}
inline Jet operator-(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v - b.v;
    for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] - b.g[i];
    for (int i = 0; i < 6; ++i) r.H[i] = a.H[i] - b.H[i];
    return r;
}
inline Jet operator-(const Jet& a) { return cjet(0) - a; }
inline Jet operator*(double s, const Jet& a) {
    Jet r;
    r.v = s * a.v;
    for (int i = 0; i < 3; ++i) r.g[i] = s * a.g[i];
    for (int i = 0; i < 6; ++i) r.H[i] = s * a.H[i];
    return r;
}
inline Jet operator*(const Jet& a, double s) { return s * a; }
inline Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r.v += s;
    return r;
}
inline Jet operator+(double s, const Jet& a) { return a + s; }
inline Jet operator-(double s, const Jet& a) { return s + (-a); }
inline Jet operator-(const Jet& a, double s) { return a + (-s); }

inline Jet operator*(const Jet& a, const Jet& b) {
    static constexpr int I[6] = {0, 1, 2, 0, 0, 1}, J[6] = {0, 1, 2, 1, 2, 2};
    Jet r;
    r.v = a.v * b.v;
    for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int s = 0; s < 6; ++s)
        r.H[s] = a.H[s] * b.v + a.v * b.H[s] + a.g[I[s]] * b.g[J[s]] + a.g[J[s]] * b.g[I[s]];
    return r;
}

inline Jet inv(const Jet& a) {
    static constexpr int I[6] = {0, 1, 2, 0, 0, 1}, J[6] = {0, 1, 2, 1, 2, 2};
    Jet r;
    double q = 1.0 / a.v;
    r.v = q;
    for (int i = 0; i < 3; ++i) r.g[i] = -q * q * a.g[i];
    for (int s = 0; s < 6; ++s) r.H[s] = 2 * q * q * q * a.g[I[s]] * a.g[J[s]] - q * q * a.H[s];
    return r;
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }
inline Jet operator/(const Jet& a, double s) { return (1.0 / s) * a; }

// derivative along axis i (0,1,2 = x1,x2,y); second derivatives of the result are unknown
inline Jet d(const Jet& a, int i) {
    Jet r;
    r.v = a.g[i];
    for (int j = 0; j < 3; ++j) r.g[j] = a.h(i, j);
    for (double& x : r.H) x = std::numeric_limits<double>::quiet_NaN();
    return r;
}

}  // namespace cns
