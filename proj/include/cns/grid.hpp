#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace cns {

using Field = std::vector<double>;  // (i1*N2+i2)*Nz+k, y fastest
using Surface = std::vector<double>;  // i1*N2+i2

struct Vec3 {
    Field c[3];
    Field& operator[](int i) { return c[i]; }
    const Field& operator[](int i) const { return c[i]; }
};

struct Grid {
    int n1 = 16, n2 = 16, nz = 17;
    double l1 = 2 * M_PI, l2 = 2 * M_PI, b = 1.0;

    Grid() = default;
    Grid(int n1_, int n2_, int nz_, double l1_, double l2_, double b_)
        : n1(n1_), n2(n2_), nz(nz_), l1(l1_), l2(l2_), b(b_) {
        validate();
    }

    void validate() const;

    std::size_t ncol() const { return std::size_t(n1) * n2; }
    std::size_t size() const { return ncol() * nz; }
    std::size_t idx(int i1, int i2, int k) const {
        return (std::size_t(i1) * n2 + i2) * nz + k;
    }
    double dz() const { return b / (nz - 1); }
    double y(int k) const { return -b + k * dz(); }
    double x1(int i) const { return i * l1 / n1; }
    double x2(int i) const { return i * l2 / n2; }
    double area() const { return l1 * l2; }
    double volume() const { return l1 * l2 * b; }

    Field zeros() const { return Field(size(), 0.0); }
    Surface zeros_s() const { return Surface(ncol(), 0.0); }
    Vec3 zeros_v() const { return Vec3{{zeros(), zeros(), zeros()}}; }

    bool operator==(const Grid& o) const {
        return n1 == o.n1 && n2 == o.n2 && nz == o.nz && l1 == o.l1 && l2 == o.l2 && b == o.b;
    }
};

// node/coefficient list of a vertical stencil at node j
struct Stencil {
    int n = 0;
    int node[5] = {0, 0, 0, 0, 0};
    double c[5] = {0, 0, 0, 0, 0};
};
Stencil d1_stencil(int nz, int j, double h);
Stencil d2_stencil(int nz, int j, double h);

// vertical finite differences, second order, one-sided at both ends
Field d_vertical(const Grid& g, const Field& f, int order);
// value of the top row (y = 0) and bottom row (y = -b)
Surface top(const Grid& g, const Field& f);
Surface bottom(const Grid& g, const Field& f);

// trapezoid in y, mean x area horizontally
double integrate(const Grid& g, const Field& f);
double integrate_s(const Grid& g, const Surface& f);
double l2_norm(const Grid& g, const Field& f);
double l2_norm_s(const Grid& g, const Surface& f);
double max_abs(const std::vector<double>& f);

void check_finite(const std::vector<double>& f, const char* what);

// CNSF1 / CNSS1 files
void write_field(const std::string& path, const Grid& g, const Field& f);
Field read_field(const std::string& path, Grid& g);
void write_surface(const std::string& path, const Grid& g, const Surface& f);
Surface read_surface(const std::string& path, Grid& g);

}  // namespace cns
