#pragma once

#include <array>
#include <functional>

#include "cns/harmonic.hpp"
#include "cns/jet.hpp"

namespace cns {

// derivatives of etabar up to third order, indexed by multi_index(a1,a2,a3)
int multi_index(int a1, int a2, int a3);
constexpr int kGeomDerivs = 20;

struct GeometryCoeffs {
    Field alpha, beta, J, Jinv;
    Field xi31, xi32, xi33;  // -J^-1 alpha, -J^-1 beta, J^-1 (rows 1,2 are unit rows)
    HarmonicExtension etabar;
    Field etabar_t;
    std::array<Field, kGeomDerivs> E;  // d^gamma etabar
    std::array<Field, 4> Et;           // etabar_t, d1, d2, d3

    // jets at node i
    Jet s_jet(const Grid& g, std::size_t i) const;
    Jet alpha_jet(const Grid& g, std::size_t i) const;
    Jet beta_jet(const Grid& g, std::size_t i) const;
    Jet J_jet(const Grid& g, std::size_t i) const;
    Jet etat_jet(std::size_t i) const;
};

GeometryCoeffs geometry_coeffs(const Spectral& sp, const Surface& eta, const Surface& eta_t);

struct JacobianBounds {
    double jmin = 0, jmax = 0;
};
JacobianBounds jacobian_bounds(const GeometryCoeffs& g);

// u = (J^-1 v1, J^-1 v2, J^-1 alpha v1 + J^-1 beta v2 + v3) and its inverse
Vec3 velocity_from_flat(const Vec3& v, const GeometryCoeffs& g);
Vec3 velocity_to_flat(const Vec3& u, const GeometryCoeffs& g);

Field log_transform(const Field& c, double c_hat);
Field inverse_log_transform(const Field& h, double c_hat);

using Callback = std::function<double(double x1, double x2, double z, double t)>;
// samples f(theta(x1,x2,y,t), t), theta3 = etabar + y(1 + etabar/b)
Field compose_with_theta(const Spectral& sp, const Callback& f, const Surface& eta, double t);
Field theta3(const Grid& g, const Field& etabar);

// values of a field at nodes, with derivatives from the grid
struct Derivs {
    Field f, d1, d2, d3, d11, d22, d33, d12, d13, d23;
    Jet at(std::size_t i) const;
};
Derivs derivs(const Spectral& sp, const Field& f);

}  // namespace cns
