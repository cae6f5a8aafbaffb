#pragma once

#include "cns/transform.hpp"

namespace cns {

struct RhsBundle {
    Field F4, F5;
    Vec3 F;
    Surface G1, G2, G3, G4;
};

// w_lag enters only the second-derivative chemotaxis blocks of the first line
Field eval_F4(const Spectral& sp, const Field& w_lag, const Field& w, const Field& h, const Vec3& v,
              const GeometryCoeffs& g);
Field eval_F5(const Spectral& sp, const Field& h, const Vec3& v, const GeometryCoeffs& g);
Vec3 eval_F123(const Spectral& sp, const Field& w, const Vec3& v, const Vec3& grad_q, const Field& phi,
               const GeometryCoeffs& g);

Surface eval_G1(const Spectral& sp, const Vec3& v, const Surface& eta, const GeometryCoeffs& g);
Surface eval_G2(const Spectral& sp, const Vec3& v, const Surface& eta, const GeometryCoeffs& g);
// sigma scales the curvature difference
Surface eval_G3(const Spectral& sp, const Vec3& v, const Surface& eta, const GeometryCoeffs& g, double sigma);
Surface eval_G4(const Spectral& sp, const Field& w, const Field& h, const Surface& eta, const GeometryCoeffs& g);

// sigma * [div(grad eta / sqrt(1+|grad eta|^2)) - lap eta]
Surface curvature_difference(const Spectral& sp, const Surface& eta, double sigma);

// gradient with spectral horizontal and finite-difference vertical parts
Vec3 grad(const Spectral& sp, const Field& f);
Field divergence(const Spectral& sp, const Vec3& v);

}  // namespace cns
