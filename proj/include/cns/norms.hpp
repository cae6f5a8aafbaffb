#pragma once

#include "cns/spectral.hpp"

namespace cns {

// discrete H^m(Omega): sum over |gamma| <= m of the L2 norms of all mixed derivatives
double sobolev_norm(const Spectral& sp, const Field& f, int m);
// squared version, avoids the square root in composite norms
double sobolev_norm_sq(const Spectral& sp, const Field& f, int m);
// Fourier multiplier (1+|k|^2)^s on Gamma
double surface_fractional_norm(const Spectral& sp, const Surface& eta, double s);
// multiplier norm applied level by level, trapezoid in y (used for dual-space surrogates)
double multiplier_norm(const Spectral& sp, const Field& f, double s);

}  // namespace cns
