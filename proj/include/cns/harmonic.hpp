#pragma once

#include "cns/spectral.hpp"

namespace cns {

struct HarmonicExtension {
    Surface source;
    Field values;
};

// Laplace extension with Dirichlet data on Gamma and zero Neumann data on S_B,
// evaluated mode by mode from the cosh profile
HarmonicExtension extend(const Spectral& sp, const Surface& eta);

// d1^a1 d2^a2 dy^a3 of the extension, exact per mode
Field extension_derivative(const Spectral& sp, const CField& eta_hat, int a1, int a2, int a3);

// vertical profile of mode m: d^n/dy^n [cosh(K(y+b))/cosh(Kb)]
double cosh_profile(double K, double y, double b, int n);

struct ExtensionResidual {
    double laplacian_max = 0;
    double bottom_neumann_max = 0;
};
ExtensionResidual extension_residual(const Spectral& sp, const HarmonicExtension& e);

struct NormPair {
    double lhs = 0;
    double rhs = 0;
};
NormPair extension_norm_bound(const Spectral& sp, const Surface& eta, int m);

}  // namespace cns
