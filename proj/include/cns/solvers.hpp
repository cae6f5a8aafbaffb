#pragma once

#include <vector>

#include "cns/banded.hpp"
#include "cns/spectral.hpp"

namespace cns {

// Backward-Euler step of the parabolic pair
//   (I - dt lap) w - dt div(a grad h) = w_prev + dt f4
//   (I - dt lap) h - dt w            = h_prev + dt f5
// with d3 w + a d3 h = g4, h = 0 on Gamma and w = 0, d3 h = 0 on S_B.
// The horizontal mean of a is treated implicitly per mode, the rest by sweeps.
class ParabolicStepper {
public:
    ParabolicStepper(const Spectral& sp, double dt, double tol = 1e-10, int max_sweeps = 200);

    struct Result {
        Field w, h;
        int sweeps = 0;
        double change = 0;
    };
    Result step(const Field& w_prev, const Field& h_prev, const Field& a, const Field& f4, const Field& f5,
                const Surface& g4) const;

private:
    const Spectral& sp_;
    double dt_, tol_;
    int max_sweeps_;
};

struct ParabolicProblem {
    // one entry per time level 0..Nt; a, f4, f5, g4 at level n drive the step into level n
    std::vector<Field> a, f4, f5;
    std::vector<Surface> g4;
    Field w0, h0;
    double dt = 1e-3;
};
struct ParabolicTrajectory {
    std::vector<Field> w, h;
    int max_sweeps_used = 0;
};
// d3 f on Gamma (at_top) or S_B with the stencil of the parabolic boundary rows
Surface flux_derivative(const Grid& g, const Field& f, bool at_top);

ParabolicTrajectory solve_parabolic_pair(const Spectral& sp, const ParabolicProblem& p);
// residual of d3 w0 + a d3 h0 = g4 and h0 = 0 on Gamma, w0 = 0 and d3 h0 = 0 on S_B (max abs)
double parabolic_compatibility(const Spectral& sp, const Field& w0, const Field& h0, const Field& a,
                               const Surface& g4);

struct StokesState {
    Vec3 v;
    Field q;
    Surface eta;
};

// Backward-Euler step of the free-surface Stokes problem; per-mode factorizations are cached.
class StokesStepper {
public:
    StokesStepper(const Spectral& sp, double dt, double gamma, double sigma);
    // force = f - w grad(phi) at the new time level
    StokesState step(const StokesState& prev, const Vec3& force, const Surface& g1, const Surface& g2,
                     const Surface& g3) const;
    double dt() const { return dt_; }

private:
    const Spectral& sp_;
    double dt_, gamma_, sigma_;
    std::vector<BandLU> lu_;
};

// divergence the Stokes solvers enforce: at vertical midpoints, row nz-1 left at zero
Field stokes_divergence(const Spectral& sp, const Vec3& v);

struct StationaryStokes {
    Vec3 omega;
    Field q;
};
// -lap w + grad q = F, div w = 0, tangential stresses g1, g2 and q - 2 d3 w3 = g3 on Gamma, w = 0 on S_B
StationaryStokes solve_stationary_stokes(const Spectral& sp, const Vec3& F, const Surface& g1, const Surface& g2,
                                         const Surface& g3);

// u - grad rho with div grad rho = div u, rho = 0 on Gamma, d3 rho = u3 on S_B
Vec3 leray_projection(const Spectral& sp, const Vec3& u);

// 1/2 int (dj vi + di vj)(dj ui + di uj)
double korn_form(const Spectral& sp, const Vec3& v, const Vec3& u);

}  // namespace cns
