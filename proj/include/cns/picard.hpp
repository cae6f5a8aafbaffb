#pragma once

#include <string>
#include <vector>

#include "cns/energy.hpp"
#include "cns/error.hpp"
#include "cns/transform.hpp"

namespace cns {

struct InitialData {
    Field w0, h0;
    Vec3 v0;
    Surface eta0;
};
InitialData zero_data(const Grid& g);

struct PicardConfig {
    double dt = 1e-3, T = 1.0;
    double c_hat = 1, gamma = 1, sigma = 1;
    Callback phi;  // potential on the physical domain; empty means zero
    int max_sweeps = 30;
    double diff_tol = 1e-8;
    double eps0 = 15.0;         // smallness threshold on the data norm, calibrated
    double compat_tol = 1e-6;
    double inner_tol = 1e-14;   // parabolic sweeps, far below diff_tol after H3 amplification
    std::string dump_dir;       // state dump on a Jacobian violation, if set

    int levels() const;
};

struct CompatibilityReport {
    std::vector<std::pair<std::string, double>> residuals;
    double tol = 1e-6;
    bool pass = true;
    double worst() const;
};
CompatibilityReport check_compatibility(const Spectral& sp, const InitialData& d, double tol = 1e-6);

// J = 1 + etabar/b + (1+y/b) d3 etabar, evaluated without the full coefficient set
JacobianBounds jacobian_window(const Spectral& sp, const Surface& eta);

// iterates 1 = 2: a = 0, F = 0, G3 = 0 and G1, G2, G4 - w0 d3 h0 extended as G(0) e^{-t}
Trajectory bootstrap_iterates(const Spectral& sp, const PicardConfig& cfg, const InitialData& d);

// iterate j+1 from j (prev1) and j-1 (prev2, whose density is lagged in F4)
Trajectory picard_step(const Spectral& sp, const PicardConfig& cfg, const InitialData& d, const Trajectory& prev2,
                       const Trajectory& prev1, JacobianBounds* bounds = nullptr);

struct SweepRow {
    int sweep = 0;
    double diff_norm = 0, diff_primal = 0, diff_surrogate = 0;
    double ratio = 0;  // NaN until three differences exist
    double jmin = 0, jmax = 0;
    double iterate_norm = 0, stokes_energy = 0;
};
struct ConvergenceReport {
    std::vector<SweepRow> rows;
    bool converged = false;
};
// carries the partial report so callers can still emit it
class NoConvergenceError : public Error {
public:
    NoConvergenceError(const std::string& m, ConvergenceReport r)
        : Error(ErrorKind::NoConvergence, m), report(std::move(r)) {}
    ConvergenceReport report;
};

void write_convergence_csv(const std::string& path, const ConvergenceReport& r);

struct PicardResult {
    Trajectory traj;
    ConvergenceReport report;
    double data_norm = 0;
};
// throws NoConvergence with the ratio history when max_sweeps is exhausted
PicardResult run(const Spectral& sp, const PicardConfig& cfg, const InitialData& d);

struct PhysicalTrajectory {
    double dt = 0;
    std::vector<Field> m, c, p;
    std::vector<Vec3> u;
    std::vector<Surface> eta;
    double m_min = 0, c_min = 0;
    bool positive = true;  // m >= -1e-12 and c > 0
};
PhysicalTrajectory invert_to_moving_domain(const Spectral& sp, const Trajectory& tr, double c_hat);

}  // namespace cns
