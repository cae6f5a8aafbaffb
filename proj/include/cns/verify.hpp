#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cns/picard.hpp"

namespace cns {

// random band-limited data projected onto the compatibility constraints; deterministic in seed
InitialData make_compatible_data(const Spectral& sp, std::uint64_t seed, double amplitude);

// amp e^{rate t} cos(k1 x1 + k2 x2 + phase); k must be a resolved wavenumber of the grid
struct SurfaceMode {
    double amp, k1, k2, phase, rate;
};

// smooth fields on the physical domain, t-dependent
struct ManufacturedCase {
    Callback m, ctilde, p, phi;
    Callback u[3];
    std::vector<SurfaceMode> eta;
    double sigma = 1.0;
};

// max pointwise discrepancy per term group between the evaluators and the oracle
struct ResidualReport {
    std::vector<std::pair<std::string, double>> terms;  // F4, F5, F1, F2, F3, G1, G2, G3, G4
    double get(const std::string& name) const;
};
ResidualReport chain_rule_oracle(const Spectral& sp, const ManufacturedCase& c, double t);

// the smooth case used by the refinement study, and its axis-swapped twin
ManufacturedCase smooth_case(const Grid& g, double eta_amplitude, bool swap_axes = false);
// eta = 0 with fields the grid differentiates exactly
ManufacturedCase flat_case(const Grid& g);

struct ConvergenceTable {
    std::string solver, kind;  // kind: spatial | temporal
    std::vector<double> step;  // h or dt
    std::vector<double> error;
    double order = 0;          // least-squares slope of log error against log step
};
double fitted_order(const std::vector<double>& step, const std::vector<double>& error);

// solver: parabolic | stokes | stationary
ConvergenceTable mms_spatial(const std::string& solver, const std::vector<int>& nz_list);
ConvergenceTable mms_temporal(const std::string& solver, const std::vector<double>& dt_list);
void write_table_csv(const std::string& path, const std::vector<ConvergenceTable>& tables);

}  // namespace cns
