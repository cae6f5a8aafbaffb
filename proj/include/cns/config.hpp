#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "cns/picard.hpp"

namespace cns {

struct RunConfig {
    std::string mode = "simulate";  // simulate | verify-transform | mms | energy-report | gen-data
    std::string out_dir;

    int n1 = 0, n2 = 0, nz = 0;
    double l1 = 6.283185307179586, l2 = 6.283185307179586, b = 1.0;

    double gamma = 1, sigma = 1, c_hat = 1;
    std::string potential = "linear";  // linear: Phi = scale * x3; zero
    double potential_scale = 1.0;

    double dt = 1e-3, T = 1.0;
    int max_sweeps = 30;
    double diff_tol = 1e-8, eps0 = 15.0, compat_tol = 1e-6, inner_tol = 1e-14;

    std::string data_source = "random";  // random | files
    std::uint64_t seed = 7;
    double amplitude = 0.05;
    std::string data_dir;

    int fields_every = 0;  // 0: initial and final levels only
    bool energy_csv = true, convergence_csv = true;

    double c_cal = 5.0;  // constant of the theorem-shape estimate, calibrated on coarse grids

    std::string mms_solver = "all";  // parabolic | stokes | stationary | all
    std::vector<int> mms_nz{17, 33, 65};
    std::vector<double> mms_dt{4e-3, 2e-3, 1e-3};

    std::vector<int> oracle_nz{33, 65, 129};
    int oracle_n = 16;
    double oracle_amplitude = 0.05;

    Grid grid() const { return Grid(n1, n2, nz, l1, l2, b); }
    PicardConfig picard() const;
};

const std::vector<std::string>& run_modes();

// throws Error(Config) naming the offending key
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);  // "-" reads stdin
nlohmann::json serialize(const RunConfig& c);

// "time.dt=1e-2": the value is read as JSON when it parses, else as a string
void apply_override(nlohmann::json& j, const std::string& assignment);

}  // namespace cns
