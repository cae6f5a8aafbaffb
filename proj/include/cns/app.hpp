#pragma once

#include <string>

#include "cns/config.hpp"

namespace cns {

// initial data named by the config: generated from (seed, amplitude) or read from data.dir
InitialData load_initial_data(const Spectral& sp, const RunConfig& cfg);

// w0/h0/v0_{1,2,3}.cnsf and eta0.cnss
void write_initial_data(const std::string& dir, const Grid& g, const InitialData& d);

void write_compatibility_csv(const std::string& path, const CompatibilityReport& r);

// runs cfg.mode, writes artifacts into cfg.out_dir; on failure writes error.json there
// returns the process exit status (0, 2 config, 3 compatibility, 4 no convergence, 5 Jacobian)
int run_mode(const RunConfig& cfg);

// machine-readable failure record
void write_error_json(const std::string& dir, const Error& e);

}  // namespace cns
