#include "cns/app.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include "cns/energy.hpp"
#include "cns/error.hpp"
#include "cns/verify.hpp"

namespace cns {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Config: return "config";
        case ErrorKind::Compatibility: return "compatibility";
        case ErrorKind::NoConvergence: return "no_convergence";
        case ErrorKind::Jacobian: return "jacobian";
        case ErrorKind::Numeric: return "numeric";
    }
    return "unknown";
}

void write_json(const fs::path& p, const json& j) {
    std::ofstream f(p);
    if (!f) throw Error(ErrorKind::Config, "cannot write " + p.string());
    f << std::setw(2) << j << '\n';
}

// NaN is not JSON
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Field read_matching(const fs::path& p, const Grid& want) {
    Grid g = want;
    Field f = read_field(p.string(), g);
    if (g.n1 != want.n1 || g.n2 != want.n2 || g.nz != want.nz)
        throw Error(ErrorKind::Config, p.string() + ": grid does not match the config grid");
    return f;
}

std::string level_name(std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "level_%05zu", n);
    return buf;
}

void write_level(const fs::path& dir, const Grid& g, const Trajectory& tr, std::size_t n) {
    const std::string s = level_name(n);
    write_field((dir / (s + "_w.cnsf")).string(), g, tr.w[n]);
    write_field((dir / (s + "_h.cnsf")).string(), g, tr.h[n]);
    for (int c = 0; c < 3; ++c)
        write_field((dir / (s + "_v" + std::to_string(c + 1) + ".cnsf")).string(), g, tr.v[n][c]);
    if (n > 0) write_field((dir / (s + "_q.cnsf")).string(), g, tr.q[n]);
    write_surface((dir / (s + "_eta.cnss")).string(), g, tr.eta[n]);
}

json report_json(const ConvergenceReport& r) {
    json rows = json::array();
    for (const auto& s : r.rows)
        rows.push_back({{"sweep", s.sweep}, {"diff_norm", num(s.diff_norm)}, {"ratio", num(s.ratio)},
                        {"Jmin", num(s.jmin)}, {"Jmax", num(s.jmax)}});
    return rows;
}

json run_simulation(const RunConfig& cfg, bool energy_report) {
    const fs::path out(cfg.out_dir);
    Grid g = cfg.grid();
    Spectral sp(g);
    InitialData d = load_initial_data(sp, cfg);
    PicardConfig pc = cfg.picard();
    pc.dump_dir = cfg.out_dir;
    PicardResult res;
    try {
        res = run(sp, pc, d);
    } catch (const NoConvergenceError& e) {
        if (cfg.convergence_csv) write_convergence_csv((out / "convergence.csv").string(), e.report);
        throw;
    }
    if (cfg.convergence_csv) write_convergence_csv((out / "convergence.csv").string(), res.report);

    const Trajectory& tr = res.traj;
    QuintupleNorm qn = quintuple_norm(sp, tr);
    if (cfg.energy_csv || energy_report)
        write_energy_csv((out / "energy.csv").string(), energy_rows(sp, tr, cfg.gamma, cfg.sigma), qn);

    json s;
    s["converged"] = res.report.converged;
    s["sweeps"] = res.report.rows.size();
    s["final_diff_norm"] = num(res.report.rows.back().diff_norm);
    s["data_norm"] = num(res.data_norm);
    double jmin = INFINITY, jmax = -INFINITY, rmax = 0;
    for (const auto& r : res.report.rows) {
        jmin = std::min(jmin, r.jmin);
        jmax = std::max(jmax, r.jmax);
        if (std::isfinite(r.ratio)) rmax = std::max(rmax, r.ratio);
    }
    s["jacobian_min"] = num(jmin);
    s["jacobian_max"] = num(jmax);
    s["max_contraction_ratio"] = num(rmax);

    PhysicalTrajectory ph = invert_to_moving_domain(sp, tr, cfg.c_hat);
    s["m_min"] = num(ph.m_min);
    s["c_min"] = num(ph.c_min);
    s["positive"] = ph.positive;

    EstimateCheck ec = theorem_estimate_check(sp, tr, res.data_norm, cfg.c_cal);
    s["estimate"] = {{"lhs", num(ec.lhs)}, {"rhs", num(ec.rhs)}, {"c_cal", cfg.c_cal}, {"pass", ec.pass}};
    if (energy_report) {
        s["quintuple_norm"] = {{"w", num(qn.w.total())},
                               {"h", num(qn.h.total())},
                               {"v", num(qn.v.total())},
                               {"grad_q_sup_l2", num(qn.grad_q_sup_l2)},
                               {"grad_q_l2_h1", num(qn.grad_q_l2_h1)},
                               {"eta_sup_h3", num(qn.eta_sup_h3)},
                               {"grad_eta_l2_h52", num(qn.grad_eta_l2_h52)},
                               {"ext_hessian_l2_h2", num(qn.ext_hessian_l2_h2)},
                               {"surrogate_grad_vt_trace", num(qn.grad_vt_trace_surrogate)},
                               {"surrogate_grad_qt", num(qn.grad_qt_surrogate)},
                               {"primal", num(qn.primal())},
                               {"total", num(qn.total())}};
    } else {
        fs::path fd = out / "fields";
        fs::create_directories(fd);
        const std::size_t L = tr.levels();
        for (std::size_t n = 0; n < L; ++n) {
            bool keep = n == 0 || n + 1 == L || (cfg.fields_every > 0 && n % std::size_t(cfg.fields_every) == 0);
            if (keep) write_level(fd, g, tr, n);
        }
    }
    return s;
}

json run_mms(const RunConfig& cfg) {
    std::vector<std::string> solvers;
    if (cfg.mms_solver == "all")
        solvers = {"parabolic", "stokes", "stationary"};
    else
        solvers = {cfg.mms_solver};
    std::vector<ConvergenceTable> tables;
    json s = json::array();
    for (const auto& sv : solvers) {
        tables.push_back(mms_spatial(sv, cfg.mms_nz));
        s.push_back({{"solver", sv}, {"kind", "spatial"}, {"order", num(tables.back().order)},
                     {"pass", tables.back().order >= 1.9}});
        if (sv != "stationary") {
            tables.push_back(mms_temporal(sv, cfg.mms_dt));
            s.push_back({{"solver", sv}, {"kind", "temporal"}, {"order", num(tables.back().order)},
                         {"pass", tables.back().order >= 0.9}});
        }
    }
    write_table_csv((fs::path(cfg.out_dir) / "mms.csv").string(), tables);
    return {{"tables", s}};
}

json run_oracle(const RunConfig& cfg) {
    const fs::path out(cfg.out_dir);
    std::ofstream f(out / "oracle.csv");
    if (!f) throw Error(ErrorKind::Config, "cannot write oracle.csv");
    f.precision(17);
    f << "case,Nz,term,residual\n";
    json s;
    {
        Grid g(cfg.oracle_n, cfg.oracle_n, cfg.oracle_nz.front(), cfg.l1, cfg.l2, cfg.b);
        Spectral sp(g);
        ResidualReport r = chain_rule_oracle(sp, flat_case(g), 0.0);
        double worst = 0;
        for (const auto& [k, v] : r.terms) {
            f << "flat," << g.nz << ',' << k << ',' << v << '\n';
            worst = std::max(worst, v);
        }
        s["flat_max"] = num(worst);
    }
    std::vector<ResidualReport> reps;
    std::vector<double> hs;
    for (int nz : cfg.oracle_nz) {
        Grid g(cfg.oracle_n, cfg.oracle_n, nz, cfg.l1, cfg.l2, cfg.b);
        Spectral sp(g);
        reps.push_back(chain_rule_oracle(sp, smooth_case(g, cfg.oracle_amplitude), 0.3));
        hs.push_back(g.dz());
        for (const auto& [k, v] : reps.back().terms) f << "smooth," << nz << ',' << k << ',' << v << '\n';
    }
    json orders;
    for (std::size_t t = 0; t < reps.front().terms.size(); ++t) {
        std::vector<double> e;
        for (const auto& r : reps) e.push_back(r.terms[t].second);
        orders[reps.front().terms[t].first] = num(fitted_order(hs, e));
    }
    s["orders"] = orders;
    return s;
}

json run_gen_data(const RunConfig& cfg) {
    Grid g = cfg.grid();
    Spectral sp(g);
    InitialData d = load_initial_data(sp, cfg);
    write_initial_data(cfg.out_dir, g, d);
    CompatibilityReport r = check_compatibility(sp, d, cfg.compat_tol);
    write_compatibility_csv((fs::path(cfg.out_dir) / "compatibility.csv").string(), r);
    if (!r.pass) throw Error(ErrorKind::Compatibility, "generated data fail the compatibility check");
    return {{"compatible", r.pass},
            {"worst_residual", num(r.worst())},
            {"data_norm", num(data_norm(sp, d.w0, d.h0, d.v0, d.eta0))}};
}

}  // namespace

InitialData load_initial_data(const Spectral& sp, const RunConfig& cfg) {
    const Grid& g = sp.grid();
    if (cfg.data_source == "random") return make_compatible_data(sp, cfg.seed, cfg.amplitude);
    const fs::path dir(cfg.data_dir);
    InitialData d;
    d.w0 = read_matching(dir / "w0.cnsf", g);
    d.h0 = read_matching(dir / "h0.cnsf", g);
    for (int c = 0; c < 3; ++c) d.v0[c] = read_matching(dir / ("v0_" + std::to_string(c + 1) + ".cnsf"), g);
    Grid gs = g;
    d.eta0 = read_surface((dir / "eta0.cnss").string(), gs);
    if (gs.n1 != g.n1 || gs.n2 != g.n2)
        throw Error(ErrorKind::Config, (dir / "eta0.cnss").string() + ": grid does not match the config grid");
    return d;
}

void write_initial_data(const std::string& dir, const Grid& g, const InitialData& d) {
    const fs::path p(dir);
    fs::create_directories(p);
    write_field((p / "w0.cnsf").string(), g, d.w0);
    write_field((p / "h0.cnsf").string(), g, d.h0);
    for (int c = 0; c < 3; ++c) write_field((p / ("v0_" + std::to_string(c + 1) + ".cnsf")).string(), g, d.v0[c]);
    write_surface((p / "eta0.cnss").string(), g, d.eta0);
}

void write_compatibility_csv(const std::string& path, const CompatibilityReport& r) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::Config, "cannot write " + path);
    f.precision(17);
    f << "residual,value,tol,pass\n";
    for (const auto& [k, v] : r.residuals) f << k << ',' << v << ',' << r.tol << ',' << (v <= r.tol ? 1 : 0) << '\n';
}

void write_error_json(const std::string& dir, const Error& e) {
    if (dir.empty()) return;
    json j = {{"status", "error"}, {"kind", kind_name(e.kind())}, {"exit_code", e.exit_code()}, {"message", e.what()}};
    if (auto* nc = dynamic_cast<const NoConvergenceError*>(&e)) j["sweeps"] = report_json(nc->report);
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream f(fs::path(dir) / "error.json");
    if (f) f << std::setw(2) << j << '\n';
}

int run_mode(const RunConfig& cfg) {
    try {
        if (cfg.out_dir.empty()) throw Error(ErrorKind::Config, "an output directory is required");
        fs::create_directories(cfg.out_dir);
        write_json(fs::path(cfg.out_dir) / "config.json", serialize(cfg));
        json summary;
        if (cfg.mode == "simulate")
            summary = run_simulation(cfg, false);
        else if (cfg.mode == "energy-report")
            summary = run_simulation(cfg, true);
        else if (cfg.mode == "mms")
            summary = run_mms(cfg);
        else if (cfg.mode == "verify-transform")
            summary = run_oracle(cfg);
        else if (cfg.mode == "gen-data")
            summary = run_gen_data(cfg);
        else
            throw Error(ErrorKind::Config, "unknown mode '" + cfg.mode + "'");
        summary["status"] = "ok";
        summary["mode"] = cfg.mode;
        write_json(fs::path(cfg.out_dir) / "summary.json", summary);
        return 0;
    } catch (const Error& e) {
        write_error_json(cfg.out_dir, e);
        return e.exit_code();
    } catch (const std::filesystem::filesystem_error& e) {
        Error err(ErrorKind::Config, e.what());
        write_error_json(cfg.out_dir, err);
        return err.exit_code();
    }
}

}  // namespace cns
