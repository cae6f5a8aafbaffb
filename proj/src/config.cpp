#include "cns/config.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include "cns/error.hpp"

namespace cns {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

// schema: section -> allowed keys
const std::vector<std::pair<std::string, std::set<std::string>>>& schema() {
    static const std::vector<std::pair<std::string, std::set<std::string>>> s = {
        {"grid", {"N1", "N2", "Nz", "L1", "L2", "b"}},
        {"physics", {"gamma", "sigma", "c_hat", "potential", "potential_scale"}},
        {"time", {"dt", "T"}},
        {"picard", {"max_sweeps", "diff_tol", "eps0", "compat_tol", "inner_tol"}},
        {"data", {"source", "seed", "amplitude", "dir"}},
        {"output", {"fields_every", "energy_csv", "convergence_csv"}},
        {"energy", {"c_cal"}},
        {"mms", {"solver", "nz", "dt"}},
        {"oracle", {"nz", "n", "amplitude"}},
    };
    return s;
}

class Reader {
public:
    explicit Reader(const json& root) : root_(root) {}

    const json* find(const std::string& sec, const std::string& key) const {
        auto s = root_.find(sec);
        if (s == root_.end()) return nullptr;
        auto k = s->find(key);
        return k == s->end() ? nullptr : &*k;
    }

    void number(const std::string& sec, const std::string& key, double& out) const {
        if (const json* v = find(sec, key)) {
            if (!v->is_number()) fail("config key '" + sec + "." + key + "': expected a number");
            out = v->get<double>();
        }
    }
    void integer(const std::string& sec, const std::string& key, int& out, bool required = false) const {
        const json* v = find(sec, key);
        if (!v) {
            if (required) fail("missing required config key '" + sec + "." + key + "'");
            return;
        }
        if (!v->is_number_integer()) fail("config key '" + sec + "." + key + "': expected an integer");
        out = v->get<int>();
    }
    void text(const std::string& sec, const std::string& key, std::string& out) const {
        if (const json* v = find(sec, key)) {
            if (!v->is_string()) fail("config key '" + sec + "." + key + "': expected a string");
            out = v->get<std::string>();
        }
    }
    void flag(const std::string& sec, const std::string& key, bool& out) const {
        if (const json* v = find(sec, key)) {
            if (!v->is_boolean()) fail("config key '" + sec + "." + key + "': expected true or false");
            out = v->get<bool>();
        }
    }
    template <class T>
    void list(const std::string& sec, const std::string& key, std::vector<T>& out) const {
        const json* v = find(sec, key);
        if (!v) return;
        if (!v->is_array() || v->empty()) fail("config key '" + sec + "." + key + "': expected a non-empty array");
        out.clear();
        for (const auto& e : *v) {
            if (std::is_integral_v<T> ? !e.is_number_integer() : !e.is_number())
                fail("config key '" + sec + "." + key + "': array entries must be numbers");
            out.push_back(e.get<T>());
        }
    }

private:
    const json& root_;
};

void positive(double v, const char* name) {
    if (!(v > 0)) fail(std::string(name) + " must be positive");
}

}  // namespace

const std::vector<std::string>& run_modes() {
    static const std::vector<std::string> m = {"simulate", "verify-transform", "mms", "energy-report", "gen-data"};
    return m;
}

PicardConfig RunConfig::picard() const {
    PicardConfig p;
    p.dt = dt;
    p.T = T;
    p.c_hat = c_hat;
    p.gamma = gamma;
    p.sigma = sigma;
    p.max_sweeps = max_sweeps;
    p.diff_tol = diff_tol;
    p.eps0 = eps0;
    p.compat_tol = compat_tol;
    p.inner_tol = inner_tol;
    if (potential == "linear") {
        const double s = potential_scale;
        p.phi = [s](double, double, double z, double) { return s * z; };
    }
    return p;
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) fail("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "mode" || k == "out") continue;
        auto sec = std::find_if(schema().begin(), schema().end(), [&](const auto& s) { return s.first == k; });
        if (sec == schema().end()) fail("unknown config key '" + k + "'");
        if (!it->is_object()) fail("config key '" + k + "': expected an object");
        for (auto kt = it->begin(); kt != it->end(); ++kt)
            if (!sec->second.count(kt.key())) fail("unknown config key '" + k + "." + kt.key() + "'");
    }

    RunConfig c;
    Reader r(j);
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) fail("config key 'mode': expected a string");
        c.mode = j["mode"].get<std::string>();
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) fail("config key 'out': expected a string");
        c.out_dir = j["out"].get<std::string>();
    }
    r.integer("grid", "N1", c.n1, true);
    r.integer("grid", "N2", c.n2, true);
    r.integer("grid", "Nz", c.nz, true);
    r.number("grid", "L1", c.l1);
    r.number("grid", "L2", c.l2);
    r.number("grid", "b", c.b);
    r.number("physics", "gamma", c.gamma);
    r.number("physics", "sigma", c.sigma);
    r.number("physics", "c_hat", c.c_hat);
    r.text("physics", "potential", c.potential);
    r.number("physics", "potential_scale", c.potential_scale);
    r.number("time", "dt", c.dt);
    r.number("time", "T", c.T);
    r.integer("picard", "max_sweeps", c.max_sweeps);
    r.number("picard", "diff_tol", c.diff_tol);
    r.number("picard", "eps0", c.eps0);
    r.number("picard", "compat_tol", c.compat_tol);
    r.number("picard", "inner_tol", c.inner_tol);
    r.text("data", "source", c.data_source);
    if (const json* s = r.find("data", "seed")) {
        if (!s->is_number_unsigned()) fail("config key 'data.seed': expected a non-negative integer");
        c.seed = s->get<std::uint64_t>();
    }
    r.number("data", "amplitude", c.amplitude);
    r.text("data", "dir", c.data_dir);
    r.integer("output", "fields_every", c.fields_every);
    r.flag("output", "energy_csv", c.energy_csv);
    r.flag("output", "convergence_csv", c.convergence_csv);
    r.number("energy", "c_cal", c.c_cal);
    r.text("mms", "solver", c.mms_solver);
    r.list("mms", "nz", c.mms_nz);
    r.list("mms", "dt", c.mms_dt);
    r.list("oracle", "nz", c.oracle_nz);
    r.integer("oracle", "n", c.oracle_n);
    r.number("oracle", "amplitude", c.oracle_amplitude);

    // validation
    if (std::find(run_modes().begin(), run_modes().end(), c.mode) == run_modes().end())
        fail("unknown mode '" + c.mode + "'");
    (void)c.grid();  // grid-size messages come from the grid itself
    positive(c.l1, "L1");
    positive(c.l2, "L2");
    positive(c.b, "b");
    positive(c.gamma, "gamma");
    positive(c.sigma, "sigma");
    positive(c.c_hat, "c_hat");
    positive(c.dt, "dt");
    positive(c.T, "T");
    positive(c.diff_tol, "diff_tol");
    positive(c.eps0, "eps0");
    positive(c.compat_tol, "compat_tol");
    positive(c.inner_tol, "inner_tol");
    positive(c.c_cal, "c_cal");
    if (c.max_sweeps < 1) fail("max_sweeps must be at least 1");
    if (c.fields_every < 0) fail("fields_every must be non-negative");
    (void)c.picard().levels();
    if (c.potential != "linear" && c.potential != "zero") fail("potential must be 'linear' or 'zero'");
    if (c.data_source != "random" && c.data_source != "files") fail("data.source must be 'random' or 'files'");
    if (c.data_source == "files" && c.data_dir.empty()) fail("data.dir is required when data.source is 'files'");
    if (!(c.amplitude >= 0)) fail("amplitude must be non-negative");
    static const std::set<std::string> solvers = {"parabolic", "stokes", "stationary", "all"};
    if (!solvers.count(c.mms_solver)) fail("mms.solver must be parabolic, stokes, stationary or all");
    if (c.mms_nz.size() < 3 || c.mms_dt.size() < 3 || c.oracle_nz.size() < 3)
        fail("refinement studies need at least three grids or steps");
    for (int n : c.mms_nz)
        if (n < 5) fail("mms.nz entries must be at least 5");
    for (double d : c.mms_dt) positive(d, "mms.dt entries");
    for (int n : c.oracle_nz)
        if (n < 9) fail("oracle.nz entries must be at least 9");
    if (c.oracle_n < 4 || c.oracle_n % 2) fail("oracle.n must be ≥4 and even");
    return c;
}

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

RunConfig load_config(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream f(path);
        if (!f) fail("cannot read config " + path);
        text.assign(std::istreambuf_iterator<char>(f), {});
    }
    return parse_config_text(text);
}

json serialize(const RunConfig& c) {
    json j;
    j["mode"] = c.mode;
    if (!c.out_dir.empty()) j["out"] = c.out_dir;
    j["grid"] = {{"N1", c.n1}, {"N2", c.n2}, {"Nz", c.nz}, {"L1", c.l1}, {"L2", c.l2}, {"b", c.b}};
    j["physics"] = {{"gamma", c.gamma},
                    {"sigma", c.sigma},
                    {"c_hat", c.c_hat},
                    {"potential", c.potential},
                    {"potential_scale", c.potential_scale}};
    j["time"] = {{"dt", c.dt}, {"T", c.T}};
    j["picard"] = {{"max_sweeps", c.max_sweeps},
                   {"diff_tol", c.diff_tol},
                   {"eps0", c.eps0},
                   {"compat_tol", c.compat_tol},
                   {"inner_tol", c.inner_tol}};
    j["data"] = {{"source", c.data_source}, {"seed", c.seed}, {"amplitude", c.amplitude}};
    if (!c.data_dir.empty()) j["data"]["dir"] = c.data_dir;
    j["output"] = {{"fields_every", c.fields_every},
                   {"energy_csv", c.energy_csv},
                   {"convergence_csv", c.convergence_csv}};
    j["energy"] = {{"c_cal", c.c_cal}};
    j["mms"] = {{"solver", c.mms_solver}, {"nz", c.mms_nz}, {"dt", c.mms_dt}};
    j["oracle"] = {{"nz", c.oracle_nz}, {"n", c.oracle_n}, {"amplitude", c.oracle_amplitude}};
    return j;
}

void apply_override(json& j, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) fail("--set expects key=value, got '" + assignment + "'");
    std::string path = assignment.substr(0, eq), value = assignment.substr(eq + 1);
    json v;
    try {
        v = json::parse(value);
    } catch (const json::parse_error&) {
        v = value;
    }
    json* node = &j;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        json& next = (*node)[parts[i]];
        if (next.is_null()) next = json::object();
        if (!next.is_object()) fail("--set " + path + ": '" + parts[i] + "' is not a section");
        node = &next;
    }
    (*node)[parts.back()] = v;
}

}  // namespace cns
