#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cns/app.hpp"
#include "cns/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"slab free-surface chemotaxis solver"};
    app.require_subcommand(1);
    std::string config, out;
    std::vector<std::string> sets;
    for (const auto& mode : cns::run_modes()) {
        CLI::App* sub = app.add_subcommand(mode);
        sub->add_option("--config", config, "JSON config file ('-' for stdin)")->required();
        sub->add_option("--set", sets, "override a config key, e.g. time.dt=1e-2")->take_all();
        sub->add_option("--out", out, "output directory")->required();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string mode = app.get_subcommands().front()->get_name();

    cns::RunConfig cfg;
    try {
        nlohmann::json j;
        std::ifstream f;
        std::string text;
        if (config == "-") {
            text.assign(std::istreambuf_iterator<char>(std::cin), {});
        } else {
            f.open(config);
            if (!f) throw cns::Error(cns::ErrorKind::Config, "cannot read config " + config);
            text.assign(std::istreambuf_iterator<char>(f), {});
        }
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw cns::Error(cns::ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
        }
        for (const auto& s : sets) cns::apply_override(j, s);
        j["mode"] = mode;
        j["out"] = out;
        cfg = cns::parse_config(j);
    } catch (const cns::Error& e) {
        std::cerr << "cns: " << e.what() << '\n';
        cns::write_error_json(out, e);
        return e.exit_code();
    }

    int rc = cns::run_mode(cfg);
    if (rc != 0) std::cerr << "cns: " << mode << " failed (exit " << rc << "), see " << out << "/error.json\n";
    return rc;
}
