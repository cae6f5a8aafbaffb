#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"

#include "cns/app.hpp"
#include "cns/config.hpp"
#include "cns/error.hpp"

using namespace cns;
using nlohmann::json;

namespace {

int run_cli(const std::string& args) {
    int rc = std::system((std::string(CNS_BIN) + " " + args + " 2>/dev/null").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

json read_json(const std::filesystem::path& p) {
    std::ifstream f(p);
    return json::parse(f);
}

}  // namespace

TEST_SUITE("cli_io") {
    TEST_CASE("minimal config gets the documented defaults") {
        RunConfig c = parse_config_text(R"({"grid":{"N1":16,"N2":16,"Nz":17}})");
        CHECK(c.n1 == 16);
        CHECK(c.gamma == 1.0);
        CHECK(c.sigma == 1.0);
        CHECK(c.b == 1.0);
        CHECK(c.c_hat == 1.0);
        CHECK(c.l1 == doctest::Approx(2 * M_PI));
        CHECK(c.l2 == doctest::Approx(2 * M_PI));
        CHECK(c.dt == 1e-3);
        CHECK(c.T == 1.0);
        CHECK(c.diff_tol == 1e-8);
        CHECK(c.max_sweeps == 30);
    }

    TEST_CASE("validation errors name the problem") {
        CHECK_THROWS_WITH_AS(parse_config_text(R"({"grid":{"N1":0,"N2":16,"Nz":17}})"), "N1 must be ≥4 and even",
                             Error);
        CHECK_THROWS_WITH_AS(parse_config_text(R"({"grid":{"N1":16,"N2":16,"Nz":17},"time":{"dtt":1}})"),
                             doctest::Contains("time.dtt"), Error);
        CHECK_THROWS_WITH_AS(parse_config_text(R"({"grid":{"N1":16,"N2":16,"Nz":17},"solver":{}})"),
                             doctest::Contains("solver"), Error);
        CHECK_THROWS_WITH_AS(parse_config_text(R"({"grid":{"N1":16,"N2":16,"Nz":17},"time":{"dt":"x"}})"),
                             doctest::Contains("time.dt"), Error);
        CHECK_THROWS_WITH_AS(parse_config_text(R"({"grid":{"N1":16,"N2":16}})"), doctest::Contains("grid.Nz"),
                             Error);
        CHECK_THROWS_AS(parse_config_text(R"({"grid":{"N1":16,"N2":16,"Nz":17},"time":{"dt":0.3,"T":1}})"), Error);
        try {
            parse_config_text("{");
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.exit_code() == 2);
        }
    }

    TEST_CASE("serialize then parse is a fixed point") {
        RunConfig a = parse_config_text(
            R"({"grid":{"N1":8,"N2":12,"Nz":9,"L1":3.5},"physics":{"gamma":2.5,"potential":"zero"},
                "time":{"dt":0.05,"T":0.5},"data":{"seed":11,"amplitude":0.02},"mms":{"nz":[9,17,33]}})");
        json ja = serialize(a);
        RunConfig b = parse_config(ja);
        CHECK(serialize(b) == ja);
        CHECK(b.l1 == 3.5);
        CHECK(b.potential == "zero");
        CHECK(b.mms_nz == std::vector<int>{9, 17, 33});
    }

    TEST_CASE("--set overrides") {
        json j = json::parse(R"({"grid":{"N1":16,"N2":16,"Nz":17}})");
        apply_override(j, "time.dt=0.02");
        apply_override(j, "data.source=files");
        apply_override(j, "data.dir=/tmp/x");
        RunConfig c = parse_config(j);
        CHECK(c.dt == 0.02);
        CHECK(c.data_source == "files");
        CHECK_THROWS_AS(apply_override(j, "novalue"), Error);
    }

    TEST_CASE("exit codes and artifacts of the executable") {
        auto dir = testutil::scratch_dir("cli");
        {
            std::ofstream f(dir / "c.json");
            f << R"({"grid":{"N1":8,"N2":8,"Nz":9},"time":{"dt":0.05,"T":0.2}})";
        }
        const std::string cfg = "--config " + (dir / "c.json").string();

        CHECK(run_cli("gen-data " + cfg + " --set data.seed=7 --out " + (dir / "gen").string()) == 0);
        CHECK(std::filesystem::exists(dir / "gen" / "w0.cnsf"));
        CHECK(std::filesystem::exists(dir / "gen" / "eta0.cnss"));
        CHECK(std::filesystem::exists(dir / "gen" / "compatibility.csv"));

        // zero data: one sweep
        CHECK(run_cli("simulate " + cfg + " --set data.amplitude=0 --out " + (dir / "zero").string()) == 0);
        {
            std::ifstream f(dir / "zero" / "convergence.csv");
            std::string header, row, extra;
            std::getline(f, header);
            std::getline(f, row);
            CHECK(header.rfind("sweep,diff_norm", 0) == 0);
            CHECK(row.rfind("1,0,", 0) == 0);
            CHECK(!std::getline(f, extra));
        }

        CHECK(run_cli("simulate " + cfg + " --set grid.N1=0 --out " + (dir / "bad").string()) == 2);
        json e = read_json(dir / "bad" / "error.json");
        CHECK(e["kind"] == "config");
        CHECK(e["message"] == "N1 must be ≥4 and even");
        CHECK(run_cli("simulate " + cfg + " --set grid.extra=1 --out " + (dir / "bad2").string()) == 2);

        CHECK(run_cli("simulate " + cfg + " --set picard.max_sweeps=2 --out " + (dir / "nc").string()) == 4);
        e = read_json(dir / "nc" / "error.json");
        CHECK(e["kind"] == "no_convergence");
        CHECK(e["sweeps"].size() == 2);

        // break the h0 = 0 condition on Gamma in otherwise valid data
        {
            Grid g;
            Field h0 = read_field((dir / "gen" / "h0.cnsf").string(), g);
            h0[g.nz - 1] = 1e-3;
            write_field((dir / "gen" / "h0.cnsf").string(), g, h0);
        }
        CHECK(run_cli("simulate " + cfg + " --set data.source=files --set data.dir=" + (dir / "gen").string() +
                      " --out " + (dir / "compat").string()) == 3);
        e = read_json(dir / "compat" / "error.json");
        CHECK(e["kind"] == "compatibility");

        // zero fields under a steep surface: compatible, but far outside the Jacobian window
        {
            Grid g;
            read_field((dir / "gen" / "w0.cnsf").string(), g);
            std::filesystem::create_directories(dir / "steep");
            for (const char* f : {"w0", "h0", "v0_1", "v0_2", "v0_3"})
                write_field((dir / "steep" / (std::string(f) + ".cnsf")).string(), g, g.zeros());
            Surface eta = g.zeros_s();
            for (int i1 = 0; i1 < g.n1; ++i1)
                for (int i2 = 0; i2 < g.n2; ++i2) eta[std::size_t(i1 * g.n2 + i2)] = 0.9 * std::cos(g.x1(i1));
            write_surface((dir / "steep" / "eta0.cnss").string(), g, eta);
        }
        CHECK(run_cli("simulate " + cfg + " --set data.source=files --set data.dir=" + (dir / "steep").string() +
                      " --set picard.eps0=1e9 --out " + (dir / "jac").string()) == 5);
        e = read_json(dir / "jac" / "error.json");
        CHECK(e["kind"] == "jacobian");
    }
}
