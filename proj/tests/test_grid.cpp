#include <cstring>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"

#include "cns/error.hpp"
#include "cns/grid.hpp"

using namespace cns;

TEST_SUITE("slab_grid") {
    TEST_CASE("grid validation messages") {
        CHECK_THROWS_WITH_AS(Grid(0, 16, 17, 1, 1, 1), "N1 must be ≥4 and even", Error);
        CHECK_THROWS_WITH_AS(Grid(16, 6 + 1, 17, 1, 1, 1), "N2 must be ≥4 and even", Error);
        CHECK_THROWS_AS(Grid(16, 16, 2, 1, 1, 1), Error);
        CHECK_THROWS_AS(Grid(16, 16, 17, 1, 1, -1), Error);
    }

    TEST_CASE("vertical nodes span the slab") {
        Grid g(4, 4, 9, 1, 1, 2.0);
        CHECK(g.y(0) == -2.0);
        CHECK(g.y(8) == doctest::Approx(0.0));
        CHECK(g.dz() == doctest::Approx(0.25));
    }

    TEST_CASE("second-order stencils reproduce quadratics") {
        Grid g(4, 4, 11, 1, 1, 1.5);
        Field lin = testutil::sample(g, [](double, double, double y) { return y; });
        Field quad = testutil::sample(g, [](double, double, double y) { return y * y; });
        Field d = d_vertical(g, lin, 1), d2 = d_vertical(g, quad, 2), dq = d_vertical(g, quad, 1);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(d[i] == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(d2[i] == doctest::Approx(2.0).epsilon(1e-10));
            CHECK(dq[i] == doctest::Approx(2 * g.y(int(i % g.nz))).scale(1).epsilon(1e-10));
        }
    }

    TEST_CASE("quadrature") {
        Grid g(8, 6, 9, 2.0, 3.0, 0.5);
        CHECK(integrate(g, g.zeros()) == 0.0);
        Field one(g.size(), 1.0);
        CHECK(integrate(g, one) == doctest::Approx(g.volume()).epsilon(1e-14));
        // trapezoid is exact for linear profiles
        Field lin = testutil::sample(g, [](double, double, double y) { return y; });
        CHECK(integrate(g, lin) == doctest::Approx(-0.5 * g.b * g.b * g.area()).epsilon(1e-13));
    }

    TEST_CASE("field files round trip bit-exactly") {
        auto dir = testutil::scratch_dir("grid_io");
        Grid g(6, 4, 5, 1.25, 2.5, 0.75);
        Field f = testutil::random_field(g, 3);
        write_field((dir / "f.cnsf").string(), g, f);
        Grid r;
        Field back = read_field((dir / "f.cnsf").string(), r);
        CHECK(r == g);
        REQUIRE(back.size() == f.size());
        CHECK(std::memcmp(back.data(), f.data(), f.size() * sizeof(double)) == 0);

        Surface s(g.ncol());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sin(0.3 * double(i)) + 1e-300;
        write_surface((dir / "s.cnss").string(), g, s);
        Grid rs = g;
        Surface sb = read_surface((dir / "s.cnss").string(), rs);
        CHECK(std::memcmp(sb.data(), s.data(), s.size() * sizeof(double)) == 0);
    }

    TEST_CASE("corrupted files are rejected") {
        auto dir = testutil::scratch_dir("grid_bad");
        Grid g(4, 4, 5, 1, 1, 1);
        Field f = testutil::random_field(g, 5);
        const auto path = (dir / "f.cnsf").string();
        write_field(path, g, f);
        std::string bytes;
        {
            std::ifstream is(path, std::ios::binary);
            bytes.assign(std::istreambuf_iterator<char>(is), {});
        }
        auto put = [&](const std::string& name, const std::string& b) {
            std::ofstream os(dir / name, std::ios::binary);
            os << b;
            return (dir / name).string();
        };
        Grid r;
        std::string magic = bytes;
        magic[4] = '9';
        CHECK_THROWS_AS(read_field(put("magic.cnsf", magic), r), Error);
        CHECK_THROWS_AS(read_field(put("short.cnsf", bytes.substr(0, bytes.size() - 8)), r), Error);
        // byte-swap every payload value: a big-endian writer
        std::string swapped = bytes;
        const std::size_t start = bytes.find('\n') + 1;
        for (std::size_t i = start; i + 8 <= swapped.size(); i += 8) std::reverse(swapped.begin() + long(i), swapped.begin() + long(i) + 8);
        CHECK_THROWS_WITH_AS(read_field(put("be.cnsf", swapped), r),
                             doctest::Contains("byte order"), Error);
    }
}
