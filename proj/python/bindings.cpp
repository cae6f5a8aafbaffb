#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cns/app.hpp"
#include "cns/config.hpp"
#include "cns/error.hpp"
#include "cns/harmonic.hpp"
#include "cns/parallel.hpp"
#include "cns/verify.hpp"

namespace py = pybind11;
using namespace cns;

namespace {

py::array_t<double> field_array(const Grid& g, const Field& f) {
    py::array_t<double> a({g.n1, g.n2, g.nz});
    std::copy(f.begin(), f.end(), a.mutable_data());
    return a;
}

py::array_t<double> surface_array(const Grid& g, const Surface& f) {
    py::array_t<double> a({g.n1, g.n2});
    std::copy(f.begin(), f.end(), a.mutable_data());
    return a;
}

std::vector<double> flat_copy(py::array_t<double, py::array::c_style | py::array::forcecast> a, std::size_t n,
                              const char* what) {
    if (std::size_t(a.size()) != n) throw std::invalid_argument(std::string(what) + ": wrong number of values");
    return {a.data(), a.data() + n};
}

py::dict data_dict(const Grid& g, const InitialData& d) {
    py::dict r;
    r["w0"] = field_array(g, d.w0);
    r["h0"] = field_array(g, d.h0);
    r["v0"] = py::make_tuple(field_array(g, d.v0[0]), field_array(g, d.v0[1]), field_array(g, d.v0[2]));
    r["eta0"] = surface_array(g, d.eta0);
    return r;
}

}  // namespace

PYBIND11_MODULE(_cns, m) {
    m.doc() = "slab free-surface chemotaxis solver";

    static py::exception<Error> err(m, "CnsError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            err(e.what());
        }
    });

    py::class_<Grid>(m, "Grid")
        .def(py::init<int, int, int, double, double, double>(), py::arg("n1"), py::arg("n2"), py::arg("nz"),
             py::arg("l1") = 2 * M_PI, py::arg("l2") = 2 * M_PI, py::arg("b") = 1.0)
        .def_readonly("n1", &Grid::n1)
        .def_readonly("n2", &Grid::n2)
        .def_readonly("nz", &Grid::nz)
        .def_readonly("l1", &Grid::l1)
        .def_readonly("l2", &Grid::l2)
        .def_readonly("b", &Grid::b)
        .def_property_readonly("dz", &Grid::dz)
        .def("y", [](const Grid& g) {
            py::array_t<double> a(g.nz);
            for (int k = 0; k < g.nz; ++k) a.mutable_at(k) = g.y(k);
            return a;
        })
        .def("__repr__", [](const Grid& g) {
            return "Grid(" + std::to_string(g.n1) + ", " + std::to_string(g.n2) + ", " + std::to_string(g.nz) + ")";
        });

    m.def("extend", [](const Grid& g, py::array_t<double> eta) {
        Spectral sp(g);
        return field_array(g, extend(sp, flat_copy(eta, g.ncol(), "eta")).values);
    }, py::arg("grid"), py::arg("eta"), "harmonic extension of a surface, shape (N1, N2, Nz)");

    m.def("make_compatible_data", [](const Grid& g, std::uint64_t seed, double amplitude) {
        Spectral sp(g);
        return data_dict(g, make_compatible_data(sp, seed, amplitude));
    }, py::arg("grid"), py::arg("seed"), py::arg("amplitude"));

    m.def("compatibility", [](const Grid& g, std::uint64_t seed, double amplitude, double tol) {
        Spectral sp(g);
        CompatibilityReport r = check_compatibility(sp, make_compatible_data(sp, seed, amplitude), tol);
        py::dict d;
        for (const auto& [k, v] : r.residuals) d[py::str(k)] = v;
        return py::make_tuple(r.pass, d);
    }, py::arg("grid"), py::arg("seed"), py::arg("amplitude"), py::arg("tol") = 1e-6);

    m.def("mms_order", [](const std::string& solver, const std::string& kind, std::vector<double> steps) {
        ConvergenceTable t;
        if (kind == "spatial") {
            std::vector<int> nz(steps.begin(), steps.end());
            t = mms_spatial(solver, nz);
        } else if (kind == "temporal") {
            t = mms_temporal(solver, steps);
        } else {
            throw std::invalid_argument("kind must be 'spatial' or 'temporal'");
        }
        return py::make_tuple(t.order, t.step, t.error);
    }, py::arg("solver"), py::arg("kind"), py::arg("steps"),
          "fitted order, steps and errors; spatial steps are Nz values");

    m.def("read_field", [](const std::string& path) {
        Grid g;
        Field f = read_field(path, g);
        return py::make_tuple(g, field_array(g, f));
    });
    m.def("read_surface", [](const std::string& path) {
        Grid g;
        Surface f = read_surface(path, g);
        return py::make_tuple(g, surface_array(g, f));
    });

    m.def("run", [](const std::string& config_json) {
        RunConfig c = parse_config_text(config_json);
        py::gil_scoped_release nogil;
        return run_mode(c);
    }, py::arg("config_json"), "run a mode from a JSON config (with 'mode' and 'out'); returns the exit status");

    m.def("set_thread_count", &set_thread_count);
    m.def("thread_count", &thread_count);
}
