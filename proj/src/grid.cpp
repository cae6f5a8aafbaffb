#include "cns/grid.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cns/error.hpp"

namespace cns {

void Grid::validate() const {
    if (n1 < 4 || n1 % 2) throw Error(ErrorKind::Config, "N1 must be ≥4 and even");
    if (n2 < 4 || n2 % 2) throw Error(ErrorKind::Config, "N2 must be ≥4 and even");
    if (nz < 3) throw Error(ErrorKind::Config, "Nz must be ≥3");
    if (!(l1 > 0) || !(l2 > 0)) throw Error(ErrorKind::Config, "L1, L2 must be positive");
    if (!(b > 0)) throw Error(ErrorKind::Config, "b must be positive");
}

Stencil d1_stencil(int nz, int j, double h) {
    Stencil s;
    s.n = 3;
    double r = 1.0 / (2 * h);
    if (j == 0) {
        s.node[0] = 0; s.node[1] = 1; s.node[2] = 2;
        s.c[0] = -3 * r; s.c[1] = 4 * r; s.c[2] = -r;
    } else if (j == nz - 1) {
        s.node[0] = nz - 3; s.node[1] = nz - 2; s.node[2] = nz - 1;
        s.c[0] = r; s.c[1] = -4 * r; s.c[2] = 3 * r;
    } else {
        s.n = 2;
        s.node[0] = j - 1; s.node[1] = j + 1;
        s.c[0] = -r; s.c[1] = r;
    }
    return s;
}

Stencil d2_stencil(int nz, int j, double h) {
    Stencil s;
    double r = 1.0 / (h * h);
    if (nz < 4 || (j > 0 && j < nz - 1)) {
        // nz == 3 falls back to the three-point formula everywhere
        int c = std::clamp(j, 1, nz - 2);
        s.n = 3;
        s.node[0] = c - 1; s.node[1] = c; s.node[2] = c + 1;
        s.c[0] = r; s.c[1] = -2 * r; s.c[2] = r;
    } else if (j == 0) {
        s.n = 4;
        for (int i = 0; i < 4; ++i) s.node[i] = i;
        s.c[0] = 2 * r; s.c[1] = -5 * r; s.c[2] = 4 * r; s.c[3] = -r;
    } else {
        s.n = 4;
        for (int i = 0; i < 4; ++i) s.node[i] = nz - 1 - i;
        s.c[0] = 2 * r; s.c[1] = -5 * r; s.c[2] = 4 * r; s.c[3] = -r;
    }
    return s;
}

Field d_vertical(const Grid& g, const Field& f, int order) {
    if (order != 1 && order != 2) throw Error(ErrorKind::Config, "d_vertical: order must be 1 or 2");
    const int nz = g.nz;
    const double h = g.dz();
    std::vector<Stencil> st(nz);
    for (int j = 0; j < nz; ++j) st[j] = order == 1 ? d1_stencil(nz, j, h) : d2_stencil(nz, j, h);
    Field out(f.size());
    const std::size_t nc = g.ncol();
    for (std::size_t c = 0; c < nc; ++c) {
        const double* col = f.data() + c * nz;
        double* o = out.data() + c * nz;
        for (int j = 0; j < nz; ++j) {
            double s = 0;
            for (int i = 0; i < st[j].n; ++i) s += st[j].c[i] * col[st[j].node[i]];
            o[j] = s;
        }
    }
    return out;
}

Surface top(const Grid& g, const Field& f) {
    Surface s(g.ncol());
    for (std::size_t c = 0; c < s.size(); ++c) s[c] = f[c * g.nz + g.nz - 1];
    return s;
}

Surface bottom(const Grid& g, const Field& f) {
    Surface s(g.ncol());
    for (std::size_t c = 0; c < s.size(); ++c) s[c] = f[c * g.nz];
    return s;
}

double integrate(const Grid& g, const Field& f) {
    const int nz = g.nz;
    double acc = 0;
    for (std::size_t c = 0; c < g.ncol(); ++c) {
        const double* col = f.data() + c * nz;
        double s = 0.5 * (col[0] + col[nz - 1]);
        for (int k = 1; k < nz - 1; ++k) s += col[k];
        acc += s;
    }
    return acc * g.dz() * g.area() / double(g.ncol());
}

double integrate_s(const Grid& g, const Surface& f) {
    double acc = 0;
    for (double v : f) acc += v;
    return acc * g.area() / double(g.ncol());
}

double l2_norm(const Grid& g, const Field& f) {
    Field sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
    return std::sqrt(integrate(g, sq));
}

double l2_norm_s(const Grid& g, const Surface& f) {
    double acc = 0;
    for (double v : f) acc += v * v;
    return std::sqrt(acc * g.area() / double(g.ncol()));
}

double max_abs(const std::vector<double>& f) {
    double m = 0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

void check_finite(const std::vector<double>& f, const char* what) {
    for (double v : f)
        if (!std::isfinite(v)) throw Error(ErrorKind::Numeric, std::string(what) + ": non-finite value");
}

namespace {

static_assert(std::endian::native == std::endian::little, "file I/O assumes a little-endian host");

void write_payload(std::ofstream& os, const std::vector<double>& f) {
    os.write(reinterpret_cast<const char*>(f.data()), std::streamsize(f.size() * sizeof(double)));
}

std::string header_line(std::ifstream& is, const std::string& path) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::Config, path + ": empty file");
    return line;
}

void read_payload(std::ifstream& is, std::vector<double>& f, const std::string& path) {
    is.read(reinterpret_cast<char*>(f.data()), std::streamsize(f.size() * sizeof(double)));
    if (is.gcount() != std::streamsize(f.size() * sizeof(double)))
        throw Error(ErrorKind::Config, path + ": truncated payload");
    char extra;
    if (is.read(&extra, 1); is.gcount() != 0) throw Error(ErrorKind::Config, path + ": trailing bytes");
    // a byte-swapped file shows up as absurd exponents; finite little-endian data
    // from this tool never has them
    std::size_t bad = 0;
    for (double v : f) {
        std::uint64_t u;
        std::memcpy(&u, &v, 8);
        int e = int((u >> 52) & 0x7ff);
        if (v != 0 && (e == 0x7ff || e < 1023 - 300 || e > 1023 + 300)) ++bad;
    }
    if (!f.empty() && bad * 4 > f.size())
        throw Error(ErrorKind::Config, path + ": payload is not little-endian float64 (byte order mismatch)");
}

}  // namespace

void write_field(const std::string& path, const Grid& g, const Field& f) {
    if (f.size() != g.size()) throw Error(ErrorKind::Config, "write_field: size mismatch");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::Config, "cannot write " + path);
    std::ostringstream h;
    h.precision(17);
    h << "CNSF1 " << g.n1 << ' ' << g.n2 << ' ' << g.nz << ' ' << g.l1 << ' ' << g.l2 << ' ' << g.b << '\n';
    os << h.str();
    write_payload(os, f);
}

Field read_field(const std::string& path, Grid& g) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::Config, "cannot read " + path);
    std::istringstream h(header_line(is, path));
    std::string magic;
    h >> magic;
    if (magic != "CNSF1") throw Error(ErrorKind::Config, path + ": bad magic '" + magic + "'");
    Grid r;
    if (!(h >> r.n1 >> r.n2 >> r.nz >> r.l1 >> r.l2 >> r.b)) throw Error(ErrorKind::Config, path + ": bad header");
    r.validate();
    Field f(r.size());
    read_payload(is, f, path);
    g = r;
    return f;
}

void write_surface(const std::string& path, const Grid& g, const Surface& f) {
    if (f.size() != g.ncol()) throw Error(ErrorKind::Config, "write_surface: size mismatch");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::Config, "cannot write " + path);
    std::ostringstream h;
    h.precision(17);
    h << "CNSS1 " << g.n1 << ' ' << g.n2 << ' ' << g.l1 << ' ' << g.l2 << '\n';
    os << h.str();
    write_payload(os, f);
}

Surface read_surface(const std::string& path, Grid& g) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::Config, "cannot read " + path);
    std::istringstream h(header_line(is, path));
    std::string magic;
    h >> magic;
    if (magic != "CNSS1") throw Error(ErrorKind::Config, path + ": bad magic '" + magic + "'");
    Grid r = g;
    if (!(h >> r.n1 >> r.n2 >> r.l1 >> r.l2)) throw Error(ErrorKind::Config, path + ": bad header");
    if (r.n1 < 4 || r.n1 % 2 || r.n2 < 4 || r.n2 % 2) throw Error(ErrorKind::Config, path + ": bad sizes");
    Surface f(r.ncol());
    read_payload(is, f, path);
    g.n1 = r.n1; g.n2 = r.n2; g.l1 = r.l1; g.l2 = r.l2;
    return f;
}

}  // namespace cns
