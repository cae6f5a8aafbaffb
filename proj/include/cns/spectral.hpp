#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "cns/grid.hpp"

namespace cns {

using cplx = std::complex<double>;
using CField = std::vector<cplx>;  // (m)*Nz+k with m = i1*(N2/2+1)+i2

// Horizontal Fourier transforms of slab and surface fields.
// forward is unnormalized, backward divides by N1*N2.
class Spectral {
public:
    explicit Spectral(const Grid& g);
    ~Spectral();
    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;

    const Grid& grid() const { return g_; }
    int nmodes() const { return n1_ * nh_; }
    int nh() const { return nh_; }

    CField forward(const Field& f) const;
    Field backward(const CField& c) const;
    CField forward_s(const Surface& f) const;
    Surface backward_s(const CField& c) const;

    // wavenumbers of mode m; kt* are zero at the Nyquist index (odd-derivative symbol)
    double k1(int m) const { return k1_[m]; }
    double k2(int m) const { return k2_[m]; }
    double kt1(int m) const { return kt1_[m]; }
    double kt2(int m) const { return kt2_[m]; }
    double ksq(int m) const { return k1_[m] * k1_[m] + k2_[m] * k2_[m]; }
    // symbol of d1^a1 d2^a2
    cplx symbol(int m, int a1, int a2) const;

    // horizontal derivative d1^a1 d2^a2 (spectral)
    Field dh(const Field& f, int a1, int a2) const;
    Surface dh_s(const Surface& f, int a1, int a2) const;
    // several derivatives of one field with a single forward transform
    std::vector<Field> dh_many(const Field& f, const std::vector<std::pair<int, int>>& orders) const;
    Field apply(const CField& c, int a1, int a2) const;
    Surface apply_s(const CField& c, int a1, int a2) const;

private:
    Grid g_;
    int n1_, n2_, nh_;
    std::vector<double> k1_, k2_, kt1_, kt2_;
    struct Plans;
    std::unique_ptr<Plans> p_;
};

}  // namespace cns
