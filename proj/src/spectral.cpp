#include "cns/spectral.hpp"

#include <fftw3.h>

#include <cstring>

#include "cns/error.hpp"

namespace cns {

struct Spectral::Plans {
    fftw_plan vf = nullptr, vb = nullptr, sf = nullptr, sb = nullptr;
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
};

Spectral::Spectral(const Grid& g) : g_(g), n1_(g.n1), n2_(g.n2), nh_(g.n2 / 2 + 1), p_(new Plans) {
    g.validate();
    const int nm = n1_ * nh_;
    k1_.resize(nm); k2_.resize(nm); kt1_.resize(nm); kt2_.resize(nm);
    for (int i1 = 0; i1 < n1_; ++i1) {
        int s1 = i1 <= n1_ / 2 ? i1 : i1 - n1_;
        for (int i2 = 0; i2 < nh_; ++i2) {
            int m = i1 * nh_ + i2;
            k1_[m] = 2 * M_PI / g.l1 * s1;
            k2_[m] = 2 * M_PI / g.l2 * i2;
            kt1_[m] = (i1 == n1_ / 2) ? 0.0 : k1_[m];
            kt2_[m] = (i2 == n2_ / 2) ? 0.0 : k2_[m];
        }
    }
    const int nz = g.nz;
    p_->rbuf = fftw_alloc_real(std::size_t(n1_) * n2_ * nz);
    p_->cbuf = fftw_alloc_complex(std::size_t(nm) * nz);
    int n[2] = {n1_, n2_};
    p_->vf = fftw_plan_many_dft_r2c(2, n, nz, p_->rbuf, nullptr, nz, 1, p_->cbuf, nullptr, nz, 1, FFTW_ESTIMATE);
    p_->vb = fftw_plan_many_dft_c2r(2, n, nz, p_->cbuf, nullptr, nz, 1, p_->rbuf, nullptr, nz, 1, FFTW_ESTIMATE);
    p_->sf = fftw_plan_dft_r2c_2d(n1_, n2_, p_->rbuf, p_->cbuf, FFTW_ESTIMATE);
    p_->sb = fftw_plan_dft_c2r_2d(n1_, n2_, p_->cbuf, p_->rbuf, FFTW_ESTIMATE);
    if (!p_->vf || !p_->vb || !p_->sf || !p_->sb) throw Error(ErrorKind::Numeric, "FFTW planning failed");
}

Spectral::~Spectral() {
    fftw_destroy_plan(p_->vf);
    fftw_destroy_plan(p_->vb);
    fftw_destroy_plan(p_->sf);
    fftw_destroy_plan(p_->sb);
    fftw_free(p_->rbuf);
    fftw_free(p_->cbuf);
}

CField Spectral::forward(const Field& f) const {
    if (f.size() != g_.size()) throw Error(ErrorKind::Numeric, "Spectral::forward size mismatch");
    std::memcpy(p_->rbuf, f.data(), f.size() * sizeof(double));
    fftw_execute(p_->vf);
    CField c(std::size_t(nmodes()) * g_.nz);
    std::memcpy(reinterpret_cast<void*>(c.data()), p_->cbuf, c.size() * sizeof(cplx));
    return c;
}

Field Spectral::backward(const CField& c) const {
    std::memcpy(p_->cbuf, reinterpret_cast<const void*>(c.data()), c.size() * sizeof(cplx));
    fftw_execute(p_->vb);
    Field f(g_.size());
    const double s = 1.0 / (double(n1_) * n2_);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = p_->rbuf[i] * s;
    return f;
}

CField Spectral::forward_s(const Surface& f) const {
    if (f.size() != g_.ncol()) throw Error(ErrorKind::Numeric, "Spectral::forward_s size mismatch");
    std::memcpy(p_->rbuf, f.data(), f.size() * sizeof(double));
    fftw_execute(p_->sf);
    CField c(nmodes());
    std::memcpy(reinterpret_cast<void*>(c.data()), p_->cbuf, c.size() * sizeof(cplx));
    return c;
}

Surface Spectral::backward_s(const CField& c) const {
    std::memcpy(p_->cbuf, reinterpret_cast<const void*>(c.data()), c.size() * sizeof(cplx));
    fftw_execute(p_->sb);
    Surface f(g_.ncol());
    const double s = 1.0 / (double(n1_) * n2_);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = p_->rbuf[i] * s;
    return f;
}

cplx Spectral::symbol(int m, int a1, int a2) const {
    const cplx I(0, 1);
    double q1 = (a1 % 2) ? kt1_[m] : k1_[m];
    double q2 = (a2 % 2) ? kt2_[m] : k2_[m];
    return std::pow(I * q1, a1) * std::pow(I * q2, a2);
}

Field Spectral::apply(const CField& c, int a1, int a2) const {
    CField d(c.size());
    const int nz = g_.nz;
    for (int m = 0; m < nmodes(); ++m) {
        cplx s = symbol(m, a1, a2);
        for (int k = 0; k < nz; ++k) d[std::size_t(m) * nz + k] = s * c[std::size_t(m) * nz + k];
    }
    return backward(d);
}

Surface Spectral::apply_s(const CField& c, int a1, int a2) const {
    CField d(c.size());
    for (int m = 0; m < nmodes(); ++m) d[m] = symbol(m, a1, a2) * c[m];
    return backward_s(d);
}

Field Spectral::dh(const Field& f, int a1, int a2) const { return apply(forward(f), a1, a2); }

Surface Spectral::dh_s(const Surface& f, int a1, int a2) const { return apply_s(forward_s(f), a1, a2); }

std::vector<Field> Spectral::dh_many(const Field& f, const std::vector<std::pair<int, int>>& orders) const {
    CField c = forward(f);
    std::vector<Field> out;
    out.reserve(orders.size());
    for (auto [a1, a2] : orders) out.push_back(apply(c, a1, a2));
    return out;
}

}  // namespace cns
