#include "cns/banded.hpp"

#include <complex>
#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <string>

#include "cns/error.hpp"

namespace cns {

BandLU::BandLU(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), ab_(std::size_t(ld_) * n), piv_(n) {}

std::complex<double>& BandLU::at(int i, int j) {
    if (j - i > ku_ || i - j > kl_ || i < 0 || j < 0 || i >= n_ || j >= n_)
        throw Error(ErrorKind::Numeric, "BandLU: entry outside band");
    // column-major, row index kl+ku+i-j inside column j
    return ab_[std::size_t(j) * ld_ + kl_ + ku_ + i - j];
}

void BandLU::add(int i, int j, std::complex<double> v) { at(i, j) += v; }
void BandLU::set(int i, int j, std::complex<double> v) { at(i, j) = v; }

void BandLU::clear_row(int i) {
    for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j) at(i, j) = 0;
}

void BandLU::factor() {
    lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_,
                                     reinterpret_cast<lapack_complex_double*>(ab_.data()), ld_, piv_.data());
    if (info != 0) throw Error(ErrorKind::Numeric, "BandLU: singular system (info=" + std::to_string(info) + ")");
    factored_ = true;
}

void BandLU::solve(std::vector<std::complex<double>>& rhs) const {
    lapack_int info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1,
                                     reinterpret_cast<const lapack_complex_double*>(ab_.data()), ld_,
                                     piv_.data(), reinterpret_cast<lapack_complex_double*>(rhs.data()), n_);
    if (info != 0) throw Error(ErrorKind::Numeric, "BandLU: solve failed");
}

}  // namespace cns
