#pragma once

#include <complex>
#include <vector>

namespace cns {

// complex general band matrix, LAPACK band storage, factored once and reused
class BandLU {
public:
    BandLU() = default;
    BandLU(int n, int kl, int ku);

    int size() const { return n_; }
    void add(int i, int j, std::complex<double> v);
    void set(int i, int j, std::complex<double> v);
    void clear_row(int i);
    void factor();
    bool factored() const { return factored_; }
    // overwrite rhs with the solution
    void solve(std::vector<std::complex<double>>& rhs) const;

private:
    std::complex<double>& at(int i, int j);
    int n_ = 0, kl_ = 0, ku_ = 0, ld_ = 0;
    std::vector<std::complex<double>> ab_;
    std::vector<int> piv_;
    bool factored_ = false;
};

}  // namespace cns
