#pragma once

#include <string>
#include <vector>

#include "cns/spectral.hpp"

namespace cns {

// flat-state trajectory, level n at t = n dt; q[0] is not used by any norm
struct Trajectory {
    double dt = 1e-3;
    std::vector<Field> w, h, q;
    std::vector<Vec3> v;
    std::vector<Surface> eta;
    std::size_t levels() const { return w.size(); }
};
Trajectory constant_trajectory(const Grid& g, std::size_t levels, double dt);
// a - b level by level
Trajectory difference(const Trajectory& a, const Trajectory& b);

// sup H2, sup of f_t in L2, L2_t H3, L2_t H1 of f_t
struct TripleNorm {
    double sup_h2 = 0, sup_t_l2 = 0, l2_h3 = 0, l2_t_h1 = 0;
    double total() const { return sup_h2 + sup_t_l2 + l2_h3 + l2_t_h1; }
};
TripleNorm triple_norm_parts(const Spectral& sp, const std::vector<Field>& f, double dt);
TripleNorm triple_norm_parts(const Spectral& sp, const std::vector<Vec3>& f, double dt);
double triple_norm(const Spectral& sp, const std::vector<Field>& f, double dt);

struct QuintupleNorm {
    TripleNorm w, h, v;
    double grad_q_sup_l2 = 0, grad_q_l2_h1 = 0;
    double eta_sup_h3 = 0, grad_eta_l2_h52 = 0, ext_hessian_l2_h2 = 0;
    // multiplier surrogates of the dual-space pieces (s = -1/2 on Gamma, s = -1 in the slab)
    double grad_vt_trace_surrogate = 0, grad_qt_surrogate = 0;

    double primal() const;
    double surrogate() const { return grad_vt_trace_surrogate + grad_qt_surrogate; }
    double total() const { return primal() + surrogate(); }
};
QuintupleNorm quintuple_norm(const Spectral& sp, const Trajectory& tr);

// |v|^2 + gamma |eta|^2 + sigma |grad0 eta|^2
double stokes_energy(const Spectral& sp, const Vec3& v, const Surface& eta, double gamma, double sigma);

// |w0|_H2 + |h0|_H2 + |v0|_H2 + |eta0|_H3
double data_norm(const Spectral& sp, const Field& w0, const Field& h0, const Vec3& v0, const Surface& eta0);

struct EstimateCheck {
    double lhs = 0, rhs = 0;
    bool pass = false;
};
// sup-plus-integral left side in flat variables against c_cal * data^2
EstimateCheck theorem_estimate_check(const Spectral& sp, const Trajectory& tr, double data, double c_cal);

// one row per level
struct EnergyRow {
    double t, stokes_energy, w_h2, h_h2, v_h2, grad_q_l2, eta_h3;
};
std::vector<EnergyRow> energy_rows(const Spectral& sp, const Trajectory& tr, double gamma, double sigma);
void write_energy_csv(const std::string& path, const std::vector<EnergyRow>& rows, const QuintupleNorm& summary);

}  // namespace cns
