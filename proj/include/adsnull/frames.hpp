#ifndef ADSNULL_FRAMES_HPP
#define ADSNULL_FRAMES_HPP

#include <utility>
#include <vector>

#include "adsnull/mat2.hpp"
#include "adsnull/potential.hpp"

namespace adsnull {

// mu_pm = (1/2) sqrt(P(m/3 +- 1)); each entry is real >= 0 or purely
// imaginary with positive imaginary part.
struct MuPair {
    complex mu_plus;
    complex mu_minus;
};

MuPair mu_pm(double m, const Invariants &inv);

// The unique points with h(w_pm) = m/3 +- 1 and h'(w_pm) = 2 mu_pm, in the
// h-coordinate (so h(s) = wp(s + shift) maps them to wp-points w + shift).
std::pair<complex, complex> find_w_pm(double m, const Potential &p);

// Closed-form antiderivative of mu/(h - (m/3 +- sign)) (or 1/(h - ...) when
// mu = 0), normalized so phi(s0) = 0 and branch-continued along [s0, s].
complex phi_pm(double m, const Potential &p, int sign, double s0, double s);

// The per-case gauge matrices, evaluated pointwise on principal branches.
Mat2c R_pm(double m, const Potential &p, int sign, double s);
Mat2c D_pm(double m, const Potential &p, int sign, double s0, double s);

// Hamiltonian [[0, 1], [2h + m/3 +- 1, 0]].
Mat2d H_pm(double m, const Potential &p, int sign, double s);

struct FrameSample {
    double s;
    Mat2d gamma_plus;
    Mat2d gamma_minus;
    Mat2d gamma;
    double k; // 2h + m/3
};

struct FramePair {
    double m;
    double s0;
    std::vector<FrameSample> samples;
    double max_imag = 0; // largest imaginary residue discarded during assembly
};

// Closed-form frames Gamma_pm(s) = R(s0)^-1 D(s0)^-1 D(s) R(s) and the
// trajectory gamma = Gamma_+ Gamma_-^-1, on the given grid.
FramePair gamma_frame(double m, const Potential &p, double s0, std::vector<double> grid);

// Independent check: integrate Gamma' = Gamma H_pm(s) from the identity at s0
// with an adaptive embedded Runge-Kutta pair, renormalizing det each step.
FramePair ode_frame_oracle(double m, const Potential &p, double s0, std::vector<double> grid);

struct GeometryReport {
    double max_det_err;   // max |det gamma - 1|
    double max_nullity;   // max |det(gamma^-1 gamma')| by finite differences
    double max_omega_err; // pseudo-arc normalization, recovered omega vs 1
    double max_k_err;     // recovered curvature vs the analytic column
};

GeometryReport verify_geometry(const FramePair &fp);

} // namespace adsnull

#endif
