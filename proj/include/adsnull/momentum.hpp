#ifndef ADSNULL_MOMENTUM_HPP
#define ADSNULL_MOMENTUM_HPP

#include <vector>

#include "adsnull/potential.hpp"

namespace adsnull {

// One sample of the momentum-space lift y = ((Gamma, k); x1, x2) with
// x3 = -x2, x4 = (m + k)/2 and x5 = 1 implied by the lift equations.
struct MomentumSample {
    double s;
    double k;
    double k1; // k'
    double k2; // k''
    double k3; // k'''
    double x1; // k''/4 - k^2/2 + m k/2 + 1
    double x2; // -k'/4
    double x4; // (m + k)/2
    double x5; // 1
};

struct MomentumLift {
    double m;
    bool analytic; // derivative jets are exact (vs finite-differenced)
    std::vector<MomentumSample> samples;
};

// Lift of the trajectory with reduced curvature from `p` (k = 2h + m/3),
// using the analytic derivative jets of the potential.
MomentumLift momentum_lift(double m, const Potential &p, const std::vector<double> &s_grid);

// Lift of an externally supplied curvature sample set; the derivative jets
// are reconstructed by centered finite differences (the grid must be uniform
// with at least seven points).
MomentumLift momentum_lift_from_samples(double m, const std::vector<double> &s_grid,
                                        const std::vector<double> &k_values);

// Residuals of the Euler-Lagrange Pfaffian system per sample:
//   r1 = x1' + 2 k x2
//   r2 = x2' + (k^2/2 - m k/2 - 1 + x1)
//   r3 = k' + 4 x2
struct ElResiduals {
    double r1;
    double r2;
    double r3;
};

std::vector<ElResiduals> el_system_residuals(const MomentumLift &lift);

} // namespace adsnull

#endif
