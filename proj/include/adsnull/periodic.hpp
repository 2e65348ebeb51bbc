#ifndef ADSNULL_PERIODIC_HPP
#define ADSNULL_PERIODIC_HPP

#include <optional>
#include <utility>
#include <vector>

#include "adsnull/potential.hpp"

namespace adsnull {

struct QuasiPeriodicParams {
    double m;
    double ell; // in (0,1)
    double e1;  // > 0
};

// Q(t; ell, e1) = 4t^3 - 12(l^4-l^2+1) e1^2/(2-l^2)^2 t + 4(2l^4+l^2-1) e1^3/(2-l^2)^2.
double q_cubic(double t, double ell, double e1);

struct HQpValue {
    double h;
    double h1;
};

// The sn^2 potential and its derivative.
HQpValue h_qp(double s, double ell, double e1);

// Minimal period p = 2 sqrt((2-l^2)/(3 e1)) K(l).
double period_p(double ell, double e1);

// W membership: Q(m/3 + 1) < 0 and Q(m/3 - 1) < 0.
bool in_w(const QuasiPeriodicParams &qp);

// rho_pm = (1/2) sqrt(-Q(m/3 +- 1)); throws NotInW outside W.
std::pair<double, double> rho_pm(const QuasiPeriodicParams &qp);

// script-P integrals int_0^s rho_pm/(h(u) - (m/3 +- 1)) du.
std::pair<double, double> script_p(double s, const QuasiPeriodicParams &qp);

struct ClosureResult {
    int n;
    double error;
};

struct PeriodMapValue {
    double pi_plus;
    double pi_minus;
    double period;
    std::optional<ClosureResult> closure;
};

// Pi(m, ell, e1) = script_p(p).
PeriodMapValue period_map(const QuasiPeriodicParams &qp);

// Ground-truth closure predicate: smallest N <= n_max with
// ||gamma(s0 + N p) - gamma(s0)||_max < tol, checked at several base points.
std::optional<ClosureResult> closure_test(const QuasiPeriodicParams &qp, int n_max, double tol);

// Determinant of the centered-difference Jacobian of (Pi+, Pi-) in (ell, e1).
double jacobian_psi(const QuasiPeriodicParams &qp, double step = 1e-5);

struct FScanRow {
    double m;
    double f;     // 400 * Psi(m, 1/4, |m| + 10); NaN when out of W
    bool in_w;
};

std::vector<FScanRow> f_scan(const std::vector<double> &m_grid);

struct ClosedHit {
    QuasiPeriodicParams qp;
    int n;
    double closure_error;
    double newton_residual;
    double target_plus;
    double target_minus;
};

// Search for closed trajectories with multiplier m: rational targets for Pi
// (both plain and pi-normalized) solved by damped Newton, validated by
// closure_test.
std::vector<ClosedHit> find_closed(double m, int denom_bound, int n_max);

} // namespace adsnull

#endif
