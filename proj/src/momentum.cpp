#include "adsnull/momentum.hpp"

#include <cmath>
#include <cstddef>

#include "adsnull/errors.hpp"

namespace adsnull {

namespace {

MomentumSample make_sample(double m, double s, double k, double k1, double k2, double k3)
{
    MomentumSample ms;
    ms.s = s;
    ms.k = k;
    ms.k1 = k1;
    ms.k2 = k2;
    ms.k3 = k3;
    ms.x1 = 0.25 * k2 - 0.5 * k * k + 0.5 * m * k + 1.0;
    ms.x2 = -0.25 * k1;
    ms.x4 = 0.5 * (m + k);
    ms.x5 = 1.0;
    return ms;
}

} // namespace

MomentumLift momentum_lift(double m, const Potential &p, const std::vector<double> &s_grid)
{
    MomentumLift lift;
    lift.m = m;
    lift.analytic = true;
    lift.samples.reserve(s_grid.size());
    for (const double s : s_grid) {
        if (!p.in_domain(s)) {
            throw OutOfDomainError("momentum_lift: grid point outside the potential domain");
        }
        const HDerivs d = p.eval(s);
        // k = 2h + m/3, so the jets are just doubled.
        lift.samples.push_back(
            make_sample(m, s, 2.0 * d.h + m / 3.0, 2.0 * d.h1, 2.0 * d.h2, 2.0 * d.h3));
    }
    return lift;
}

MomentumLift momentum_lift_from_samples(double m, const std::vector<double> &s_grid,
                                        const std::vector<double> &k_values)
{
    const std::size_t n = s_grid.size();
    if (n != k_values.size() || n < 7) {
        throw GridTooCoarseError("momentum_lift_from_samples: need >= 7 matched samples");
    }
    const double h = s_grid[1] - s_grid[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (std::abs((s_grid[i + 1] - s_grid[i]) - h) > 1e-9 * std::abs(h)) {
            throw GridTooCoarseError("momentum_lift_from_samples: grid must be uniform");
        }
    }

    MomentumLift lift;
    lift.m = m;
    lift.analytic = false;
    // Centered 4th-order stencils for k', k'' and a centered k''' stencil; the
    // three samples lost at each edge keep the jets uniformly accurate.
    for (std::size_t i = 3; i + 3 < n; ++i) {
        const double km3 = k_values[i - 3], km2 = k_values[i - 2], km1 = k_values[i - 1];
        const double k0 = k_values[i];
        const double kp1 = k_values[i + 1], kp2 = k_values[i + 2], kp3 = k_values[i + 3];
        const double k1 = (km2 - 8.0 * km1 + 8.0 * kp1 - kp2) / (12.0 * h);
        const double k2 = (-km2 + 16.0 * km1 - 30.0 * k0 + 16.0 * kp1 - kp2) / (12.0 * h * h);
        const double k3 =
            (km3 - 8.0 * km2 + 13.0 * km1 - 13.0 * kp1 + 8.0 * kp2 - kp3) / (8.0 * h * h * h);
        lift.samples.push_back(make_sample(m, s_grid[i], k0, k1, k2, k3));
    }
    return lift;
}

std::vector<ElResiduals> el_system_residuals(const MomentumLift &lift)
{
    const double m = lift.m;
    std::vector<ElResiduals> out;
    out.reserve(lift.samples.size());
    for (const MomentumSample &y : lift.samples) {
        // x1' and x2' follow from the stored jets: x1' = k'''/4 - k k' + m k'/2
        // and x2' = -k''/4.
        const double x1p = 0.25 * y.k3 - y.k * y.k1 + 0.5 * m * y.k1;
        const double x2p = -0.25 * y.k2;
        ElResiduals r;
        r.r1 = x1p + 2.0 * y.k * y.x2;
        r.r2 = x2p + (0.5 * y.k * y.k - 0.5 * m * y.k - 1.0 + y.x1);
        r.r3 = y.k1 + 4.0 * y.x2;
        out.push_back(r);
    }
    return out;
}

} // namespace adsnull
