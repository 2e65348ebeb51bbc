#include "adsnull/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "adsnull/errors.hpp"
#include "adsnull/frames.hpp"
#include "adsnull/mat2.hpp"
#include "adsnull/quadrature.hpp"

namespace adsnull {

namespace {

const double pi_const = std::acos(-1.0);

void check_params(double ell, double e1)
{
    if (!(ell > 0.0 && ell < 1.0)) {
        throw ParamOutOfRangeError("ell must lie in (0,1)");
    }
    if (!(e1 > 0.0)) {
        throw ParamOutOfRangeError("e1 must be positive");
    }
}

// Centered-difference Jacobian matrix of (Pi+, Pi-) in (ell, e1).
Mat2d psi_matrix(const QuasiPeriodicParams &qp, double step)
{
    const double d_ell = step;
    const double d_e1 = step * std::max(1.0, qp.e1);
    const QuasiPeriodicParams stencil[4] = {
        {qp.m, qp.ell + d_ell, qp.e1},
        {qp.m, qp.ell - d_ell, qp.e1},
        {qp.m, qp.ell, qp.e1 + d_e1},
        {qp.m, qp.ell, qp.e1 - d_e1},
    };
    for (const auto &pt : stencil) {
        if (!(pt.ell > 0.0 && pt.ell < 1.0 && pt.e1 > 0.0) || !in_w(pt)) {
            throw StencilLeavesWError("finite-difference stencil leaves W");
        }
    }
    const PeriodMapValue lp = period_map(stencil[0]);
    const PeriodMapValue lm = period_map(stencil[1]);
    const PeriodMapValue ep = period_map(stencil[2]);
    const PeriodMapValue em = period_map(stencil[3]);
    return Mat2d{{(lp.pi_plus - lm.pi_plus) / (2 * d_ell), (ep.pi_plus - em.pi_plus) / (2 * d_e1),
                  (lp.pi_minus - lm.pi_minus) / (2 * d_ell),
                  (ep.pi_minus - em.pi_minus) / (2 * d_e1)}};
}

} // namespace

double q_cubic(double t, double ell, double e1)
{
    check_params(ell, e1);
    const double l2 = ell * ell;
    const double d = 2.0 - l2;
    const double c1 = 12.0 * (l2 * l2 - l2 + 1.0) * e1 * e1 / (d * d);
    const double c0 = 4.0 * (2.0 * l2 * l2 + l2 - 1.0) * e1 * e1 * e1 / (d * d);
    return 4.0 * t * t * t - c1 * t + c0;
}

HQpValue h_qp(double s, double ell, double e1)
{
    check_params(ell, e1);
    const double l2 = ell * ell;
    const double d = 2.0 - l2;
    const double lam = std::sqrt(3.0 * e1 / d);
    const JacobiValues j = jacobi_elliptic(lam * s, ell);
    HQpValue out;
    out.h = e1 * (3.0 * l2 / d * j.sn * j.sn - (1.0 + l2) / d);
    out.h1 = e1 * 3.0 * l2 / d * 2.0 * j.sn * j.cn * j.dn * lam;
    return out;
}

double period_p(double ell, double e1)
{
    check_params(ell, e1);
    return 2.0 * std::sqrt((2.0 - ell * ell) / (3.0 * e1)) * elliptic_K(ell);
}

bool in_w(const QuasiPeriodicParams &qp)
{
    return q_cubic(qp.m / 3.0 + 1.0, qp.ell, qp.e1) < 0.0 &&
           q_cubic(qp.m / 3.0 - 1.0, qp.ell, qp.e1) < 0.0;
}

std::pair<double, double> rho_pm(const QuasiPeriodicParams &qp)
{
    if (!in_w(qp)) {
        throw NotInWError("(m, ell, e1) is not in W");
    }
    return {0.5 * std::sqrt(-q_cubic(qp.m / 3.0 + 1.0, qp.ell, qp.e1)),
            0.5 * std::sqrt(-q_cubic(qp.m / 3.0 - 1.0, qp.ell, qp.e1))};
}

std::pair<double, double> script_p(double s, const QuasiPeriodicParams &qp)
{
    const auto [rp, rm] = rho_pm(qp);
    const double ep = qp.m / 3.0 + 1.0;
    const double em = qp.m / 3.0 - 1.0;
    const double vp =
        rp * integrate([&](double u) { return 1.0 / (h_qp(u, qp.ell, qp.e1).h - ep); }, 0.0, s);
    const double vm =
        rm * integrate([&](double u) { return 1.0 / (h_qp(u, qp.ell, qp.e1).h - em); }, 0.0, s);
    return {vp, vm};
}

PeriodMapValue period_map(const QuasiPeriodicParams &qp)
{
    PeriodMapValue out;
    out.period = period_p(qp.ell, qp.e1);
    const auto [vp, vm] = script_p(out.period, qp);
    out.pi_plus = vp;
    out.pi_minus = vm;
    return out;
}

std::optional<ClosureResult> closure_test(const QuasiPeriodicParams &qp, int n_max, double tol)
{
    if (!in_w(qp)) {
        throw NotInWError("(m, ell, e1) is not in W");
    }
    const double p = period_p(qp.ell, qp.e1);
    const Potential pot = Potential::quasi_periodic(qp.ell, qp.e1);

    // One-period transfer matrices T+- at several base points; then
    // Gamma(s0 + N p) = T^N, so closure needs only matrix powers.  Multiple
    // base points guard against coincidental returns at a single s0.
    struct Base {
        Mat2d t_plus, t_minus;
        Mat2d a_plus, a_minus;
    };
    std::vector<Base> bases;
    for (const double frac : {0.0, 0.37, 0.71}) {
        const double s0 = frac * p;
        const FramePair fp = gamma_frame(qp.m, pot, s0, {s0, s0 + p});
        Base b;
        b.t_plus = fp.samples.back().gamma_plus;
        b.t_minus = fp.samples.back().gamma_minus;
        b.a_plus = Mat2d::identity();
        b.a_minus = Mat2d::identity();
        bases.push_back(b);
    }

    for (int n = 1; n <= n_max; ++n) {
        double err = 0;
        for (Base &b : bases) {
            b.a_plus = b.a_plus * b.t_plus;
            b.a_minus = b.a_minus * b.t_minus;
            err = std::max(err, max_abs(b.a_plus * b.a_minus.inverse() - Mat2d::identity()));
        }
        if (err < tol) {
            return ClosureResult{n, err};
        }
    }
    return std::nullopt;
}

double jacobian_psi(const QuasiPeriodicParams &qp, double step)
{
    return psi_matrix(qp, step).det();
}

std::vector<FScanRow> f_scan(const std::vector<double> &m_grid)
{
    std::vector<FScanRow> out;
    out.reserve(m_grid.size());
    for (const double m : m_grid) {
        FScanRow row;
        row.m = m;
        const QuasiPeriodicParams qp{m, 0.25, std::abs(m) + 10.0};
        row.in_w = in_w(qp);
        if (row.in_w) {
            row.f = 400.0 * jacobian_psi(qp);
        } else {
            row.f = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(row);
    }
    return out;
}

std::vector<ClosedHit> find_closed(double m, int denom_bound, int n_max)
{
    // Seed: the scan family first, then a coarse fallback sweep.
    QuasiPeriodicParams seed{m, 0.25, std::abs(m) + 10.0};
    if (!in_w(seed)) {
        bool found = false;
        for (double ell = 0.1; ell < 0.95 && !found; ell += 0.1) {
            for (double e1 = 1.0; e1 <= 40.0 && !found; e1 += 1.0) {
                const QuasiPeriodicParams cand{m, ell, e1};
                if (in_w(cand)) {
                    seed = cand;
                    found = true;
                }
            }
        }
        if (!found) {
            throw NoSeedError("no W seed found for this multiplier");
        }
    }

    const PeriodMapValue base = period_map(seed);

    // Rational targets near the seed value, under both normalizations.
    struct Target {
        double tp, tm;
    };
    std::vector<Target> targets;
    std::set<std::pair<long long, long long>> seen; // (quantized tp, tm)
    for (const double nu : {1.0, pi_const}) {
        const double xp = base.pi_plus / nu;
        const double xm = base.pi_minus / nu;
        for (int qp_den = 1; qp_den <= denom_bound; ++qp_den) {
            const long long pp = std::llround(xp * qp_den);
            if (pp == 0) {
                continue;
            }
            const double tp = nu * static_cast<double>(pp) / qp_den;
            if (std::abs(tp - base.pi_plus) > 0.25 * std::abs(base.pi_plus)) {
                continue;
            }
            for (int qm_den = 1; qm_den <= denom_bound; ++qm_den) {
                const long long pm = std::llround(xm * qm_den);
                if (pm == 0) {
                    continue;
                }
                const double tm = nu * static_cast<double>(pm) / qm_den;
                if (std::abs(tm - base.pi_minus) > 0.25 * std::abs(base.pi_minus)) {
                    continue;
                }
                const auto key = std::make_pair(std::llround(tp * 1e12), std::llround(tm * 1e12));
                if (seen.insert(key).second) {
                    targets.push_back(Target{tp, tm});
                }
            }
        }
    }
    std::sort(targets.begin(), targets.end(), [](const Target &x, const Target &y) {
        return std::make_pair(x.tp, x.tm) < std::make_pair(y.tp, y.tm);
    });

    std::vector<ClosedHit> hits;
    for (const Target &tg : targets) {
        QuasiPeriodicParams x = seed;
        PeriodMapValue cur = base;
        bool converged = false;
        for (int iter = 0; iter < 40; ++iter) {
            const double r1 = cur.pi_plus - tg.tp;
            const double r2 = cur.pi_minus - tg.tm;
            const double res = std::max(std::abs(r1), std::abs(r2));
            if (res < 1e-9) {
                converged = true;
                break;
            }
            Mat2d jac;
            try {
                jac = psi_matrix(x, 1e-6);
            } catch (const StencilLeavesWError &) {
                break;
            }
            const double det = jac.det();
            if (std::abs(det) < 1e-14) {
                break;
            }
            const double full_dl = -(jac(1, 1) * r1 - jac(0, 1) * r2) / det;
            const double full_de = -(-jac(1, 0) * r1 + jac(0, 0) * r2) / det;
            double lambda = 1.0;
            bool stepped = false;
            for (int half = 0; half < 8; ++half, lambda *= 0.5) {
                const QuasiPeriodicParams cand{m, x.ell + lambda * full_dl,
                                               x.e1 + lambda * full_de};
                if (!(cand.ell > 1e-3 && cand.ell < 1.0 - 1e-3 && cand.e1 > 1e-3) || !in_w(cand)) {
                    continue;
                }
                const PeriodMapValue pv = period_map(cand);
                const double new_res = std::max(std::abs(pv.pi_plus - tg.tp),
                                                std::abs(pv.pi_minus - tg.tm));
                if (new_res < res || lambda < 0.2) {
                    x = cand;
                    cur = pv;
                    stepped = true;
                    break;
                }
            }
            if (!stepped) {
                break;
            }
        }
        if (!converged) {
            continue;
        }
        const auto closure = closure_test(x, n_max, 1e-5);
        if (!closure) {
            continue;
        }
        const bool duplicate =
            std::any_of(hits.begin(), hits.end(), [&](const ClosedHit &h) {
                return std::abs(h.qp.ell - x.ell) < 1e-6 && std::abs(h.qp.e1 - x.e1) < 1e-6;
            });
        if (duplicate) {
            continue;
        }
        ClosedHit hit;
        hit.qp = x;
        hit.n = closure->n;
        hit.closure_error = closure->error;
        hit.newton_residual = std::max(std::abs(cur.pi_plus - tg.tp), std::abs(cur.pi_minus - tg.tm));
        hit.target_plus = tg.tp;
        hit.target_minus = tg.tm;
        hits.push_back(hit);
    }
    std::sort(hits.begin(), hits.end(), [](const ClosedHit &a, const ClosedHit &b) {
        return std::make_pair(a.n, a.qp.ell) < std::make_pair(b.n, b.qp.ell);
    });
    return hits;
}

} // namespace adsnull
