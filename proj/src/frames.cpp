#include "adsnull/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adsnull/errors.hpp"

namespace adsnull {

namespace {

const double pi = std::acos(-1.0);

enum class PhiCase { I, II, III };

// Per-sign analytic data shared by phi/R/D/frame evaluation.
struct SignPlan {
    double e;     // m/3 +- 1
    complex mu;   // (1/2) sqrt(P(e))
    PhiCase kase;
    complex shift;  // h(s) = wp(s + shift)
    complex v;      // wp-point with wp(v) = e, wp'(v) = 2 mu (Cases I, II)
    complex zeta_v; // zeta(v) (Case I)
    double a2 = 0;  // -1/(3e^2 - g2/4) (Case II)
};

complex principal_mu(double p_of_e)
{
    if (p_of_e >= 0.0) {
        return complex(0.5 * std::sqrt(p_of_e), 0);
    }
    return complex(0, 0.5 * std::sqrt(-p_of_e));
}

double cubic_p(double t, const Invariants &inv)
{
    return 4.0 * t * t * t - inv.g2 * t - inv.g3;
}

SignPlan make_plan(double m, const Potential &p, int sign)
{
    const Invariants inv = p.invariants();
    SignPlan plan;
    plan.e = m / 3.0 + (sign > 0 ? 1.0 : -1.0);
    plan.shift = p.shift();
    const double p_of_e = cubic_p(plan.e, inv);
    const double scale = std::max(1.0, std::abs(plan.e));
    const bool mu_zero = std::abs(p_of_e) < 1e-10 * scale * scale * scale;
    if (!mu_zero) {
        plan.mu = principal_mu(p_of_e);
        plan.kase = PhiCase::I;
        plan.v = inverse_wp_matching(complex(plan.e, 0), 2.0 * plan.mu, *p.engine());
        plan.zeta_v = p.engine()->all(plan.v).zeta;
        return plan;
    }
    plan.mu = complex(0, 0);
    if (inv.g2 == 0.0 && inv.g3 == 0.0) {
        plan.kase = PhiCase::III;
        return plan;
    }
    const double denom = 3.0 * plan.e * plan.e - inv.g2 / 4.0;
    if (std::abs(denom) < 1e-10 * std::max(1.0, std::abs(inv.g2))) {
        throw DoubleRootSingularityError("phi denominator 3e^2 - g2/4 vanishes (double root of P)");
    }
    plan.kase = PhiCase::II;
    plan.a2 = -1.0 / denom;
    plan.v = inverse_wp_matching(complex(plan.e, 0), complex(0, 0), *p.engine());
    return plan;
}

// Branch state carried along the s-walk: the square root sq = sqrt(h - e)
// and phi are continued, never recomputed on principal branches.
struct BranchState {
    double s;
    double h;
    double h1;
    complex sq;
    complex phi; // un-normalized (phi(s0) subtracted by callers)
};

complex phi_derivative(const SignPlan &plan, double h)
{
    const complex num = (plan.kase == PhiCase::I) ? plan.mu : complex(1, 0);
    return num / (h - plan.e);
}

// Raw closed-form phi, defined up to i*pi jumps in Case I.
complex phi_raw(const SignPlan &plan, const Potential &p, double s)
{
    switch (plan.kase) {
        case PhiCase::I: {
            const complex S = complex(s, 0) + plan.shift;
            const auto &we = *p.engine();
            const complex num = we.sigma(S - plan.v);
            const complex den = we.sigma(S + plan.v);
            return 0.5 * (std::log(num) - std::log(den)) + S * plan.zeta_v;
        }
        case PhiCase::II: {
            const complex S = complex(s, 0) + plan.shift;
            const complex z = p.engine()->all(S + plan.v).zeta;
            return plan.a2 * (z + plan.e * s);
        }
        case PhiCase::III:
            return complex(s * s * s / 3.0, 0);
    }
    return complex(0, 0);
}

BranchState branch_init(const SignPlan &plan, const Potential &p, double s)
{
    const HDerivs d = p.eval(s);
    if (std::abs(d.h - plan.e) < 1e-8) {
        throw BranchPointProximityError("h(s) too close to m/3 +- 1 at s = " + std::to_string(s));
    }
    BranchState st;
    st.s = s;
    st.h = d.h;
    st.h1 = d.h1;
    st.sq = std::sqrt(complex(d.h - plan.e, 0));
    st.phi = phi_raw(plan, p, s);
    return st;
}

// Advance the branch state to s_next (assumed one small step away).
BranchState branch_step(const SignPlan &plan, const Potential &p, const BranchState &prev, double s_next)
{
    const HDerivs d = p.eval(s_next);
    if (std::abs(d.h - plan.e) < 1e-8) {
        throw BranchPointProximityError("h(s) too close to m/3 +- 1 at s = " + std::to_string(s_next));
    }
    BranchState st;
    st.s = s_next;
    st.h = d.h;
    st.h1 = d.h1;
    const complex sq_p = std::sqrt(complex(d.h - plan.e, 0));
    st.sq = (std::abs(sq_p - prev.sq) <= std::abs(-sq_p - prev.sq)) ? sq_p : -sq_p;
    complex raw = phi_raw(plan, p, s_next);
    if (plan.kase == PhiCase::I) {
        const double ds = s_next - prev.s;
        const complex pred =
            prev.phi + 0.5 * ds * (phi_derivative(plan, prev.h) + phi_derivative(plan, d.h));
        const double k = std::round((pred - raw).imag() / pi);
        raw += complex(0, pi * k);
    }
    st.phi = raw;
    return st;
}

Mat2c make_r(const SignPlan &plan, const BranchState &st)
{
    const complex sq = st.sq;
    if (plan.kase == PhiCase::I) {
        const complex inv2mu = 1.0 / (2.0 * plan.mu);
        return Mat2c{{inv2mu * (-(st.h1 - 2.0 * plan.mu) / (2.0 * sq)), inv2mu * (-sq),
                      inv2mu * ((st.h1 + 2.0 * plan.mu) / (2.0 * sq)), inv2mu * sq}};
    }
    return Mat2c{{complex(1, 0), complex(0, 0), st.h1 / (2.0 * sq), sq}};
}

Mat2c make_d(const SignPlan &plan, const BranchState &st, const complex &phi0)
{
    const complex phi = st.phi - phi0;
    if (plan.kase == PhiCase::I) {
        return Mat2c{{std::exp(-phi), complex(0, 0), complex(0, 0), std::exp(phi)}};
    }
    return Mat2c{{1.0 / st.sq, phi, complex(0, 0), complex(1, 0)}};
}

// Walk the branch state from s0 through the sorted targets (ascending if
// dir > 0, descending if dir < 0), recording D(s) R(s) at each target.
void walk_frames(const SignPlan &plan, const Potential &p, const BranchState &origin,
                 const complex &phi0, const std::vector<double> &targets, int dir,
                 std::vector<Mat2c> &out)
{
    constexpr double max_step = 0.01;
    BranchState st = origin;
    for (const double target : targets) {
        const double start = st.s;
        const double span = std::abs(target - start);
        const int n = std::max(1, static_cast<int>(std::ceil(span / max_step)));
        for (int i = 1; i <= n; ++i) {
            st = branch_step(plan, p, st, start + (target - start) * i / n);
        }
        (void)dir;
        out.push_back(make_d(plan, st, phi0) * make_r(plan, st));
    }
}

struct Dopri5Result {
    Mat2d gamma;
};

// One Hamiltonian right-hand side Gamma' = Gamma * H(s).
Mat2d rhs(const Mat2d &g, double m, const Potential &p, int sign, double s)
{
    const double h = p.eval(s).h;
    const double q = 2.0 * h + m / 3.0 + (sign > 0 ? 1.0 : -1.0);
    const Mat2d H{{0, 1, q, 0}};
    return g * H;
}

// Adaptive Dormand-Prince 5(4) from (s_from, g) to s_to with determinant
// renormalization after every accepted step.
Mat2d dopri5(Mat2d g, double m, const Potential &p, int sign, double s_from, double s_to)
{
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    const double rel_tol = 1e-10;
    const double abs_tol = 1e-12;

    const double span = s_to - s_from;
    if (std::abs(span) < 1e-12 * (1.0 + std::abs(s_from))) {
        return g;
    }
    const double dir = (span > 0) ? 1.0 : -1.0;
    double s = s_from;
    double hstep = dir * std::min(1e-3, std::abs(span));
    Mat2d k1 = rhs(g, m, p, sign, s);
    while (dir * (s_to - s) > 0) {
        if (std::abs(hstep) < 1e-14 * (1.0 + std::abs(s))) {
            throw StepSizeUnderflowError("step size underflow at s = " + std::to_string(s));
        }
        if (dir * (s + hstep - s_to) > 0) {
            hstep = s_to - s;
        }
        const Mat2d k2 = rhs(g + hstep * a21 * k1, m, p, sign, s + c2 * hstep);
        const Mat2d k3 = rhs(g + hstep * (a31 * k1 + a32 * k2), m, p, sign, s + c3 * hstep);
        const Mat2d k4 = rhs(g + hstep * (a41 * k1 + a42 * k2 + a43 * k3), m, p, sign, s + c4 * hstep);
        const Mat2d k5 =
            rhs(g + hstep * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), m, p, sign, s + c5 * hstep);
        const Mat2d k6 = rhs(g + hstep * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), m, p,
                             sign, s + hstep);
        const Mat2d g5 = g + hstep * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Mat2d k7 = rhs(g5, m, p, sign, s + hstep);
        const Mat2d err_m =
            hstep * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double scale = abs_tol + rel_tol * std::max(max_abs(g), max_abs(g5));
        const double err = max_abs(err_m) / scale;
        if (err <= 1.0) {
            s += hstep;
            g = g5;
            const double det = g.det();
            if (det <= 0.0) {
                throw NonConvergenceError("frame determinant collapsed during integration");
            }
            g = (1.0 / std::sqrt(det)) * g;
            k1 = rhs(g, m, p, sign, s); // FSAL invalidated by renormalization
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
        hstep *= fac;
    }
    return g;
}

std::vector<double> prepare_grid(std::vector<double> grid, double s0)
{
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.empty() || s0 < grid.front() - 1e-12 || s0 > grid.back() + 1e-12) {
        throw OutOfDomainError("base point s0 outside the grid range");
    }
    return grid;
}

} // namespace

MuPair mu_pm(double m, const Invariants &inv)
{
    return MuPair{principal_mu(cubic_p(m / 3.0 + 1.0, inv)),
                  principal_mu(cubic_p(m / 3.0 - 1.0, inv))};
}

std::pair<complex, complex> find_w_pm(double m, const Potential &p)
{
    std::array<complex, 2> w;
    int idx = 0;
    for (const int sign : {+1, -1}) {
        const SignPlan plan = make_plan(m, p, sign);
        if (plan.kase == PhiCase::III) {
            throw InfiniteWError("w is at infinity when m = -+3 and g2 = g3 = 0");
        }
        w[idx++] = plan.v - plan.shift;
    }
    return {w[0], w[1]};
}

complex phi_pm(double m, const Potential &p, int sign, double s0, double s)
{
    const SignPlan plan = make_plan(m, p, sign);
    if (plan.kase != PhiCase::I) {
        return phi_raw(plan, p, s) - phi_raw(plan, p, s0);
    }
    constexpr double max_step = 0.01;
    BranchState st = branch_init(plan, p, s0);
    const complex phi0 = st.phi;
    const double span = s - s0;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / max_step)));
    for (int i = 1; i <= n; ++i) {
        st = branch_step(plan, p, st, s0 + span * i / n);
    }
    return st.phi - phi0;
}

Mat2c R_pm(double m, const Potential &p, int sign, double s)
{
    const SignPlan plan = make_plan(m, p, sign);
    return make_r(plan, branch_init(plan, p, s));
}

Mat2c D_pm(double m, const Potential &p, int sign, double s0, double s)
{
    const SignPlan plan = make_plan(m, p, sign);
    BranchState st = branch_init(plan, p, s);
    st.phi = phi_pm(m, p, sign, s0, s);
    return make_d(plan, st, complex(0, 0));
}

Mat2d H_pm(double m, const Potential &p, int sign, double s)
{
    const double h = p.eval(s).h;
    return Mat2d{{0, 1, 2.0 * h + m / 3.0 + (sign > 0 ? 1.0 : -1.0), 0}};
}

FramePair gamma_frame(double m, const Potential &p, double s0, std::vector<double> grid)
{
    grid = prepare_grid(std::move(grid), s0);
    FramePair fp;
    fp.m = m;
    fp.s0 = s0;

    // Split targets around the base point; both walks start from s0.
    std::vector<double> right, left;
    for (const double s : grid) {
        (s >= s0 ? right : left).push_back(s);
    }
    std::sort(left.rbegin(), left.rend());

    std::array<std::vector<Mat2c>, 2> frames; // ascending order per sign
    double worst_imag = 0;
    int idx = 0;
    for (const int sign : {+1, -1}) {
        const SignPlan plan = make_plan(m, p, sign);
        const BranchState origin = branch_init(plan, p, s0);
        const complex phi0 = origin.phi;
        const Mat2c m0 = (make_d(plan, origin, phi0) * make_r(plan, origin)).inverse();

        std::vector<Mat2c> got_right, got_left;
        walk_frames(plan, p, origin, phi0, right, +1, got_right);
        walk_frames(plan, p, origin, phi0, left, -1, got_left);

        std::vector<Mat2c> &dst = frames[idx++];
        for (auto it = got_left.rbegin(); it != got_left.rend(); ++it) {
            dst.push_back(m0 * *it);
        }
        for (const auto &dr : got_right) {
            dst.push_back(m0 * dr);
        }
        for (const auto &g : dst) {
            worst_imag = std::max(worst_imag, max_imag(g));
        }
    }
    fp.max_imag = worst_imag;

    fp.samples.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        FrameSample smp;
        smp.s = grid[i];
        smp.gamma_plus = real_part(frames[0][i]);
        smp.gamma_minus = real_part(frames[1][i]);
        smp.gamma = smp.gamma_plus * smp.gamma_minus.inverse();
        smp.k = 2.0 * p.eval(grid[i]).h + m / 3.0;
        fp.samples.push_back(smp);
    }
    return fp;
}

FramePair ode_frame_oracle(double m, const Potential &p, double s0, std::vector<double> grid)
{
    grid = prepare_grid(std::move(grid), s0);
    FramePair fp;
    fp.m = m;
    fp.s0 = s0;

    std::array<std::vector<Mat2d>, 2> frames;
    int idx = 0;
    for (const int sign : {+1, -1}) {
        std::vector<double> right, left;
        for (const double s : grid) {
            (s >= s0 ? right : left).push_back(s);
        }
        std::sort(left.rbegin(), left.rend());

        std::vector<Mat2d> got_left;
        Mat2d g = Mat2d::identity();
        double s_cur = s0;
        for (const double s : left) {
            g = dopri5(g, m, p, sign, s_cur, s);
            s_cur = s;
            got_left.push_back(g);
        }
        std::vector<Mat2d> &dst = frames[idx++];
        for (auto it = got_left.rbegin(); it != got_left.rend(); ++it) {
            dst.push_back(*it);
        }
        g = Mat2d::identity();
        s_cur = s0;
        for (const double s : right) {
            g = dopri5(g, m, p, sign, s_cur, s);
            s_cur = s;
            dst.push_back(g);
        }
    }

    fp.samples.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        FrameSample smp;
        smp.s = grid[i];
        smp.gamma_plus = frames[0][i];
        smp.gamma_minus = frames[1][i];
        smp.gamma = smp.gamma_plus * smp.gamma_minus.inverse();
        smp.k = 2.0 * p.eval(grid[i]).h + m / 3.0;
        fp.samples.push_back(smp);
    }
    return fp;
}

GeometryReport verify_geometry(const FramePair &fp)
{
    const auto &ss = fp.samples;
    if (ss.size() < 5) {
        throw GridTooCoarseError("need at least 5 samples for finite differencing");
    }
    for (std::size_t i = 1; i < ss.size(); ++i) {
        if (ss[i].s - ss[i - 1].s > 0.05) {
            throw GridTooCoarseError("grid spacing exceeds 0.05");
        }
    }

    GeometryReport rep{0, 0, 0, 0};
    for (const auto &smp : ss) {
        rep.max_det_err = std::max(rep.max_det_err, std::abs(smp.gamma.det() - 1.0));
    }

    // Uniform grids get the 4th-order five-point stencil; otherwise fall back
    // to the second-order non-uniform three-point derivative.
    bool uniform = true;
    const double h0 = ss[1].s - ss[0].s;
    for (std::size_t i = 1; i + 1 < ss.size(); ++i) {
        if (std::abs((ss[i + 1].s - ss[i].s) - h0) > 1e-9 * std::abs(h0)) {
            uniform = false;
            break;
        }
    }
    auto deriv = [&](auto getter, std::size_t i) {
        if (uniform && i >= 2 && i + 2 < ss.size()) {
            return (1.0 / (12.0 * h0)) *
                   (getter(ss[i - 2]) - 8.0 * getter(ss[i - 1]) + 8.0 * getter(ss[i + 1]) -
                    getter(ss[i + 2]));
        }
        const double x0 = ss[i - 1].s, x1 = ss[i].s, x2 = ss[i + 1].s;
        const double c0 = (x1 - x2) / ((x0 - x1) * (x0 - x2));
        const double c1 = 1.0 / (x1 - x0) + 1.0 / (x1 - x2);
        const double c2 = (x1 - x0) / ((x2 - x0) * (x2 - x1));
        return c0 * getter(ss[i - 1]) + c1 * getter(ss[i]) + c2 * getter(ss[i + 1]);
    };
    for (std::size_t i = 2; i + 2 < ss.size(); ++i) {
        const Mat2d dg = deriv([](const FrameSample &x) { return x.gamma; }, i);
        rep.max_nullity =
            std::max(rep.max_nullity, std::abs((ss[i].gamma.inverse() * dg).det()));
        const Mat2d dgp = deriv([](const FrameSample &x) { return x.gamma_plus; }, i);
        const Mat2d A = ss[i].gamma_plus.inverse() * dgp;
        const double omega = A(0, 1);
        rep.max_omega_err = std::max(rep.max_omega_err, std::abs(omega - 1.0));
        rep.max_k_err = std::max(rep.max_k_err, std::abs(A(1, 0) / omega - 1.0 - ss[i].k));
    }
    return rep;
}

} // namespace adsnull
