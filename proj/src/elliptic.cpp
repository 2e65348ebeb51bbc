#include "adsnull/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "adsnull/errors.hpp"

namespace adsnull {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
const double pi = std::acos(-1.0);

complex cbrt_principal(const complex &z)
{
    if (z == complex(0, 0)) {
        return {0, 0};
    }
    return std::pow(z, complex(1.0 / 3.0, 0));
}

} // namespace

double discriminant(const Invariants &inv)
{
    return 27.0 * inv.g3 * inv.g3 - inv.g2 * inv.g2 * inv.g2;
}

RootSet cubic_roots(const Invariants &inv)
{
    // 4t^3 - g2 t - g3 = 4 (t^3 + p t + q), p = -g2/4, q = -g3/4.
    const double p = -inv.g2 / 4.0;
    const double q = -inv.g3 / 4.0;
    std::array<complex, 3> r;
    if (p == 0.0 && q == 0.0) {
        r = {complex(0, 0), complex(0, 0), complex(0, 0)};
    } else {
        const complex disc = std::sqrt(complex(q * q + 4.0 * p * p * p / 27.0, 0));
        complex u3 = (-complex(q, 0) + disc) / 2.0;
        if (std::abs(u3) < 1e-3 * std::abs(q)) {
            u3 = (-complex(q, 0) - disc) / 2.0;
        }
        const complex u = cbrt_principal(u3);
        const complex omega(-0.5, std::sqrt(3.0) / 2.0);
        for (int k = 0; k < 3; ++k) {
            complex uk = u * std::pow(omega, k);
            r[static_cast<std::size_t>(k)] =
                (uk == complex(0, 0)) ? complex(0, 0) : uk - p / (3.0 * uk);
        }
    }

    const double delta = discriminant(inv);
    RootSet out;
    if (delta <= 0.0) {
        // All roots real; strip the numerical imaginary dust and sort descending.
        std::array<double, 3> rr;
        for (int k = 0; k < 3; ++k) {
            rr[static_cast<std::size_t>(k)] = r[static_cast<std::size_t>(k)].real();
        }
        std::sort(rr.begin(), rr.end(), std::greater<double>());
        for (int k = 0; k < 3; ++k) {
            out.roots[static_cast<std::size_t>(k)] = complex(rr[static_cast<std::size_t>(k)], 0);
            out.real_roots.push_back(rr[static_cast<std::size_t>(k)]);
        }
    } else {
        // One real root, one conjugate pair.
        std::sort(r.begin(), r.end(),
                  [](const complex &a, const complex &b) { return std::abs(a.imag()) < std::abs(b.imag()); });
        out.roots[0] = complex(r[0].real(), 0);
        complex c1 = r[1], c2 = r[2];
        if (c1.imag() < 0) {
            std::swap(c1, c2);
        }
        const double re = 0.5 * (c1.real() + c2.real());
        const double im = 0.5 * (c1.imag() - c2.imag());
        out.roots[1] = complex(re, im);
        out.roots[2] = complex(re, -im);
        out.real_roots.push_back(r[0].real());
    }
    return out;
}

bool HalfPeriods::omega1_finite() const
{
    return std::isfinite(omega1);
}

bool HalfPeriods::omega3_finite() const
{
    return std::isfinite(omega3.real()) && std::isfinite(omega3.imag());
}

HalfPeriods half_periods(const Invariants &inv)
{
    const double delta = discriminant(inv);
    HalfPeriods hp;
    if (inv.g2 == 0.0 && inv.g3 == 0.0) {
        hp.omega1 = inf;
        hp.omega3 = complex(0, inf);
        return hp;
    }
    const RootSet rs = cubic_roots(inv);
    if (delta < 0.0) {
        // Three distinct real roots e1 > e2 > e3.
        const double e1 = rs.real_roots[0], e2 = rs.real_roots[1], e3 = rs.real_roots[2];
        const double k = std::sqrt((e2 - e3) / (e1 - e3));
        const double kp = std::sqrt((e1 - e2) / (e1 - e3));
        const double K = elliptic_K(k);
        const double Kp = elliptic_K(kp);
        hp.omega1 = K / std::sqrt(e1 - e3);
        hp.omega3 = complex(0, Kp / std::sqrt(e1 - e3));
        hp.nu = Kp / K;
        return hp;
    }
    if (delta > 0.0) {
        // One real root c; rectangular lattice sheared: omega3 = (1 + i nu) omega1 / 2.
        const double c = rs.real_roots[0];
        const double H2 = std::sqrt(3.0 * c * c - inv.g2 / 4.0);
        const double k = std::sqrt(0.5 - 3.0 * c / (4.0 * H2));
        const double kp = std::sqrt(1.0 - k * k);
        const double K = elliptic_K(k);
        const double Kp = elliptic_K(kp);
        hp.omega1 = K / std::sqrt(H2);
        hp.nu = Kp / K;
        hp.omega3 = 0.5 * complex(1.0, *hp.nu) * hp.omega1;
        return hp;
    }
    // Delta = 0: double root a, simple root -2a, g3 = -8a^3.
    const double a = -std::cbrt(inv.g3 / 8.0);
    if (inv.g3 > 0.0) {
        hp.omega1 = pi / (2.0 * std::sqrt(-3.0 * a));
        hp.omega3 = complex(0, inf);
    } else {
        hp.omega1 = inf;
        hp.omega3 = complex(0, pi / (2.0 * std::sqrt(3.0 * a)));
    }
    return hp;
}

Weierstrass::Weierstrass(const Invariants &inv)
    : inv_(inv), roots_(cubic_roots(inv)), hp_(half_periods(inv))
{
    // Laurent coefficients c_k of wp(z) = z^-2 + sum_{k>=2} c_k z^{2k-2}.
    constexpr std::size_t K = 22;
    coeff_.assign(K + 1, 0.0);
    coeff_[2] = inv.g2 / 20.0;
    coeff_[3] = inv.g3 / 28.0;
    for (std::size_t k = 4; k <= K; ++k) {
        double s = 0;
        for (std::size_t m = 2; m + 2 <= k; ++m) {
            s += coeff_[m] * coeff_[k - m];
        }
        coeff_[k] = 3.0 * s / ((2.0 * static_cast<double>(k) + 1.0) * (static_cast<double>(k) - 3.0));
    }

    // Shortest nonzero lattice vector.
    cell_scale_ = inf;
    if (hp_.omega1_finite()) {
        cell_scale_ = std::min(cell_scale_, 2.0 * hp_.omega1);
    }
    if (hp_.omega3_finite()) {
        cell_scale_ = std::min(cell_scale_, 2.0 * std::abs(hp_.omega3));
        if (hp_.omega1_finite()) {
            cell_scale_ = std::min(cell_scale_, std::abs(2.0 * hp_.omega3 - complex(2.0 * hp_.omega1, 0)));
        }
    }

    // Series radius from the tail coefficients: |c_k| ~ R^{-2k} near the
    // convergence radius R, so the largest nonzero c_k estimates R.
    double rad = inf;
    for (std::size_t k = K; k >= K - 4; --k) {
        if (coeff_[k] != 0.0) {
            rad = 0.35 * std::pow(std::abs(coeff_[k]), -1.0 / (2.0 * static_cast<double>(k)));
            break;
        }
    }
    series_radius_ = std::min(rad, 0.45 * cell_scale_);

    // Bootstrap the eta constants (reduction never triggers at |omega_j|).
    if (hp_.omega1_finite()) {
        eta1_ = zeta(complex(hp_.omega1, 0));
    }
    if (hp_.omega3_finite()) {
        eta3_ = zeta(hp_.omega3);
    }
}

Weierstrass::Values Weierstrass::eval_small(const complex &z) const
{
    const complex z2 = z * z;
    complex p = 0, pp = 0, zt = 0, ls = 0;
    // Horner in z^2 over k = K..2.
    for (std::size_t k = coeff_.size() - 1; k >= 2; --k) {
        const double c = coeff_[k];
        const double dk = static_cast<double>(k);
        p = p * z2 + c;
        pp = pp * z2 + c * (2.0 * dk - 2.0);
        zt = zt * z2 + c / (2.0 * dk - 1.0);
        ls = ls * z2 + c / (2.0 * dk * (2.0 * dk - 1.0));
    }
    Values v;
    v.p = 1.0 / z2 + p * z2;
    v.p_prime = -2.0 / (z2 * z) + pp * z2 / z;
    v.zeta = 1.0 / z - zt * z2 * z;
    v.sigma = z * std::exp(-ls * z2 * z2);
    return v;
}

complex Weierstrass::reduce(const complex &z, long &m1, long &m3) const
{
    m1 = 0;
    m3 = 0;
    const bool f1 = hp_.omega1_finite();
    const bool f3 = hp_.omega3_finite();
    if (!f1 && !f3) {
        return z;
    }
    const double threshold = 2.5 * cell_scale_;
    if (std::abs(z) <= threshold) {
        return z;
    }
    if (f1 && f3) {
        const complex p1(2.0 * hp_.omega1, 0), p3 = 2.0 * hp_.omega3;
        const double det = p1.real() * p3.imag() - p3.real() * p1.imag();
        const double alpha = (z.real() * p3.imag() - p3.real() * z.imag()) / det;
        const double beta = (p1.real() * z.imag() - z.real() * p1.imag()) / det;
        m1 = std::lround(alpha);
        m3 = std::lround(beta);
        return z - static_cast<double>(m1) * p1 - static_cast<double>(m3) * p3;
    }
    if (f1) {
        m1 = std::lround(z.real() / (2.0 * hp_.omega1));
        return z - complex(2.0 * static_cast<double>(m1) * hp_.omega1, 0);
    }
    m3 = std::lround(z.imag() / (2.0 * hp_.omega3.imag()));
    return z - 2.0 * static_cast<double>(m3) * hp_.omega3;
}

double Weierstrass::lattice_distance(const complex &z) const
{
    long m1 = 0, m3 = 0;
    complex z0 = z;
    const bool f1 = hp_.omega1_finite();
    const bool f3 = hp_.omega3_finite();
    if (f1 || f3) {
        // Force a reduction regardless of the evaluation threshold.
        if (f1 && f3) {
            const complex p1(2.0 * hp_.omega1, 0), p3 = 2.0 * hp_.omega3;
            const double det = p1.real() * p3.imag() - p3.real() * p1.imag();
            const double alpha = (z.real() * p3.imag() - p3.real() * z.imag()) / det;
            const double beta = (p1.real() * z.imag() - z.real() * p1.imag()) / det;
            m1 = std::lround(alpha);
            m3 = std::lround(beta);
            z0 = z - static_cast<double>(m1) * p1 - static_cast<double>(m3) * p3;
        } else if (f1) {
            m1 = std::lround(z.real() / (2.0 * hp_.omega1));
            z0 = z - complex(2.0 * static_cast<double>(m1) * hp_.omega1, 0);
        } else {
            m3 = std::lround(z.imag() / (2.0 * hp_.omega3.imag()));
            z0 = z - 2.0 * static_cast<double>(m3) * hp_.omega3;
        }
    }
    double d = std::abs(z0);
    if (f1) {
        d = std::min({d, std::abs(z0 - complex(2.0 * hp_.omega1, 0)), std::abs(z0 + complex(2.0 * hp_.omega1, 0))});
    }
    if (f3) {
        d = std::min({d, std::abs(z0 - 2.0 * hp_.omega3), std::abs(z0 + 2.0 * hp_.omega3)});
    }
    if (f1 && f3) {
        const complex s = complex(2.0 * hp_.omega1, 0) + 2.0 * hp_.omega3;
        const complex t = complex(2.0 * hp_.omega1, 0) - 2.0 * hp_.omega3;
        d = std::min({d, std::abs(z0 - s), std::abs(z0 + s), std::abs(z0 - t), std::abs(z0 + t)});
    }
    return d;
}

Weierstrass::Values Weierstrass::all(const complex &z) const
{
    if (lattice_distance(z) < pole_exclusion) {
        throw PoleProximityError("argument within pole-exclusion radius of a lattice point");
    }
    long m1 = 0, m3 = 0;
    const complex z0 = reduce(z, m1, m3);

    int n_dup = 0;
    if (std::isfinite(series_radius_) && std::abs(z0) > series_radius_) {
        n_dup = static_cast<int>(std::ceil(std::log2(std::abs(z0) / series_radius_)));
    }
    const double scale = std::ldexp(1.0, -n_dup);
    Values v = eval_small(z0 * scale);
    for (int i = 0; i < n_dup; ++i) {
        const complex x = v.p, y = v.p_prime;
        const complex psi = 6.0 * x * x - inv_.g2 / 2.0; // wp''
        const complex lam = psi / y;
        const complex x2 = -2.0 * x + lam * lam / 4.0;
        const complex y2 = -y - lam * (x2 - x);
        const complex zt2 = 2.0 * v.zeta + lam / 2.0;
        const complex sg2 = -y * v.sigma * v.sigma * v.sigma * v.sigma;
        v = Values{x2, y2, zt2, sg2};
    }
    if (m1 != 0 || m3 != 0) {
        const complex eta_shift = 2.0 * static_cast<double>(m1) * eta1_ + 2.0 * static_cast<double>(m3) * eta3_;
        const complex om_shift = static_cast<double>(m1) * complex(hp_.omega1, 0) + static_cast<double>(m3) * hp_.omega3;
        const double sign = ((m1 + m3 + m1 * m3) % 2 == 0) ? 1.0 : -1.0;
        v.zeta += eta_shift;
        v.sigma = sign * v.sigma * std::exp(eta_shift * (z0 + om_shift));
    }
    return v;
}

complex Weierstrass::wp(const complex &z) const
{
    return all(z).p;
}

complex Weierstrass::wp_prime(const complex &z) const
{
    return all(z).p_prime;
}

complex Weierstrass::zeta(const complex &z) const
{
    return all(z).zeta;
}

complex Weierstrass::sigma(const complex &z) const
{
    return all(z).sigma;
}

complex wp(const complex &z, const Invariants &inv)
{
    return Weierstrass(inv).wp(z);
}

complex wp_prime(const complex &z, const Invariants &inv)
{
    return Weierstrass(inv).wp_prime(z);
}

complex weierstrass_zeta(const complex &z, const Invariants &inv)
{
    return Weierstrass(inv).zeta(z);
}

complex weierstrass_sigma(const complex &z, const Invariants &inv)
{
    return Weierstrass(inv).sigma(z);
}

double elliptic_K(double ell)
{
    if (!(ell >= 0.0 && ell < 1.0)) {
        throw ModulusOutOfRangeError("modulus must lie in [0, 1)");
    }
    double a = 1.0, g = std::sqrt(1.0 - ell * ell);
    for (int i = 0; i < 64 && std::abs(a - g) > 1e-17 * a; ++i) {
        const double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
    }
    return pi / (2.0 * a);
}

JacobiValues jacobi_elliptic(double u, double ell)
{
    if (!(ell >= 0.0 && ell < 1.0)) {
        throw ModulusOutOfRangeError("modulus must lie in [0, 1)");
    }
    if (ell < 1e-12) {
        return JacobiValues{std::sin(u), std::cos(u), 1.0};
    }
    // Descending AGM ladder (A&S 16.4).
    std::array<double, 32> a;
    std::array<double, 32> c;
    a[0] = 1.0;
    c[0] = ell;
    double b = std::sqrt(1.0 - ell * ell);
    std::size_t n = 0;
    while (std::abs(c[n]) > 1e-17 * a[n] && n + 1 < a.size()) {
        const double an = 0.5 * (a[n] + b);
        const double cn = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
        a[n] = an;
        c[n] = cn;
    }
    double phi = std::ldexp(a[n] * u, static_cast<int>(n));
    double phi_prev = phi;
    for (std::size_t i = n; i >= 1; --i) {
        phi_prev = phi;
        phi = 0.5 * (phi + std::asin(std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0)));
    }
    JacobiValues v;
    v.sn = std::sin(phi);
    v.cn = std::cos(phi);
    v.dn = v.cn / std::cos(phi_prev - phi);
    return v;
}

double jacobi_sn(double u, double ell)
{
    return jacobi_elliptic(u, ell).sn;
}

namespace {

// Newton refinement of wp(w) = c from the best grid seeds.
complex invert_wp_impl(const complex &c, const Weierstrass &we)
{
    const auto &hp = we.periods();
    const Invariants inv = we.invariants();

    if (inv.g2 == 0.0 && inv.g3 == 0.0) {
        if (c == complex(0, 0)) {
            throw NoFiniteSolutionError("wp is degenerate 1/z^2: value 0 is only attained at infinity");
        }
        return 1.0 / std::sqrt(c);
    }

    // Fundamental cell (or a substitute box when a period degenerates).
    double scale = 1.0;
    for (const auto &r : we.roots().roots) {
        scale = std::max(scale, std::abs(r));
    }
    scale = std::sqrt(scale);
    const complex b1 = hp.omega1_finite() ? complex(2.0 * hp.omega1, 0) : complex(8.0 / scale, 0);
    const complex b3 = hp.omega3_finite() ? 2.0 * hp.omega3 : complex(0, 8.0 / scale);

    constexpr int grid_n = 32;
    struct Seed {
        complex w;
        double score;
    };
    std::vector<Seed> seeds;
    seeds.reserve(grid_n * grid_n);
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const double alpha = (i + 0.5) / grid_n;
            const double beta = (j + 0.5) / grid_n;
            const complex w = alpha * b1 + beta * b3;
            try {
                seeds.push_back(Seed{w, std::abs(we.wp(w) - c)});
            } catch (const PoleProximityError &) {
            }
        }
    }
    std::sort(seeds.begin(), seeds.end(), [](const Seed &x, const Seed &y) { return x.score < y.score; });

    const double tol_abs = 1e-10 * (1.0 + std::abs(c));
    const std::size_t tries = std::min<std::size_t>(seeds.size(), 12);
    for (std::size_t t = 0; t < tries; ++t) {
        complex w = seeds[t].w;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            Weierstrass::Values v;
            try {
                v = we.all(w);
            } catch (const PoleProximityError &) {
                break;
            }
            const complex r = v.p - c;
            if (std::abs(r) < tol_abs) {
                ok = true;
                break;
            }
            if (v.p_prime == complex(0, 0)) {
                break;
            }
            complex step = r / v.p_prime;
            // Damp wild steps.
            const double max_step = 0.5 * std::max(std::abs(b1), std::abs(b3));
            if (std::abs(step) > max_step) {
                step *= max_step / std::abs(step);
            }
            w -= step;
        }
        if (ok) {
            // At a critical value of wp the Newton error in w only shrinks like
            // sqrt(residual); polish by solving wp'(w) = 0 directly.
            for (int it = 0; it < 8; ++it) {
                Weierstrass::Values v;
                try {
                    v = we.all(w);
                } catch (const PoleProximityError &) {
                    break;
                }
                if (std::abs(v.p_prime) > 1e-4 || std::abs(v.p - c) > 1e-7 * (1.0 + std::abs(c))) {
                    break;
                }
                const complex p2 = 6.0 * v.p * v.p - inv.g2 / 2.0;
                if (std::abs(p2) < 1e-12) {
                    break;
                }
                w -= v.p_prime / p2;
            }
            return w;
        }
    }
    throw NonConvergenceError("wp inversion failed from all grid seeds");
}

// Bring w into the cell spanned by b1, b3 (componentwise fractional part).
complex reduce_to_cell(const complex &w, const HalfPeriods &hp)
{
    if (!hp.omega1_finite() || !hp.omega3_finite()) {
        return w;
    }
    const complex p1(2.0 * hp.omega1, 0);
    const complex p3 = 2.0 * hp.omega3;
    const double det = p1.real() * p3.imag() - p3.real() * p1.imag();
    double alpha = (w.real() * p3.imag() - p3.real() * w.imag()) / det;
    double beta = (p1.real() * w.imag() - w.real() * p1.imag()) / det;
    alpha -= std::floor(alpha);
    beta -= std::floor(beta);
    if (alpha > 1.0 - 1e-9) {
        alpha = 0.0;
    }
    if (beta > 1.0 - 1e-9) {
        beta = 0.0;
    }
    return alpha * p1 + beta * p3;
}

} // namespace

complex inverse_wp_matching(const complex &c, const complex &target_p_prime, const Weierstrass &we)
{
    const complex w = invert_wp_impl(c, we);
    const complex w_alt = -w;
    complex best = w;
    double best_err = inf;
    for (const complex &cand : {w, w_alt}) {
        try {
            const double err = std::abs(we.wp_prime(cand) - target_p_prime);
            if (err < best_err) {
                best_err = err;
                best = cand;
            }
        } catch (const PoleProximityError &) {
        }
    }
    return reduce_to_cell(best, we.periods());
}

complex inverse_wp(const complex &c, int sign, const Weierstrass &we)
{
    const complex w = invert_wp_impl(c, we);
    for (const complex &cand : {w, -w}) {
        complex pp;
        try {
            pp = we.wp_prime(cand);
        } catch (const PoleProximityError &) {
            continue;
        }
        const double key = (std::abs(pp.real()) >= std::abs(pp.imag())) ? pp.real() : pp.imag();
        if (key * sign >= 0) {
            return reduce_to_cell(cand, we.periods());
        }
    }
    return reduce_to_cell(w, we.periods());
}

} // namespace adsnull
