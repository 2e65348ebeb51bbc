#include "adsnull/potential.hpp"

#include <cmath>
#include <limits>

#include "adsnull/errors.hpp"

namespace adsnull {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
const double pi = std::acos(-1.0);
} // namespace

std::string to_string(PotentialCase c)
{
    switch (c) {
        case PotentialCase::WpNegDisc:
            return "WpNegDisc";
        case PotentialCase::Wp3NegDisc:
            return "Wp3NegDisc";
        case PotentialCase::WpPosDisc:
            return "WpPosDisc";
        case PotentialCase::TanDegenerate:
            return "TanDegenerate";
        case PotentialCase::TanhDegenerate:
            return "TanhDegenerate";
        case PotentialCase::RationalDegenerate:
            return "RationalDegenerate";
        case PotentialCase::QuasiPeriodic:
            return "QuasiPeriodic";
    }
    return "?";
}

const std::shared_ptr<const Weierstrass> &Potential::engine() const
{
    if (!engine_) {
        engine_ = std::make_shared<const Weierstrass>(inv_);
    }
    return engine_;
}

Potential Potential::wp_branch(const Invariants &inv)
{
    Potential p;
    p.tag_ = PotentialCase::WpNegDisc;
    p.inv_ = inv;
    const HalfPeriods hp = half_periods(inv);
    p.domain_ = Interval{0.0, 2.0 * hp.omega1};
    p.shift_ = complex(0, 0);
    return p;
}

Potential Potential::wp3_branch(const Invariants &inv)
{
    Potential p;
    p.tag_ = PotentialCase::Wp3NegDisc;
    p.inv_ = inv;
    p.domain_ = Interval{-inf, inf};
    p.shift_ = half_periods(inv).omega3;
    return p;
}

Potential Potential::wp_pos(const Invariants &inv)
{
    Potential p;
    p.tag_ = PotentialCase::WpPosDisc;
    p.inv_ = inv;
    const HalfPeriods hp = half_periods(inv);
    p.domain_ = Interval{0.0, 2.0 * hp.omega1};
    p.shift_ = complex(0, 0);
    return p;
}

Potential Potential::tan_degenerate(double a)
{
    Potential p;
    p.tag_ = PotentialCase::TanDegenerate;
    p.a_ = a; // a < 0
    p.inv_ = Invariants{12.0 * a * a, -8.0 * a * a * a};
    const double half_width = pi / std::sqrt(-12.0 * a);
    p.domain_ = Interval{-half_width, half_width};
    p.shift_ = complex(half_width, 0); // omega1
    return p;
}

Potential Potential::tanh_degenerate(double a)
{
    Potential p;
    p.tag_ = PotentialCase::TanhDegenerate;
    p.a_ = a; // a > 0
    p.inv_ = Invariants{12.0 * a * a, -8.0 * a * a * a};
    p.domain_ = Interval{-inf, inf};
    p.shift_ = complex(0, pi / (2.0 * std::sqrt(3.0 * a))); // omega3
    return p;
}

Potential Potential::rational_degenerate(bool positive_axis)
{
    Potential p;
    p.tag_ = PotentialCase::RationalDegenerate;
    p.inv_ = Invariants{0.0, 0.0};
    p.domain_ = positive_axis ? Interval{0.0, inf} : Interval{-inf, 0.0};
    p.shift_ = complex(0, 0);
    return p;
}

Potential Potential::quasi_periodic(double ell, double e1)
{
    if (!(ell > 0.0 && ell < 1.0) || !(e1 > 0.0)) {
        throw ParamOutOfRangeError("quasi-periodic potential requires ell in (0,1) and e1 > 0");
    }
    Potential p;
    p.tag_ = PotentialCase::QuasiPeriodic;
    p.ell_ = ell;
    p.e1_ = e1;
    const double l2 = ell * ell;
    const double d = 2.0 - l2;
    p.inv_ = Invariants{12.0 * (l2 * l2 - l2 + 1.0) * e1 * e1 / (d * d),
                        -4.0 * (2.0 * l2 * l2 + l2 - 1.0) * e1 * e1 * e1 / (d * d)};
    p.domain_ = Interval{-inf, inf};
    p.shift_ = half_periods(p.inv_).omega3;
    return p;
}

bool Potential::in_domain(double s) const
{
    if (tag_ == PotentialCase::WpNegDisc || tag_ == PotentialCase::WpPosDisc) {
        const double margin = 1e-4 * domain_.hi;
        return s > domain_.lo + margin && s < domain_.hi - margin;
    }
    return s > domain_.lo && s < domain_.hi;
}

HDerivs Potential::eval(double s) const
{
    if (!in_domain(s)) {
        throw OutOfDomainError("s = " + std::to_string(s) + " outside the " + to_string(tag_) + " domain");
    }
    double h = 0, h1 = 0;
    switch (tag_) {
        case PotentialCase::WpNegDisc:
        case PotentialCase::WpPosDisc: {
            const auto v = engine()->all(complex(s, 0));
            h = v.p.real();
            h1 = v.p_prime.real();
            break;
        }
        case PotentialCase::Wp3NegDisc: {
            const auto v = engine()->all(complex(s, 0) + shift_);
            h = v.p.real();
            h1 = v.p_prime.real();
            break;
        }
        case PotentialCase::TanDegenerate: {
            const double b = std::sqrt(-3.0 * a_);
            const double t = std::tan(b * s);
            h = -3.0 * a_ * t * t - 2.0 * a_;
            h1 = -6.0 * a_ * b * t * (1.0 + t * t);
            break;
        }
        case PotentialCase::TanhDegenerate: {
            const double b = std::sqrt(3.0 * a_);
            const double t = std::tanh(b * s);
            h = 3.0 * a_ * t * t - 2.0 * a_;
            h1 = 6.0 * a_ * b * t * (1.0 - t * t);
            break;
        }
        case PotentialCase::RationalDegenerate: {
            h = 1.0 / (s * s);
            h1 = -2.0 / (s * s * s);
            break;
        }
        case PotentialCase::QuasiPeriodic: {
            const double l2 = ell_ * ell_;
            const double d = 2.0 - l2;
            const double lam = std::sqrt(3.0 * e1_ / d);
            const auto j = jacobi_elliptic(lam * s, ell_);
            h = e1_ * (3.0 * l2 / d * j.sn * j.sn - (1.0 + l2) / d);
            h1 = e1_ * 3.0 * l2 / d * 2.0 * j.sn * j.cn * j.dn * lam;
            break;
        }
    }
    HDerivs out;
    out.h = h;
    out.h1 = h1;
    out.h2 = 6.0 * h * h - inv_.g2 / 2.0;
    out.h3 = 12.0 * h * h1;
    return out;
}

std::vector<Potential> classify(const Invariants &inv)
{
    const double delta = discriminant(inv);
    if (inv.g2 == 0.0 && inv.g3 == 0.0) {
        return {Potential::rational_degenerate(false), Potential::rational_degenerate(true)};
    }
    if (delta < 0.0) {
        return {Potential::wp_branch(inv), Potential::wp3_branch(inv)};
    }
    if (delta > 0.0) {
        return {Potential::wp_pos(inv)};
    }
    const double a = -std::cbrt(inv.g3 / 8.0);
    if (std::abs(inv.g2 - 12.0 * a * a) > 1e-9 * std::max(1.0, std::abs(inv.g2))) {
        throw ClassificationError("Delta = 0 but g2 != 12 a^2 for a = -(g3/8)^(1/3)");
    }
    if (inv.g3 > 0.0) {
        return {Potential::tan_degenerate(a)};
    }
    return {Potential::tanh_degenerate(a)};
}

double weierstrass_residual(const Potential &p, double s)
{
    const HDerivs d = p.eval(s);
    const Invariants &inv = p.invariants();
    return d.h1 * d.h1 - (4.0 * d.h * d.h * d.h - inv.g2 * d.h - inv.g3);
}

double el_residual_jet(double m, double k, double k1, double k2, double k3)
{
    (void)k2;
    return k3 - 6.0 * k * k1 + 2.0 * m * k1;
}

double el_residual(double m, const Potential &p, double s)
{
    const HDerivs d = p.eval(s);
    const double k = 2.0 * d.h + m / 3.0;
    return el_residual_jet(m, k, 2.0 * d.h1, 2.0 * d.h2, 2.0 * d.h3);
}

} // namespace adsnull
