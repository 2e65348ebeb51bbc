#ifndef ADSNULL_POTENTIAL_HPP
#define ADSNULL_POTENTIAL_HPP

#include <memory>
#include <string>
#include <vector>

#include "adsnull/elliptic.hpp"

namespace adsnull {

enum class PotentialCase {
    WpNegDisc,          // Delta < 0, h = wp on (0, 2 omega1)
    Wp3NegDisc,         // Delta < 0, h = wp(s + omega3), bounded on R
    WpPosDisc,          // Delta > 0, h = wp on (0, 2 omega1)
    TanDegenerate,      // Delta = 0, g3 > 0
    TanhDegenerate,     // Delta = 0, g3 < 0
    RationalDegenerate, // g2 = g3 = 0, h = 1/s^2
    QuasiPeriodic,      // sn^2 form parametrized by (ell, e1)
};

std::string to_string(PotentialCase c);

struct Interval {
    double lo;
    double hi;
};

// First four derivatives of the reduced curvature at a point; h2 and h3 come
// from the differentiated Weierstrass ODE (h'' = 6h^2 - g2/2, h''' = 12 h h').
struct HDerivs {
    double h;
    double h1;
    double h2;
    double h3;
};

class Potential {
public:
    PotentialCase tag() const { return tag_; }
    const Invariants &invariants() const { return inv_; }
    const Interval &domain() const { return domain_; }
    double degenerate_a() const { return a_; }
    double ell() const { return ell_; }
    double e1() const { return e1_; }

    // Meromorphic extension: h(s) = wp(s + shift) for every case.
    complex shift() const { return shift_; }

    // Shared evaluation engine for the underlying wp lattice.
    const std::shared_ptr<const Weierstrass> &engine() const;

    HDerivs eval(double s) const;
    double h(double s) const { return eval(s).h; }

    bool in_domain(double s) const;

    static Potential wp_branch(const Invariants &inv);
    static Potential wp3_branch(const Invariants &inv);
    static Potential wp_pos(const Invariants &inv);
    static Potential tan_degenerate(double a);
    static Potential tanh_degenerate(double a);
    static Potential rational_degenerate(bool positive_axis);
    static Potential quasi_periodic(double ell, double e1);

private:
    Potential() = default;

    PotentialCase tag_{};
    Invariants inv_{};
    Interval domain_{};
    double a_ = 0;
    double ell_ = 0;
    double e1_ = 0;
    complex shift_{0, 0};
    mutable std::shared_ptr<const Weierstrass> engine_;
};

// The case catalogue for given invariants (two entries when Delta < 0 or when
// g2 = g3 = 0, one otherwise).
std::vector<Potential> classify(const Invariants &inv);

// (h')^2 - (4h^3 - g2 h - g3); ~0 on the domain for every case.
double weierstrass_residual(const Potential &p, double s);

// k''' - 6 k k' + 2 m k' for an explicit jet of the curvature.
double el_residual_jet(double m, double k, double k1, double k2, double k3);

// Same, with k = 2h + m/3 taken from the potential's analytic derivatives.
double el_residual(double m, const Potential &p, double s);

} // namespace adsnull

#endif
