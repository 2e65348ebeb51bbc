#ifndef ADSNULL_ELLIPTIC_HPP
#define ADSNULL_ELLIPTIC_HPP

#include <array>
#include <complex>
#include <optional>
#include <vector>

namespace adsnull {

using complex = std::complex<double>;

// Real invariants (g2, g3) of the Weierstrass cubic P(t) = 4t^3 - g2 t - g3.
struct Invariants {
    double g2 = 0;
    double g3 = 0;
};

// Discriminant in the sign convention 27 g3^2 - g2^3.
double discriminant(const Invariants &inv);

struct RootSet {
    std::array<complex, 3> roots; // sorted: real roots first (descending), conjugates after
    std::vector<double> real_roots; // descending
};

RootSet cubic_roots(const Invariants &inv);

// Primitive half-periods in the normal form of the five classification rows.
// Degenerate rows carry explicit infinity markers, never large floats.
struct HalfPeriods {
    double omega1 = 0;   // +inf when the real period degenerates
    complex omega3{0, 0}; // Im = +inf when the imaginary period degenerates
    std::optional<double> nu;

    bool omega1_finite() const;
    bool omega3_finite() const;
};

HalfPeriods half_periods(const Invariants &inv);

// Evaluation engine for wp / wp' / zeta / sigma with fixed real invariants.
// Laurent series inside a small disk, then repeated argument duplication;
// arguments far outside the fundamental cell are first reduced by lattice
// translations (quasi-periodic laws for zeta and sigma).
class Weierstrass {
public:
    explicit Weierstrass(const Invariants &inv);

    struct Values {
        complex p;
        complex p_prime;
        complex zeta;
        complex sigma;
    };

    Values all(const complex &z) const;

    complex wp(const complex &z) const;
    complex wp_prime(const complex &z) const;
    complex zeta(const complex &z) const;
    complex sigma(const complex &z) const;

    const Invariants &invariants() const { return inv_; }
    const RootSet &roots() const { return roots_; }
    const HalfPeriods &periods() const { return hp_; }

    // eta_j = zeta(omega_j); only meaningful when the respective period is finite.
    complex eta1() const { return eta1_; }
    complex eta3() const { return eta3_; }

    // Distance from z to the nearest lattice point (pole of wp).
    double lattice_distance(const complex &z) const;

    // Radius below which arguments are rejected as pole-proximate.
    static constexpr double pole_exclusion = 1e-6;

private:
    Values eval_small(const complex &z) const;
    complex reduce(const complex &z, long &m1, long &m3) const;

    Invariants inv_;
    RootSet roots_;
    HalfPeriods hp_;
    complex eta1_{0, 0};
    complex eta3_{0, 0};
    std::vector<double> coeff_; // Laurent c_k, k = 2..K
    double series_radius_ = 0;  // arguments are halved below this before the series
    double cell_scale_ = 0;     // shortest nonzero lattice vector (inf if none)
};

// Free-function surface over a throwaway engine.
complex wp(const complex &z, const Invariants &inv);
complex wp_prime(const complex &z, const Invariants &inv);
complex weierstrass_zeta(const complex &z, const Invariants &inv);
complex weierstrass_sigma(const complex &z, const Invariants &inv);

// Complete elliptic integral of the first kind as a function of the modulus,
// by the arithmetic-geometric mean.
double elliptic_K(double ell);

struct JacobiValues {
    double sn;
    double cn;
    double dn;
};

JacobiValues jacobi_elliptic(double u, double ell);
double jacobi_sn(double u, double ell);

// Invert wp: find w in the fundamental cell with wp(w) = c. The sign selects
// between w and its reflection through the sign of wp'(w) (real part when
// wp' is essentially real, imaginary part otherwise).
complex inverse_wp(const complex &c, int sign, const Weierstrass &we);

// Variant used by the frame construction: pick the representative whose
// wp'(w) matches the given target value.
complex inverse_wp_matching(const complex &c, const complex &target_p_prime,
                            const Weierstrass &we);

} // namespace adsnull

#endif
