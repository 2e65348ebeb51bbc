#include "doctest.h"

#include <cmath>
#include <vector>

#include "adsnull/errors.hpp"
#include "adsnull/momentum.hpp"
#include "adsnull/potential.hpp"

using namespace adsnull;

namespace {

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.push_back(a + (b - a) * i / (n - 1));
    }
    return out;
}

struct Sweep {
    Potential p;
    double lo;
    double hi;
};

std::vector<Sweep> sweep_catalogue()
{
    std::vector<Sweep> out;
    {
        Potential p = Potential::wp_branch({4, 0});
        const double w2 = p.domain().hi;
        out.push_back({p, 0.08 * w2, 0.92 * w2});
    }
    out.push_back({Potential::wp3_branch({4, 0}), -3.0, 3.0});
    {
        Potential p = Potential::wp_pos({1, 2});
        const double w2 = p.domain().hi;
        out.push_back({p, 0.08 * w2, 0.92 * w2});
    }
    {
        Potential p = Potential::tan_degenerate(-1.0);
        out.push_back({p, 0.85 * p.domain().lo, 0.85 * p.domain().hi});
    }
    out.push_back({Potential::tanh_degenerate(1.0), -3.0, 3.0});
    out.push_back({Potential::rational_degenerate(true), 0.3, 4.0});
    out.push_back({Potential::quasi_periodic(0.25, 10.0), -3.0, 3.0});
    return out;
}

} // namespace

TEST_CASE("momentum lift algebra")
{
    SUBCASE("rational case, m = 0, s = 1")
    {
        const Potential p = Potential::rational_degenerate(true);
        const MomentumLift lift = momentum_lift(0.0, p, {1.0});
        REQUIRE(lift.samples.size() == 1);
        const MomentumSample &y = lift.samples[0];
        CHECK(y.k == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(y.k1 == doctest::Approx(-4.0).epsilon(1e-12));
        CHECK(y.k2 == doctest::Approx(12.0).epsilon(1e-12));
        CHECK(y.x1 == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(y.x2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(y.x4 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(y.x5 == 1.0);
    }
    SUBCASE("x4 = (m + k)/2 and x2 = -k'/4 identically")
    {
        const Potential p = Potential::wp3_branch({4, 0});
        const MomentumLift lift = momentum_lift(3.0, p, linspace(-2.0, 2.0, 41));
        for (const MomentumSample &y : lift.samples) {
            CHECK(std::abs(y.x4 - 0.5 * (lift.m + y.k)) == 0.0);
            CHECK(y.x2 + 0.25 * y.k1 == 0.0);
            if (std::abs(y.k1) < 1e-12) {
                CHECK(y.x2 == 0.0);
            }
        }
    }
    SUBCASE("out-of-domain grid point rejected")
    {
        const Potential p = Potential::rational_degenerate(true);
        CHECK_THROWS_AS(momentum_lift(0.0, p, {-1.0}), OutOfDomainError);
    }
}

TEST_CASE("EL system residuals vanish along potential lifts")
{
    for (const Sweep &sw : sweep_catalogue()) {
        for (const double m : {-5.0, 0.0, 3.0, 7.0}) {
            const MomentumLift lift = momentum_lift(m, sw.p, linspace(sw.lo, sw.hi, 200));
            const auto res = el_system_residuals(lift);
            for (std::size_t i = 0; i < res.size(); ++i) {
                // Scale-relative bound: the tan window reaches |k| ~ 1e3.
                const double scale = 1.0 + std::pow(std::abs(lift.samples[i].k), 3);
                CHECK(std::abs(res[i].r1) < 1e-7 * scale);
                CHECK(std::abs(res[i].r2) < 1e-7 * scale);
                CHECK(std::abs(res[i].r3) < 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("r1 agrees with the EL jet residual / 4")
{
    const Potential p = Potential::wp_branch({5, 0});
    const double w2 = p.domain().hi;
    const MomentumLift lift = momentum_lift(2.0, p, linspace(0.1 * w2, 0.9 * w2, 101));
    const auto res = el_system_residuals(lift);
    for (std::size_t i = 0; i < res.size(); ++i) {
        const MomentumSample &y = lift.samples[i];
        const double el = el_residual_jet(lift.m, y.k, y.k1, y.k2, y.k3);
        const double scale = std::max({1.0, std::abs(y.k3), std::abs(y.k * y.k1)});
        CHECK(std::abs(res[i].r1 - 0.25 * el) < 1e-9 * scale);
    }
}

TEST_CASE("non-solution control: k = sin(s)")
{
    const int n = 2001;
    const auto grid = linspace(0.0, 6.0, n);
    std::vector<double> k(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        k[i] = std::sin(grid[i]);
    }
    const MomentumLift lift = momentum_lift_from_samples(0.0, grid, k);
    const auto res = el_system_residuals(lift);
    double max_r1 = 0.0, max_r3 = 0.0;
    for (const ElResiduals &r : res) {
        max_r1 = std::max(max_r1, std::abs(r.r1));
        max_r3 = std::max(max_r3, std::abs(r.r3));
    }
    // r3 = k' + 4 x2 vanishes by construction of x2; r1 sees the EL defect.
    CHECK(max_r3 == 0.0);
    CHECK(max_r1 > 1e-2);

    SUBCASE("finite-difference jets match the analytic ones")
    {
        for (std::size_t i = 0; i < lift.samples.size(); ++i) {
            const MomentumSample &y = lift.samples[i];
            CHECK(y.k1 == doctest::Approx(std::cos(y.s)).epsilon(5e-8));
            CHECK(y.k2 == doctest::Approx(-std::sin(y.s)).epsilon(5e-8));
            CHECK(std::abs(y.k3 + std::cos(y.s)) < 5e-5);
        }
    }
    SUBCASE("coarse or ragged grids rejected")
    {
        CHECK_THROWS_AS(momentum_lift_from_samples(0.0, {0, 1, 2}, {0, 1, 2}),
                        GridTooCoarseError);
        std::vector<double> ragged = grid;
        ragged[5] += 0.01;
        CHECK_THROWS_AS(momentum_lift_from_samples(0.0, ragged, k), GridTooCoarseError);
    }
}
