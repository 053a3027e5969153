#include <cmath>
#include <random>

#include "doctest.h"
#include "vortsim/device.hpp"
#include "vortsim/errors.hpp"

using namespace vortsim;

namespace {

// Independent bisection oracle for u^2 (1 - u) = target on [2/3, 1],
// kept apart from the implementation's root finder.
double gl_bisection_oracle(double target) {
    double lo = 2.0 / 3.0, hi = 1.0;
    for (int i = 0; i < 120; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double h = mid * mid * (1.0 - mid);
        (h >= target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("device params derive the suppressed penetration depth") {
    const DeviceParams d = DeviceParams::paper_defaults();
    CHECK(d.penetration_depth_suppressed == doctest::Approx(0.75).epsilon(1e-14));
    CHECK_NOTHROW(validate(d));

    DeviceParams bad = d;
    bad.penetration_depth_suppressed = 0.2;
    CHECK_THROWS_AS(validate(bad), Error);

    bad = d;
    bad.length_x = 20.0;  // wider than the circumference
    CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("kinetic inductance") {
    // 4 pi * 0.0225 * 10 / 0.004, direct arithmetic
    CHECK(kinetic_inductance(0.15, 10.0, 0.004) ==
          doctest::Approx(706.8583470577034).epsilon(1e-12));
    // homogeneity degree -1 in the cross-section
    CHECK(kinetic_inductance(0.15, 10.0, 0.008) ==
          doctest::Approx(0.5 * kinetic_inductance(0.15, 10.0, 0.004)).epsilon(1e-14));
    // lambda_bar -> 5 lambda_bar multiplies by 25
    CHECK(kinetic_inductance(0.75, 10.0, 0.004) ==
          doctest::Approx(25.0 * kinetic_inductance(0.15, 10.0, 0.004)).epsilon(1e-14));
    CHECK_THROWS_AS(kinetic_inductance(0.0, 10.0, 0.004), Error);
    CHECK_THROWS_AS(kinetic_inductance(0.15, -1.0, 0.004), Error);
}

TEST_CASE("supercurrent") {
    const DeviceParams d = DeviceParams::paper_defaults();
    CHECK(supercurrent(3.0, 3, 700.0, 20.0, d) == 0.0);
    // antisymmetric in the flux deviation
    CHECK(supercurrent(3.25, 3, 700.0, 20.0, d) ==
          doctest::Approx(-supercurrent(2.75, 3, 700.0, 20.0, d)).epsilon(1e-14));
    // kinetic-dominated: the product I*ell is fixed by the flux alone
    const double huge = 1e9;
    const double i1 = supercurrent(0.5, 0, huge, 20.0, d);
    CHECK(i1 * huge == doctest::Approx(-d.light_speed_ratio * 0.5).epsilon(1e-6));
    CHECK_THROWS_AS(supercurrent(0.5, 0, 0.0, 0.0, d), Error);

    // flux-quantum periodicity: (n, phi) and (n+1, phi+1) coincide
    CHECK(supercurrent(0.3, 0, 700.0, 20.0, d) ==
          doctest::Approx(supercurrent(1.3, 1, 700.0, 20.0, d)).epsilon(1e-14));
}

TEST_CASE("crossover area") {
    // unit log factor at lambda_bar = 150 nm: 2 pi (0.15)^2 um^2 = 1.4137e5 nm^2
    const double um2_to_nm2 = 1e6;
    CHECK(crossover_area(0.15, 10.0, 1.0, LogFactor::OrderUnity) * um2_to_nm2 ==
          doctest::Approx(1.4137e5).epsilon(0.001));
    // exact log: 2 pi (0.15)^2 / ln 10
    CHECK(crossover_area(0.15, 10.0, 1.0, LogFactor::Exact) * um2_to_nm2 ==
          doctest::Approx(2.0 * kPi * 0.0225 / std::log(10.0) * um2_to_nm2).epsilon(1e-12));
    // quadratic scaling in lambda_bar
    CHECK(crossover_area(0.30, 10.0, 1.0, LogFactor::OrderUnity) ==
          doctest::Approx(4.0 * crossover_area(0.15, 10.0, 1.0, LogFactor::OrderUnity))
              .epsilon(1e-14));
    CHECK_THROWS_AS(crossover_area(0.15, 1.0, 1.0, LogFactor::Exact), Error);
    CHECK_THROWS_AS(crossover_area(0.15, 0.5, 1.0, LogFactor::Exact), Error);
}

TEST_CASE("arm currents conserve the total current") {
    const DeviceParams d = DeviceParams::paper_defaults();
    std::mt19937 rng(20260809);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    std::uniform_real_distribution<double> flux(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        CircuitParams c;
        c.kinetic_arm1 = u(rng);
        c.kinetic_arm2 = u(rng);
        c.geometric_arm2 = u(rng);
        c.geometric_arm1 = u(rng);
        const double total = flux(rng) * 10.0;
        const double phi = flux(rng);
        const int n = trial % 5 - 2;
        const auto [i1, i2] = arm_currents(total, phi, n, c, d);
        CHECK(i1 + i2 == total);  // exact by construction
        // the direct arm-2 expression agrees to round-off
        const double direct =
            (c.kinetic_arm1 * total + d.light_speed_ratio * (phi - n)) / c.total();
        CHECK(i2 == doctest::Approx(direct).epsilon(1e-12));
        // periodicity under (n, phi) -> (n+1, phi+1)
        const auto [j1, j2] = arm_currents(total, phi + 1.0, n + 1, c, d);
        CHECK(i1 == doctest::Approx(j1).epsilon(1e-12));
    }

    CircuitParams c;
    c.kinetic_arm1 = 40.0;
    c.geometric_arm2 = 10.0;
    // zero flux deviation: currents split as L2 : ell1
    const auto [i1, i2] = arm_currents(5.0, 0.0, 0, c, d);
    CHECK(i1 / i2 == doctest::Approx(c.geometric_arm2 / c.kinetic_arm1).epsilon(1e-12));

    CircuitParams weak;  // kinetic arm dominates: I controls I1 * ell1
    weak.kinetic_arm1 = 1e8;
    weak.geometric_arm2 = 2.0;
    const auto [a1, a2] = arm_currents(5.0, 0.4, 0, weak, d);
    CHECK(a1 * weak.kinetic_arm1 ==
          doctest::Approx(weak.geometric_arm2 * 5.0 - d.light_speed_ratio * 0.4)
              .epsilon(1e-6));
    (void)a2;

    CircuitParams empty;
    CHECK_THROWS_AS(arm_currents(1.0, 0.0, 0, empty, d), Error);
}

TEST_CASE("energy bias and the nucleation guard") {
    const auto zero = energy_bias(0.0, 50.0, 1.0);
    CHECK(zero.energy_split == 0.0);
    CHECK(zero.force == 0.0);

    const auto one = energy_bias(0.01, 50.0, 1.0);
    const auto two = energy_bias(0.02, 50.0, 1.0);
    CHECK(two.force == doctest::Approx(2.0 * one.force).epsilon(1e-14));
    CHECK(one.force == doctest::Approx(one.energy_split / 1.0).epsilon(1e-14));

    CHECK_FALSE(nucleation_risk(one.energy_split, 5.0));
    CHECK(nucleation_risk(11.0, 5.0));
    CHECK_THROWS_AS(energy_bias(0.01, 0.0, 1.0), Error);
}

TEST_CASE("friction action reproduces the anchor and its scalings") {
    FrictionInputs in;  // k_F = 1/angstrom = 1e4/um, ratio 1e-8, L_x 1 um, d 4 nm
    const double anchor = friction_action(in);
    CHECK(anchor == doctest::Approx(170.0).epsilon(0.01));
    CHECK(anchor == doctest::Approx(169.76527263135503).epsilon(1e-12));

    FrictionInputs thick = in;
    thick.thickness *= 2.0;
    CHECK(friction_action(thick) == doctest::Approx(4.0 * anchor).epsilon(1e-14));

    FrictionInputs softer = in;  // gap halved: the action drops fourfold
    softer.omega0_ratio /= 4.0;
    CHECK(friction_action(softer) == doctest::Approx(anchor / 4.0).epsilon(1e-14));
    CHECK(friction_action(softer) == doctest::Approx(42.44).epsilon(0.001));

    FrictionInputs denser = in;
    denser.fermi_momentum *= 2.0;
    CHECK(friction_action(denser) == doctest::Approx(16.0 * anchor).epsilon(1e-14));

    FrictionInputs bad = in;
    bad.length_x = 0.0;
    CHECK_THROWS_AS(friction_action(bad), Error);
}

TEST_CASE("order parameter suppression") {
    CHECK(order_parameter_suppression(0.0) == 1.0);
    CHECK(order_parameter_suppression(std::sqrt(4.0 / 27.0)) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(order_parameter_suppression(0.3) ==
          doctest::Approx(gl_bisection_oracle(0.09)).epsilon(1e-10));
    CHECK(order_parameter_suppression(0.3) == doctest::Approx(0.884).epsilon(1e-3));
    CHECK_THROWS_AS(order_parameter_suppression(0.4), Error);
    CHECK_THROWS_AS(order_parameter_suppression(-0.1), Error);

    // residual bound and monotonicity along the stable branch
    double prev = 1.0;
    for (int i = 0; i <= 40; ++i) {
        const double j = std::sqrt(4.0 / 27.0) * i / 40.0;
        const double u = order_parameter_suppression(j);
        CHECK(std::abs(u * u * (1.0 - u) - j * j) <= 1e-12);
        CHECK(u <= prev + 1e-12);
        CHECK(u >= 2.0 / 3.0 - 1e-12);
        prev = u;
    }
}

TEST_CASE("geometric inductance estimate") {
    CHECK(geometric_inductance_estimate(10.0, 1.0) ==
          doctest::Approx(20.0 * std::log(10.0)).epsilon(1e-14));
    CHECK_THROWS_AS(geometric_inductance_estimate(1.0, 1.0), Error);
}
