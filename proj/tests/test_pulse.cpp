#include <cmath>

#include "doctest.h"
#include "vortsim/errors.hpp"
#include "vortsim/pulse.hpp"

using namespace vortsim;

namespace {

// Simpson quadrature of A'/A_c, independent of the closed-form integral
// inside EffectiveField.
double ratio_integral_oracle(const PulseSpec& spec, double t_lo, double t_hi, int panels) {
    const double h = (t_hi - t_lo) / panels;
    double sum = vector_potential_ratio(t_lo, spec) + vector_potential_ratio(t_hi, spec);
    for (int i = 1; i < panels; ++i)
        sum += (i % 2 ? 4.0 : 2.0) * vector_potential_ratio(t_lo + i * h, spec);
    return sum * h / 3.0;
}

PulseSpec paper_pulse() { return PulseSpec{}; }

}  // namespace

TEST_CASE("pulse spec validation") {
    CHECK_NOTHROW(validate(paper_pulse()));

    PulseSpec narrow = paper_pulse();
    narrow.window_end = 300.0;  // < 5 t0
    CHECK_THROWS_AS(validate(narrow), Error);

    PulseSpec inverted = paper_pulse();
    inverted.window_start = 10.0;
    CHECK_THROWS_AS(validate(inverted), Error);

    PulseSpec massless = paper_pulse();
    massless.mass = 0.0;
    CHECK_THROWS_AS(validate(massless), Error);
}

TEST_CASE("vector potential ratio") {
    const PulseSpec spec = paper_pulse();
    CHECK(vector_potential_ratio(0.0, spec) == 0.0);
    // analytic maximum C e^{-1/2} / sqrt(2) at t = t0/sqrt(2)
    const double peak = vector_potential_ratio(spec.width / std::sqrt(2.0), spec);
    CHECK(peak == doctest::Approx(spec.amplitude * std::exp(-0.5) / std::sqrt(2.0))
                      .epsilon(1e-14));
    CHECK(peak == doctest::Approx(0.00214440971).epsilon(1e-8));
    for (double t : {13.0, 57.0, 190.0})
        CHECK(vector_potential_ratio(-t, spec) == -vector_potential_ratio(t, spec));
}

TEST_CASE("driving force") {
    const DeviceParams device = DeviceParams::paper_defaults();
    CHECK(driving_force_from_potential(0.0, device) == 0.0);
    CHECK(driving_force_from_potential(2.0, device) ==
          doctest::Approx(2.0 * driving_force_from_potential(1.0, device)).epsilon(1e-14));
    // 7.5 * 0.004 / (8 * (1/137) * 0.5625 * 0.02)
    CHECK(driving_force_prefactor(device) ==
          doctest::Approx(45.666666666666664).epsilon(1e-12));
    CHECK(driving_force_from_potential(1.0, device) < 0.0);
}

TEST_CASE("effective field for the canonical pulse") {
    const DeviceParams device = DeviceParams::paper_defaults();
    const PulseSpec spec = paper_pulse();
    const EffectiveField field(spec, device);

    // paper anchor |Ẽ(0)| ≈ 9 and the quadrature oracle agree
    CHECK(std::abs(field(0.0)) == doctest::Approx(9.1333333332).epsilon(1e-9));
    const double oracle =
        field.prefactor() * ratio_integral_oracle(spec, spec.window_start, 0.0, 40000);
    CHECK(field(0.0) == doctest::Approx(oracle).epsilon(1e-10));

    // the odd pulse integrates away: |Ẽ(t_f)| below 1e-9 of the peak
    CHECK(std::abs(field(spec.window_end)) <= 1e-9 * std::abs(field(0.0)));

    // e^{-1} point of the profile relative to the peak
    CHECK(field(spec.width) / field(0.0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-9));

    CHECK_THROWS_AS(field(spec.window_end + 1.0), Error);
    CHECK_THROWS_AS(field(spec.window_start - 1.0), Error);
}

TEST_CASE("effective field derivative matches the drive profile") {
    const DeviceParams device = DeviceParams::paper_defaults();
    const PulseSpec spec = paper_pulse();
    const EffectiveField field(spec, device);
    const double h = 5e-3;
    for (double t : {-120.0, -45.0, 33.0, 80.0, 150.0}) {
        const double fd = (field(t + h) - field(t - h)) / (2.0 * h);
        const double expected = field.prefactor() * vector_potential_ratio(t, spec);
        CHECK(fd == doctest::Approx(expected).epsilon(1e-8));
    }
    // the derivative vanishes with the drive at t = 0
    CHECK(std::abs((field(h) - field(-h)) / (2.0 * h)) <= 1e-9);
}

TEST_CASE("tabulated drive reproduces the closed form") {
    const DeviceParams device = DeviceParams::paper_defaults();
    const PulseSpec gauss = paper_pulse();
    PulseSpec tab = gauss;
    tab.shape = PulseShape::Tabulated;
    for (double t = gauss.window_start; t <= gauss.window_end + 1e-9; t += 0.02)
        tab.drive_table.push_back({t, vector_potential_ratio(t, gauss)});

    const EffectiveField exact(gauss, device);
    const EffectiveField interp(tab, device);
    for (double t : {-200.0, -80.0, -10.0, 0.0, 40.0, 120.0})
        CHECK(interp(t) == doctest::Approx(exact(t)).epsilon(1e-6));
    // near the window edge both are exponentially small
    CHECK(std::abs(interp(399.0) - exact(399.0)) <= 1e-8);
}

TEST_CASE("mass profile") {
    const PulseSpec spec = paper_pulse();
    const MassProfile constant(spec);
    CHECK(constant.constant());
    for (double t : {-400.0, -1.0, 0.0, 250.0, 400.0}) CHECK(constant(t) == spec.mass);

    // a tabulated profile equal to the constant matches bit for bit
    PulseSpec tab = spec;
    tab.mass_table = {{spec.window_start, spec.mass}, {spec.window_end, spec.mass}};
    const MassProfile flat(tab);
    for (double t : {-400.0, -3.5, 0.0, 17.0, 400.0}) CHECK(flat(t) == constant(t));

    PulseSpec wrong = spec;
    wrong.mass_table = {{spec.window_start, spec.mass + 1.0}, {spec.window_end, spec.mass}};
    CHECK_THROWS_AS(MassProfile{wrong}, Error);
    CHECK_THROWS_AS(validate(wrong), Error);
}

TEST_CASE("quantization of the force integral") {
    const DeviceParams device = DeviceParams::paper_defaults();
    const PulseSpec gauss = paper_pulse();
    CHECK(check_quantization(gauss, device, device.length_x) == 0);

    // one-sided bump with the area tuned to exactly one quantum:
    // Ẽ shift = prefactor * area = -2 pi / L_x  =>  n' = 1
    const double pref = driving_force_prefactor(device);
    const double area = -kTwoPi / (device.length_x * pref);
    auto bump_pulse = [&](double scale) {
        PulseSpec spec = gauss;
        spec.shape = PulseShape::Tabulated;
        const double height = scale * area / 50.0;  // triangle, base 100
        spec.drive_table = {{-50.0, 0.0}, {0.0, height}, {50.0, 0.0}};
        return spec;
    };
    CHECK(check_quantization(bump_pulse(1.0), device, device.length_x) == 1);
    CHECK(check_quantization(bump_pulse(2.0), device, device.length_x) == 2);
    CHECK_THROWS_AS(check_quantization(bump_pulse(0.5), device, device.length_x, 0.01),
                    Error);

    // time translation of the whole pulse inside the window changes nothing
    PulseSpec shifted = bump_pulse(1.0);
    for (auto& p : shifted.drive_table) p.t += 150.0;
    CHECK(check_quantization(shifted, device, device.length_x) == 1);
}
