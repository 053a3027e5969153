#include "vortsim/device.hpp"

#include <cmath>
#include <string>

#include "vortsim/errors.hpp"

namespace vortsim {

DeviceParams DeviceParams::make(double length_x, double length_y, double thickness,
                                double coherence_length, double penetration_depth,
                                double suppression_factor, double light_speed_ratio) {
    DeviceParams p;
    p.length_x = length_x;
    p.length_y = length_y;
    p.thickness = thickness;
    p.coherence_length = coherence_length;
    p.penetration_depth = penetration_depth;
    p.suppression_factor = suppression_factor;
    p.penetration_depth_suppressed = std::sqrt(suppression_factor) * penetration_depth;
    p.light_speed_ratio = light_speed_ratio;
    validate(p);
    return p;
}

void validate(const DeviceParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) fail("domain", std::string(name) + " must be strictly positive");
    };
    positive(p.length_x, "device length_x");
    positive(p.length_y, "device length_y");
    positive(p.thickness, "device thickness");
    positive(p.coherence_length, "device coherence_length");
    positive(p.penetration_depth, "device penetration_depth");
    positive(p.penetration_depth_suppressed, "device penetration_depth (suppressed)");
    positive(p.suppression_factor, "device suppression_factor");
    positive(p.light_speed_ratio, "device light_speed_ratio");
    if (p.length_x > p.length_y)
        fail("domain", "device requires length_x <= length_y");
    const double expected = p.suppression_factor * p.penetration_depth * p.penetration_depth;
    const double actual = p.penetration_depth_suppressed * p.penetration_depth_suppressed;
    if (std::abs(actual - expected) > 1e-12 * expected)
        fail("domain", "suppressed penetration depth inconsistent with suppression factor");
}

void validate(const CircuitParams& c) {
    auto nonneg = [](double v, const char* name) {
        if (v < 0.0) fail("domain", std::string(name) + " must be non-negative");
    };
    nonneg(c.kinetic, "circuit kinetic inductance");
    nonneg(c.kinetic_arm1, "circuit kinetic_arm1");
    nonneg(c.kinetic_arm2, "circuit kinetic_arm2");
    nonneg(c.geometric_ring, "circuit geometric_ring");
    nonneg(c.geometric_arm1, "circuit geometric_arm1");
    nonneg(c.geometric_arm2, "circuit geometric_arm2");
}

double kinetic_inductance(double lambda_bar, double length_y, double cross_section) {
    if (!(lambda_bar > 0.0 && length_y > 0.0 && cross_section > 0.0))
        fail("domain", "kinetic_inductance requires positive inputs");
    return 4.0 * kPi * lambda_bar * lambda_bar * length_y / cross_section;
}

double supercurrent(double phi_ext, int winding, double kinetic, double geometric,
                    const DeviceParams& device) {
    const double denom = kinetic + geometric;
    if (denom == 0.0)
        fail("circuit", "supercurrent: kinetic + geometric inductance is zero");
    return -device.light_speed_ratio * (phi_ext - winding * kFluxQuantum) / denom;
}

double crossover_area(double lambda_bar, double length_y, double length_x,
                      LogFactor log_factor) {
    if (!(length_x > 0.0 && lambda_bar > 0.0))
        fail("domain", "crossover_area requires positive lengths");
    if (log_factor == LogFactor::Exact && !(length_y > length_x))
        fail("domain", "crossover_area requires length_y > length_x");
    const double log_term =
        log_factor == LogFactor::Exact ? std::log(length_y / length_x) : 1.0;
    return kTwoPi * lambda_bar * lambda_bar / log_term;
}

double geometric_inductance_estimate(double length_y, double length_x) {
    if (!(length_y > length_x && length_x > 0.0))
        fail("domain", "geometric_inductance_estimate requires length_y > length_x > 0");
    return 2.0 * length_y * std::log(length_y / length_x);
}

std::pair<double, double> arm_currents(double total_current, double phi_ext, int winding,
                                       const CircuitParams& circuit, const DeviceParams& device) {
    const double total = circuit.total();
    if (total == 0.0)
        fail("circuit", "arm_currents: ell_1 + L_2 is zero");
    const double flux_term = device.light_speed_ratio * (phi_ext - winding * kFluxQuantum);
    const double first = (circuit.geometric_arm2 * total_current - flux_term) / total;
    // I2 = I - I1 keeps the current balance exact in floating point; it is
    // algebraically [ell_1 I + c(phi - n Phi_0)] / L_tot.
    const double second = total_current - first;
    return {first, second};
}

EnergyBias energy_bias(double delta_phi_ext, double inductance_total, double length_x) {
    if (!(inductance_total > 0.0))
        fail("circuit", "energy_bias requires positive total inductance");
    if (!(length_x > 0.0))
        fail("domain", "energy_bias requires positive length_x");
    const double split = kFluxQuantum * delta_phi_ext / inductance_total;
    return {split, split / length_x};
}

bool nucleation_risk(double energy_split, double mass) {
    return std::abs(energy_split) > 2.0 * mass;
}

double friction_action(const FrictionInputs& in) {
    if (!(in.fermi_momentum > 0.0 && in.omega0_ratio > 0.0 && in.length_x > 0.0 &&
          in.thickness > 0.0))
        fail("domain", "friction_action requires positive inputs");
    const double kf2 = in.fermi_momentum * in.fermi_momentum;
    return in.omega0_ratio * kf2 * kf2 * in.thickness * in.thickness * in.length_x *
           in.length_x / (3.0 * kPi);
}

double order_parameter_suppression(double j_norm) {
    if (!(j_norm >= 0.0))
        fail("domain", "order_parameter_suppression requires j_norm >= 0");
    const double target = j_norm * j_norm;
    const double depairing = 4.0 / 27.0;
    if (target > depairing)
        fail("depairing", "normalized current above the depairing value (j_norm^2 > 4/27)");
    if (target == 0.0) return 1.0;
    if (target == depairing) return 2.0 / 3.0;

    // u^2 (1 - u) decreases monotonically from 4/27 to 0 on [2/3, 1]; bisect.
    auto h = [target](double u) { return u * u * (1.0 - u) - target; };
    double lo = 2.0 / 3.0, hi = 1.0;
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) >= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace vortsim
