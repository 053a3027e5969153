#pragma once

#include <utility>

#include "vortsim/units.hpp"

namespace vortsim {

/// Film geometry and material lengths.  Lengths in microns; the suppressed
/// penetration depth is derived from the unperturbed one on make():
/// lambda_bar^2 = suppression_factor * penetration_depth^2.
struct DeviceParams {
    double length_x = 1.0;             // L_x, film width (transport direction) [um]
    double length_y = 10.0;            // L_y, ring circumference [um]
    double thickness = 0.004;          // d [um]
    double coherence_length = 0.02;    // xi [um]
    double penetration_depth = 0.15;   // lambda, unperturbed [um]
    double suppression_factor = 25.0;  // n_s reduction factor
    double penetration_depth_suppressed = 0.75;  // lambda_bar [um], derived
    double light_speed_ratio = 7.5;    // c / c1
    double fine_structure = kFineStructure;

    static DeviceParams make(double length_x, double length_y, double thickness,
                             double coherence_length, double penetration_depth,
                             double suppression_factor, double light_speed_ratio);
    static DeviceParams paper_defaults() { return DeviceParams{}; }
};

/// Throws Error("domain") on non-positive lengths, L_x > L_y, or a
/// lambda_bar inconsistent with the suppression factor.
void validate(const DeviceParams& params);

/// Double-arm circuit inductances, Gaussian length units.  L_tot is derived
/// so the identity L_tot = ell_1 + L_2 holds exactly.
struct CircuitParams {
    double kinetic = 0.0;        // ell, single-ring kinetic inductance
    double kinetic_arm1 = 0.0;   // ell_1
    double kinetic_arm2 = 0.0;   // ell_2
    double geometric_ring = 0.0; // ring geometric inductance
    double geometric_arm1 = 0.0; // effective arm-1 geometric inductance
    double geometric_arm2 = 0.0; // effective arm-2 geometric inductance (mutual)
    double flux_quantum = kFluxQuantum;

    double total() const { return kinetic_arm1 + geometric_arm2; }
};

void validate(const CircuitParams& params);

/// Core-fermion friction inputs.  fermi_momentum in um^-1; omega0_ratio is
/// the dimensionless 2*omega_0 / (k_F v_F).
struct FrictionInputs {
    double fermi_momentum = 1.0e4;
    double omega0_ratio = 1.0e-8;
    double length_x = 1.0;
    double thickness = 0.004;
};

/// Kinetic inductance 4 pi lambda_bar^2 L_y / S of a ring with
/// cross-section S [um^2].  Result in um.
double kinetic_inductance(double lambda_bar, double length_y, double cross_section);

/// London supercurrent -c (phi_ext - n Phi_0) / (kinetic + geometric) for
/// winding number n.  Fluxes in units of Phi_0, c = light_speed_ratio in
/// c1 = 1 units; the returned current carries units of c * Phi_0 / um.
double supercurrent(double phi_ext, int winding, double kinetic, double geometric,
                    const DeviceParams& device);

enum class LogFactor {
    Exact,      // ln(L_y / L_x)
    OrderUnity, // the order-unity convention: log factor replaced by 1
};

/// Crossover cross-section 2 pi lambda_bar^2 / ln(L_y/L_x) separating the
/// thick- and thin-ring regimes.  Result in um^2.
double crossover_area(double lambda_bar, double length_y, double length_x,
                      LogFactor log_factor = LogFactor::Exact);

/// Helper estimate for the ring geometric inductance, 2 L_y ln(L_y/L_x),
/// Gaussian length units.  The measured value should be preferred when known.
double geometric_inductance_estimate(double length_y, double length_x);

/// Arm currents of the double-arm device for total current I and external
/// flux phi_ext (units of Phi_0).  first + second == I exactly.
std::pair<double, double> arm_currents(double total_current, double phi_ext, int winding,
                                       const CircuitParams& circuit, const DeviceParams& device);

struct EnergyBias {
    double energy_split;  // between the n = 0, 1 flux minima
    double force;         // energy_split / L_x, acting on a tunneling vortex
};

/// Flux-bias energy split Phi_0 * delta_phi_ext / L_tot and the resulting
/// driving force.  delta_phi_ext is the deviation from half-quantum bias.
EnergyBias energy_bias(double delta_phi_ext, double inductance_total, double length_x);

/// True when |energy_split| exceeds the pair-production energy 2M, i.e.
/// real vortices could nucleate.  A warning condition, not an error.
bool nucleation_risk(double energy_split, double mass);

/// Dimensionless Euclidean friction action pi omega_0 tau_el n_e L_x^2 d
/// with tau_el = 2d/v_F and n_e = k_F^3 / 3 pi^2; v_F cancels, leaving
/// omega0_ratio * k_F^4 d^2 L_x^2 / (3 pi).
double friction_action(const FrictionInputs& inputs);

/// Stable branch of the Ginzburg-Landau suppression u^2 (1 - u) = j_norm^2:
/// the largest root u in [2/3, 1], resolved to 1e-12.  j_norm is the current
/// density over e n_s^0 v_cr.  Throws Error("depairing") when
/// j_norm^2 > 4/27 (no superconducting solution).
double order_parameter_suppression(double j_norm);

}  // namespace vortsim
