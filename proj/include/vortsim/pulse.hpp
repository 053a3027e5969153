#pragma once

#include <vector>

#include "vortsim/device.hpp"

namespace vortsim {

enum class PulseShape {
    GaussianDerivative,  // A'/A_c = C (t/t0) exp(-(t/t0)^2)
    Tabulated,           // piecewise-linear samples of A'/A_c
};

struct TablePoint {
    double t;
    double value;
};

/// Drive profile and mass profile for one run.  Times in simulation units
/// (1 um / c1); mass in units of c1 / um.
struct PulseSpec {
    double amplitude = 0.005;     // C
    double width = 80.0;          // t0
    double window_start = -400.0; // t_i
    double window_end = 400.0;    // t_f
    PulseShape shape = PulseShape::GaussianDerivative;
    std::vector<TablePoint> drive_table;  // used when shape == Tabulated
    double mass = 5.0;            // M0, pair-production frequency during the pulse
    double regulator_mass = 0.0;  // Pauli-Villars M'; handled analytically, 0 = unset
    std::vector<TablePoint> mass_table;   // optional tabulated M(t); must start at M0
    int gauge_quanta = 0;         // n' lattice relabeling; 0 in production runs
};

/// Window and profile invariants: t_i < 0 < t_f, |t_i| and t_f >= 5 t0,
/// M0 > 0, tables strictly increasing in t.  Throws Error("config").
void validate(const PulseSpec& spec);

/// A'(t)/A_c for the canonical shape.  Odd in t; peak C e^{-1/2}/sqrt(2)
/// at t = t0/sqrt(2).
double vector_potential_ratio(double t, const PulseSpec& spec);

/// hbar c d / (8 alpha_EM lambda_bar^2 xi) in internal units; multiplies
/// A'/A_c to give the magnitude of the driving force.
double driving_force_prefactor(const DeviceParams& device);

/// Driving force F = -prefactor * a_ratio on a vortex, internal units.
double driving_force_from_potential(double a_ratio, const DeviceParams& device);

/// The transformed-frame drive Ẽ(t) = prefactor * ∫_{t_i}^t A'(t')/A_c dt'
/// plus the gauge offset n' 2 pi / L_x.  Units of k_x (inverse length).
/// The canonical shape uses the closed-form integral; tabulated shapes use
/// the exact piecewise-quadratic cumulative integral.
class EffectiveField {
public:
    EffectiveField(const PulseSpec& spec, const DeviceParams& device);

    /// Ẽ(t); throws Error("domain") outside [t_i, t_f].
    double operator()(double t) const;

    /// Same value without the window check; used by the integrator whose
    /// stage times can graze the window edge by round-off.
    double value_unchecked(double t) const;

    double prefactor() const { return prefactor_; }
    double center() const { return center_; }  // n' 2 pi / L_x
    double window_start() const { return t_start_; }
    double window_end() const { return t_end_; }

private:
    double cumulative_ratio_integral(double t) const;  // ∫_{t_i}^t A'/A_c dt'

    double prefactor_;
    double amplitude_;
    double width_;
    double t_start_;
    double t_end_;
    double center_;
    double edge_value_;  // exp(-(t_i/t0)^2) for the closed form
    bool gaussian_;
    std::vector<double> node_t_;
    std::vector<double> node_a_;
    std::vector<double> node_cumulative_;
};

/// Mass profile M(t): constant M0, or piecewise linear through mass_table
/// (flat beyond the table ends).  A table must start from M0 at t_i.
class MassProfile {
public:
    explicit MassProfile(const PulseSpec& spec);

    double operator()(double t) const;
    double base_mass() const { return base_; }
    bool constant() const { return node_t_.empty(); }

private:
    double base_;
    std::vector<double> node_t_;
    std::vector<double> node_m_;
};

/// Convenience form of the profile evaluation.
double mass_profile(double t, const PulseSpec& spec);

/// Winding check on the force integral: returns the integer n' with
/// ∫ F dt = 2 pi n' / L_x, provided the residual is below tol (in units of
/// the quantum); otherwise throws Error("quantization").  The canonical
/// shape integrates to zero, giving n' = 0.
int check_quantization(const PulseSpec& spec, const DeviceParams& device, double length_x,
                       double tol = 1e-6);

}  // namespace vortsim
