#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "vortsim/dynamics.hpp"

namespace vortsim {

struct PerModeSample {
    double kx;
    double f_sq;        // |f|^2
    double occupation;  // n_k
};

/// Sampled observables at one output time for a single k_y.
/// q_reg = q_bare + q' holds exactly at every sample.
struct TimeSeriesRecord {
    double t = 0.0;
    double e_tilde = 0.0;
    double q_bare = 0.0;
    double q_reg = 0.0;
    double n_total = 0.0;
    std::vector<PerModeSample> per_mode;  // filled only on request (endpoints)
};

struct SweepEntry {
    double mass0;
    double transport;            // Q
    double n_final;
    double wronskian_max_drift;
    double dt_used;
};

struct ExponentialFit {
    double amplitude;
    double rate;
    double max_ln_residual;
};

/// Per-M0 transport totals, ascending in M0; the fit is attached when the
/// sweep has at least three points.
struct SweepResult {
    std::vector<SweepEntry> entries;
    std::optional<ExponentialFit> fit;
};

/// Compensated sum of 2 (k_x - Ẽ) |f|^2 in the documented reduction order
/// (ascending |m|, + before -, exactly the grid storage order).  The order
/// keeps the +/- pair cancellation exact when the drive is off.
double q_bare_reduce(std::span<const double> f_sq, std::span<const double> k_list,
                     double e_tilde);

/// Bare mode-sum current density at one time.  All states must share t and
/// cover the full grid, in grid order.  Throws Error("grid") otherwise.
double bare_current_density(std::span<const ModeState> states, double e_tilde,
                            const ModeGrid& grid);

/// Analytic Pauli-Villars counterterm (Ẽ - center)/(pi L_y), the WKB
/// regulator contribution entering q with the opposite sign.  displacement
/// is the drive relative to the lattice center.
double pv_counterterm(double displacement, double length_y);

double regularized_current(double q_bare, double q_prime);

/// Q = L_y * (trapezoidal time integral of q_reg) + uv_coeff * M0^2.
/// Throws Error("domain") when the series has a gap above twice its base
/// sample spacing.
double total_transport(std::span<const TimeSeriesRecord> series, double length_y,
                       double mass0, double uv_coeff);

/// Mode energy (per hbar): |f_dot|^2 + omega^2 |f|^2, with omega^2 taken at
/// the instantaneous drive and mass.
double mode_energy(const ModeState& state, double omega_sq);

/// Occupation n_k = (V / omega) * energy - 1; may round below zero by
/// ~1e-12, which is preserved (reports may clamp, the math never does).
double occupation(const ModeState& state, double omega, double volume);

/// N = sum_k n_k over the full grid in the fixed reduction order.
double total_occupation(std::span<const ModeState> states, const ModeGrid& grid,
                        double e_tilde, double mass_at_t);

/// Runs the pipeline at M0 = calibration_mass with no UV correction and
/// returns -Q_raw / M0^2: the finite-Lambda lattice artifact coefficient,
/// assuming tunneling is negligible at that mass.  run_raw_transport(M0)
/// must return Q with uv_coeff = 0.
double calibrate_uv_coefficient(double calibration_mass,
                                const std::function<double(double)>& run_raw_transport);

}  // namespace vortsim
