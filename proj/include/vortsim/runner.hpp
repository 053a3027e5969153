#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>

#include "vortsim/config.hpp"
#include "vortsim/engine.hpp"

namespace vortsim {

/// Converged result for one (M0, m_y).
struct SingleRunResult {
    double mass0 = 0.0;
    int transverse_index = 0;
    double transport = 0.0;       // Q, uv correction applied
    double n_final = 0.0;
    double dt_used = 0.0;
    double wronskian_max_drift = 0.0;
    int halvings = 0;
    double uv_coeff = 0.0;
    GridRunResult grid;           // final-level series and states
};

/// Resolves the UV coefficient: the configured number, or a calibration
/// run at calibration_mass when the config says "calibrate".
double resolve_uv_coefficient(const RunConfig& config);

/// Runs pulse -> dynamics -> observables for one (M0, m_y), halving dt
/// until the transport changes by less than convergence_tol relative and
/// the Wronskian drift is at or below 1e-10.  Fails with
/// Error("convergence") after six halvings.
SingleRunResult run_single(const RunConfig& config, double mass0, double uv_coeff,
                           int transverse_index);

/// Convenience form: resolves the coefficient, runs at m_y = first entry.
SingleRunResult run_single(const RunConfig& config, double mass0);

/// Sweeps the configured M0 list (ascending) at one m_y; attaches the
/// exponential fit when the sweep has at least three points.  on_result,
/// when set, is invoked after each run so partial results can be
/// persisted before a failure aborts the sweep.
SweepResult run_sweep(const RunConfig& config, int transverse_index,
                      const std::function<void(const SingleRunResult&)>& on_result = {});

/// Least squares of ln|Q| = ln A - rate * M0.  Requires at least three
/// points of one nonzero sign; otherwise Error("fit").
ExponentialFit fit_exponential(std::span<const std::pair<double, double>> points);

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

/// Fast invariant suite at N_x = 8 (the `check` verb): free-mode oracle,
/// null drive, Wronskian conservation, sudden-quench matching, mirror
/// symmetry, quantization.
std::vector<CheckResult> self_check(const RunConfig& config);

}  // namespace vortsim
