#pragma once

#include "vortsim/observables.hpp"

namespace vortsim {

struct GridRunOptions {
    double dt = 2.5e-4;
    int sample_stride = 100;
    bool parallel = true;          // false = serial reference path
    bool per_mode_samples = false; // fill per-mode data at the final sample
};

/// Output of one full-grid integration at fixed dt for a single (M0, k_y).
struct GridRunResult {
    std::vector<TimeSeriesRecord> series;  // every sample_stride steps + endpoints
    double transport_integral = 0.0;       // ∫ q_reg dt at integrator resolution
    double n_final = 0.0;
    double wronskian_max_drift = 0.0;
    double dt = 0.0;                       // effective step
    long steps = 0;
    std::vector<ModeState> final_states;   // grid order, at t_f

    /// Trapezoid of q_reg over the sampled series; diagnostic against
    /// transport_integral.
    double series_transport_integral() const;
};

/// Integrates every mode of the grid over the pulse window in lockstep.
/// Modes advance independently (parallel when requested); all reductions
/// run serially in grid order, so results are bit-identical for any worker
/// count.  Throws Error("integration") when the Wronskian drifts above
/// 1e-6, Error("step-size") when omega * dt exceeds the accuracy guard.
GridRunResult integrate_grid(const ModeGrid& grid, const PulseSpec& pulse,
                             const DeviceParams& device, const GridRunOptions& options);

}  // namespace vortsim
