#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vortsim/pulse.hpp"

namespace vortsim {

struct GridConfig {
    int slots = 32;                        // N_x
    std::vector<int> transverse_indices = {0};  // m_y values, one run each
    int gauge_quanta = 0;                  // n' relabeling (validation/test hook)
};

struct IntegratorConfig {
    double dt = 2.5e-4;
    int sample_stride = 100;
    double convergence_tol = 1e-6;  // relative |ΔQ| between dt halvings
};

struct OutputConfig {
    std::string directory = "out";
    bool emit_per_mode = false;
    bool emit_plot_scripts = false;
};

/// Full run description.  The defaults reproduce the reference device and
/// drive: L_x = 1, L_y = 10 um film, d = 0.004, xi = 0.02, lambda = 0.15 um,
/// 25x suppression, c/c1 = 7.5, C = 0.005, t0 = 80, window -400..400,
/// N_x = 32, m_y = {0}, M0 sweep {3,4,5,6,7}, uv coefficient 0.0215.
/// All runs are deterministic; there is no seed anywhere.
struct RunConfig {
    DeviceParams device;
    PulseSpec pulse;
    GridConfig grid;
    IntegratorConfig integrator;
    std::vector<double> sweep_masses = {3.0, 4.0, 5.0, 6.0, 7.0};
    std::optional<double> uv_coefficient = 0.0215;  // nullopt = calibrate first
    double calibration_mass = 10.0;
    OutputConfig output;
    int threads = 0;  // hint only; results are invariant
};

/// Parses the flat key-value text format (dotted section names, '#'
/// comments, '=' separated).  Unknown keys are rejected; an empty file
/// yields the full defaults.  Table paths are resolved relative to base_dir.
RunConfig parse_config(std::string_view text, const std::string& base_dir = ".");

/// Loads and validates a configuration file.  Errors name the offending
/// key and constraint (Error("config") / Error("io")).
RunConfig load_config(const std::string& path);

/// Cross-field validation of a complete configuration.
void validate(const RunConfig& config);

/// Two-column (t, value) whitespace-separated table with strictly
/// increasing t; '#' starts a comment.
std::vector<TablePoint> load_table(const std::string& path);

}  // namespace vortsim
