#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vortsim/output.hpp"
#include "vortsim/runner.hpp"

namespace {

int exit_code_for(const std::string& category) {
    if (category == "config" || category == "domain" || category == "circuit" ||
        category == "depairing" || category == "quantization" || category == "grid")
        return 2;
    if (category == "convergence") return 3;
    if (category == "integration" || category == "step-size") return 4;
    if (category == "fit") return 5;
    if (category == "io") return 6;
    return 1;
}

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::optional<double> mass_override;
    int threads = -1;
    bool emit_plots = false;
};

vortsim::RunConfig make_config(const CliOptions& opts) {
    vortsim::RunConfig cfg = opts.config_path.empty()
                                 ? vortsim::RunConfig{}
                                 : vortsim::load_config(opts.config_path);
    if (!opts.out_dir.empty()) cfg.output.directory = opts.out_dir;
    if (opts.threads >= 0) cfg.threads = opts.threads;
    if (opts.emit_plots) cfg.output.emit_plot_scripts = true;
    vortsim::validate(cfg);
    return cfg;
}

void print_run(const vortsim::SingleRunResult& run) {
    std::cout << "M0 = " << vortsim::format_double(run.mass0)
              << "  Q = " << vortsim::format_double(run.transport)
              << "  N_final = " << vortsim::format_double(run.n_final)
              << "  dt_used = " << vortsim::format_double(run.dt_used)
              << "  wronskian_drift = " << vortsim::format_double(run.wronskian_max_drift)
              << "\n";
}

int cmd_run(const CliOptions& opts) {
    vortsim::RunConfig cfg = make_config(opts);
    const double mass = opts.mass_override.value_or(cfg.pulse.mass);
    vortsim::ensure_directory(cfg.output.directory);
    const vortsim::SingleRunResult run = vortsim::run_single(cfg, mass);
    print_run(run);
    std::cout << "wrote " << vortsim::emit_timeseries_csv(cfg.output.directory, run) << "\n";
    if (cfg.output.emit_per_mode)
        std::cout << "wrote " << vortsim::emit_permode_csv(cfg.output.directory, run) << "\n";
    if (cfg.output.emit_plot_scripts)
        std::cout << "wrote "
                  << vortsim::emit_fig4_script(cfg.output.directory, run.mass0,
                                               run.transverse_index)
                  << "\n";
    return 0;
}

int cmd_sweep(const CliOptions& opts) {
    vortsim::RunConfig cfg = make_config(opts);
    vortsim::ensure_directory(cfg.output.directory);
    for (int m_y : cfg.grid.transverse_indices) {
        vortsim::SweepResult partial;
        auto persist = [&](const vortsim::SingleRunResult& run) {
            print_run(run);
            vortsim::emit_timeseries_csv(cfg.output.directory, run);
            if (cfg.output.emit_per_mode)
                vortsim::emit_permode_csv(cfg.output.directory, run);
            partial.entries.push_back({run.mass0, run.transport, run.n_final,
                                       run.wronskian_max_drift, run.dt_used});
            vortsim::emit_sweep_csv(cfg.output.directory, partial, m_y);
        };
        const vortsim::SweepResult sweep = vortsim::run_sweep(cfg, m_y, persist);
        std::cout << "wrote " << vortsim::emit_sweep_csv(cfg.output.directory, sweep, m_y)
                  << "\n";
        if (sweep.fit) {
            std::cout << "fit: Q ~ " << vortsim::format_double(sweep.fit->amplitude)
                      << " * exp(-" << vortsim::format_double(sweep.fit->rate)
                      << " M0), max ln residual "
                      << vortsim::format_double(sweep.fit->max_ln_residual) << "\n";
            std::cout << "wrote "
                      << vortsim::emit_fit_csv(cfg.output.directory, *sweep.fit, m_y) << "\n";
        }
        if (cfg.output.emit_plot_scripts) {
            std::cout << "wrote "
                      << vortsim::emit_fig3_script(cfg.output.directory, sweep, m_y) << "\n";
            // The occupation-history figure follows the sweep mass closest
            // to the adiabaticity example M0 = 5.
            double fig_mass = sweep.entries.front().mass0;
            for (const auto& e : sweep.entries)
                if (std::abs(e.mass0 - 5.0) < std::abs(fig_mass - 5.0)) fig_mass = e.mass0;
            std::cout << "wrote "
                      << vortsim::emit_fig4_script(cfg.output.directory, fig_mass, m_y)
                      << "\n";
        }
    }
    return 0;
}

int cmd_calibrate(const CliOptions& opts) {
    vortsim::RunConfig cfg = make_config(opts);
    cfg.uv_coefficient.reset();
    const double coeff = vortsim::resolve_uv_coefficient(cfg);
    std::cout << "uv_coefficient = " << vortsim::format_double(coeff)
              << "  (calibrated at M0 = " << vortsim::format_double(cfg.calibration_mass)
              << ", N_x = " << cfg.grid.slots << ")\n";
    if (!opts.out_dir.empty() || !cfg.output.directory.empty()) {
        vortsim::ensure_directory(cfg.output.directory);
        const std::string path = cfg.output.directory + "/calibration.csv";
        std::ofstream out(path, std::ios::binary);
        out << "uv_coefficient,calibration_mass,slots\n"
            << vortsim::format_double(coeff) << ','
            << vortsim::format_double(cfg.calibration_mass) << ',' << cfg.grid.slots << '\n';
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

int cmd_check(const CliOptions& opts) {
    vortsim::RunConfig cfg = make_config(opts);
    std::cout << "config OK\n";
    bool all_ok = true;
    for (const auto& check : vortsim::self_check(cfg)) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << ": "
                  << check.detail << "\n";
        all_ok = all_ok && check.passed;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Induced vortex tunneling simulator and device calculator"};
    app.require_subcommand(1);

    CliOptions opts;
    app.add_option("--config", opts.config_path, "run-configuration file");
    app.add_option("--out", opts.out_dir, "output directory (overrides config)");
    app.add_option("--threads", opts.threads, "worker-count hint; results are invariant");
    app.add_flag("--emit-plots", opts.emit_plots, "also write gnuplot scripts");
    double m0 = 0.0;
    auto* m0_opt = app.add_option("--m0", m0, "override M0 for the run verb");

    auto* run = app.add_subcommand("run", "single-M0 run, writes the time series");
    auto* sweep = app.add_subcommand("sweep", "M0 sweep with the exponential fit");
    auto* calibrate = app.add_subcommand("calibrate", "derive the UV correction coefficient");
    auto* check = app.add_subcommand("check", "validate config and run the quick invariant suite");

    CLI11_PARSE(app, argc, argv);
    if (m0_opt->count() > 0) opts.mass_override = m0;

    try {
        if (run->parsed()) return cmd_run(opts);
        if (sweep->parsed()) return cmd_sweep(opts);
        if (calibrate->parsed()) return cmd_calibrate(opts);
        if (check->parsed()) return cmd_check(opts);
    } catch (const vortsim::Error& err) {
        std::cerr << "error [" << err.category() << "]: " << err.what() << "\n";
        return exit_code_for(err.category());
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 1;
}
