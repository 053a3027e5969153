#include "vortsim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "vortsim/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vortsim {

namespace {

constexpr int kMaxHalvings = 6;
constexpr double kDriftGate = 1e-10;  // required of the converged level

void apply_thread_hint(const RunConfig& config) {
#ifdef _OPENMP
    if (config.threads > 0) omp_set_num_threads(config.threads);
#else
    (void)config;
#endif
}

std::string format_sci(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

double resolve_uv_coefficient(const RunConfig& config) {
    if (config.uv_coefficient) return *config.uv_coefficient;
    const int m_y = config.grid.transverse_indices.front();
    return calibrate_uv_coefficient(config.calibration_mass, [&](double mass) {
        return run_single(config, mass, 0.0, m_y).transport;
    });
}

SingleRunResult run_single(const RunConfig& config, double mass0, double uv_coeff,
                           int transverse_index) {
    validate(config);
    if (!(mass0 > 0.0)) fail("domain", "run_single requires M0 > 0");
    apply_thread_hint(config);

    PulseSpec pulse = config.pulse;
    pulse.mass = mass0;
    const ModeGrid grid =
        build_mode_grid(config.grid.slots, config.device.length_x, config.device.length_y,
                        transverse_index, config.grid.gauge_quanta);

    const double span = pulse.window_end - pulse.window_start;
    const long base_steps = std::max<long>(1, std::llround(span / config.integrator.dt));

    GridRunOptions options;
    options.sample_stride = config.integrator.sample_stride;
    options.per_mode_samples = config.output.emit_per_mode;
    options.parallel = true;

    SingleRunResult out;
    out.mass0 = mass0;
    out.transverse_index = transverse_index;
    out.uv_coeff = uv_coeff;

    double prev_q = 0.0;
    std::vector<double> history;
    for (int level = 0; level <= kMaxHalvings; ++level) {
        options.dt = span / static_cast<double>(base_steps << level);
        GridRunResult run = integrate_grid(grid, pulse, config.device, options);
        const double q =
            grid.length_y * run.transport_integral + uv_coeff * mass0 * mass0;
        history.push_back(q);
        const bool drift_ok = run.wronskian_max_drift <= kDriftGate;
        if (level > 0) {
            const double denom =
                std::max({std::abs(q), std::abs(prev_q), 1e-12});
            if (std::abs(q - prev_q) <= config.integrator.convergence_tol * denom &&
                drift_ok) {
                out.transport = q;
                out.n_final = run.n_final;
                out.dt_used = run.dt;
                out.wronskian_max_drift = run.wronskian_max_drift;
                out.halvings = level;
                out.grid = std::move(run);
                return out;
            }
        }
        prev_q = q;
    }
    std::string diag = "transport did not converge in " +
                       std::to_string(kMaxHalvings) + " halvings (M0 = " +
                       format_sci(mass0) + "; Q history:";
    for (double q : history) diag += " " + format_sci(q);
    diag += ")";
    fail("convergence", diag);
}

SingleRunResult run_single(const RunConfig& config, double mass0) {
    return run_single(config, mass0, resolve_uv_coefficient(config),
                      config.grid.transverse_indices.front());
}

SweepResult run_sweep(const RunConfig& config, int transverse_index,
                      const std::function<void(const SingleRunResult&)>& on_result) {
    validate(config);
    const double uv = resolve_uv_coefficient(config);
    std::vector<double> masses = config.sweep_masses;
    std::sort(masses.begin(), masses.end());

    SweepResult sweep;
    for (double mass : masses) {
        SingleRunResult run = run_single(config, mass, uv, transverse_index);
        sweep.entries.push_back({run.mass0, run.transport, run.n_final,
                                 run.wronskian_max_drift, run.dt_used});
        if (on_result) on_result(run);
    }
    if (sweep.entries.size() >= 3) {
        std::vector<std::pair<double, double>> points;
        points.reserve(sweep.entries.size());
        for (const auto& e : sweep.entries) points.emplace_back(e.mass0, e.transport);
        try {
            sweep.fit = fit_exponential(points);
        } catch (const Error& err) {
            if (err.category() != "fit") throw;  // raw points stand on their own
        }
    }
    return sweep;
}

ExponentialFit fit_exponential(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) fail("fit", "exponential fit needs at least three points");
    const double sign = points.front().second > 0.0   ? 1.0
                        : points.front().second < 0.0 ? -1.0
                                                      : 0.0;
    if (sign == 0.0) fail("fit", "exponential fit requires nonzero transport values");
    for (const auto& [m, q] : points)
        if (q * sign <= 0.0)
            fail("fit", "transport changes sign across the sweep; no exponential fit");

    // ln|Q| = ln A - rate * M0, ordinary least squares.
    const double n = static_cast<double>(points.size());
    double sm = 0.0, sy = 0.0, smm = 0.0, smy = 0.0;
    for (const auto& [m, q] : points) {
        const double y = std::log(std::abs(q));
        sm += m;
        sy += y;
        smm += m * m;
        smy += m * y;
    }
    const double det = n * smm - sm * sm;
    if (det == 0.0) fail("fit", "degenerate M0 values");
    const double slope = (n * smy - sm * sy) / det;
    const double intercept = (sy - slope * sm) / n;

    ExponentialFit fit;
    fit.rate = -slope;
    fit.amplitude = std::exp(intercept);
    fit.max_ln_residual = 0.0;
    for (const auto& [m, q] : points) {
        const double y = std::log(std::abs(q));
        fit.max_ln_residual =
            std::max(fit.max_ln_residual, std::abs(y - (intercept + slope * m)));
    }
    return fit;
}

namespace {

RunConfig quick_config(const RunConfig& base) {
    RunConfig cfg = base;
    cfg.grid.slots = 8;
    cfg.grid.transverse_indices = {0};
    cfg.grid.gauge_quanta = 0;
    cfg.pulse.gauge_quanta = 0;
    cfg.integrator.dt = 5e-4;
    return cfg;
}

}  // namespace

std::vector<CheckResult> self_check(const RunConfig& base) {
    const RunConfig cfg = quick_config(base);
    validate(cfg);
    std::vector<CheckResult> results;
    auto record = [&results](const std::string& name, bool ok, const std::string& detail) {
        results.push_back({name, ok, detail});
    };

    const ModeGrid grid = build_mode_grid(cfg.grid.slots, cfg.device.length_x,
                                          cfg.device.length_y, 0);
    const double volume = grid.volume;

    // Free mode: the drive off, every mode stays on the analytic vacuum orbit.
    {
        PulseSpec off = cfg.pulse;
        off.amplitude = 0.0;
        const Wavevector k{grid.k_list[1], 0.0};
        const ModeTrajectory traj =
            integrate_mode(k, grid, off, cfg.device, cfg.integrator.dt, 4000);
        const double omega0 = std::sqrt(k.kx * k.kx + off.mass * off.mass);
        double worst = 0.0;
        for (const auto& s : traj.samples) {
            const std::complex<double> expected =
                std::polar(1.0 / std::sqrt(2.0 * omega0 * volume),
                           -omega0 * (s.t - off.window_start));
            worst = std::max(worst, std::abs(s.f - expected) / std::abs(expected));
        }
        record("free-mode analytic orbit", worst <= 1e-9,
               "max rel deviation " + format_sci(worst));
    }

    // Null drive: exact +/- cancellation and empty occupation.
    {
        PulseSpec off = cfg.pulse;
        off.amplitude = 0.0;
        GridRunOptions options;
        options.dt = cfg.integrator.dt;
        options.sample_stride = cfg.integrator.sample_stride;
        const GridRunResult run = integrate_grid(grid, off, cfg.device, options);
        double q_max = 0.0, n_max = 0.0;
        for (const auto& rec : run.series) {
            q_max = std::max(q_max, std::abs(rec.q_bare));
            n_max = std::max(n_max, std::abs(rec.n_total));
        }
        record("null drive", q_max == 0.0 && n_max <= 1e-12,
               "max |q_bare| " + format_sci(q_max) + ", max |N| " + format_sci(n_max));
        record("Wronskian conservation", run.wronskian_max_drift <= 1e-10,
               "max drift " + format_sci(run.wronskian_max_drift));
    }

    // Sudden quench against the Bogoliubov matching oracle.
    {
        const double m1 = 2.0, m2 = 5.0;
        ModeState start;
        start.k = {0.0, 0.0};
        start.t = 0.0;
        start.f = {1.0 / std::sqrt(2.0 * m1 * volume), 0.0};
        start.f_dot = {0.0, -m1 * start.f.real()};
        auto w1 = [m1](double) { return m1 * m1; };
        auto w2 = [m2](double) { return m2 * m2; };
        const ModeState mid =
            integrate_state(start, 1.75, 2.5e-4, 1 << 20, w1, volume).samples.back();
        const ModeState fin =
            integrate_state(mid, 3.5, 2.5e-4, 1 << 20, w2, volume).samples.back();
        const std::complex<double> i_unit{0.0, 1.0};
        const std::complex<double> minus = fin.f - i_unit * fin.f_dot / m2;
        const double beta_sq = 0.5 * m2 * volume * std::norm(minus);
        const double expected = (m1 - m2) * (m1 - m2) / (4.0 * m1 * m2);
        const double rel = std::abs(beta_sq - expected) / expected;
        const double n_k = occupation(fin, m2, volume);
        const bool pairing_ok = std::abs(n_k - 2.0 * beta_sq) <= 1e-9 * std::max(1.0, n_k);
        record("sudden quench", rel <= 1e-6 && pairing_ok,
               "|beta|^2 rel err " + format_sci(rel));
    }

    // Mirror symmetry of the drive-off spectrum.
    {
        PulseSpec off = cfg.pulse;
        off.amplitude = 0.0;
        const Wavevector kp{grid.k_list[1], 0.0};
        const Wavevector km{grid.k_list[2], 0.0};
        const ModeState sp =
            integrate_mode(kp, grid, off, cfg.device, 1e-3, 1 << 20).samples.back();
        const ModeState sm =
            integrate_mode(km, grid, off, cfg.device, 1e-3, 1 << 20).samples.back();
        const bool equal = std::norm(sp.f) == std::norm(sm.f);
        record("mirror symmetry", equal, "|f(+k)|^2 == |f(-k)|^2 bitwise");
    }

    // Quantization of the canonical pulse.
    {
        bool ok = false;
        std::string detail;
        try {
            ok = check_quantization(cfg.pulse, cfg.device, cfg.device.length_x) == 0;
            detail = "n' = 0";
        } catch (const Error& err) {
            detail = err.what();
        }
        record("quantization", ok, detail);
    }

    return results;
}

}  // namespace vortsim
