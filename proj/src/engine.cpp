#include "vortsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vortsim/errors.hpp"

namespace vortsim {

namespace {

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double value) {
        const double y = value - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

constexpr long kBlockTarget = 2048;  // steps per stage-table block

}  // namespace

double GridRunResult::series_transport_integral() const {
    KahanSum acc;
    for (std::size_t i = 1; i < series.size(); ++i)
        acc.add(0.5 * (series[i].q_reg + series[i - 1].q_reg) *
                (series[i].t - series[i - 1].t));
    return acc.sum;
}

GridRunResult integrate_grid(const ModeGrid& grid, const PulseSpec& pulse,
                             const DeviceParams& device, const GridRunOptions& options) {
    validate(pulse);
    if (!(options.dt > 0.0)) fail("step-size", "integrate_grid requires dt > 0");
    if (options.sample_stride < 1) fail("config", "sample_stride must be at least 1");

    const EffectiveField field(pulse, device);
    const MassProfile mass(pulse);
    const int n_modes = grid.mode_count();
    const double t_start = pulse.window_start;
    const double span = pulse.window_end - pulse.window_start;
    const long n_steps = std::max<long>(1, std::llround(span / options.dt));
    const double h = span / static_cast<double>(n_steps);
    const long stride = options.sample_stride;
    const long n_samples = n_steps / stride + 1 + (n_steps % stride ? 1 : 0);

    const double ky_sq = grid.k_transverse * grid.k_transverse;
    const double volume = grid.volume;
    const double center = grid.center;

    // Mode state and per-mode accumulators, indexed in grid order.
    std::vector<double> y(static_cast<std::size_t>(n_modes) * 4);
    std::vector<double> cur_sum(n_modes, 0.0), cur_comp(n_modes, 0.0);
    std::vector<double> c_last(n_modes, 0.0);
    std::vector<double> drift_max(n_modes, 0.0);
    std::vector<double> f_sq_samples(static_cast<std::size_t>(n_samples) * n_modes);
    std::vector<double> g_sq_samples(static_cast<std::size_t>(n_samples) * n_modes);

    std::vector<double> c_first(n_modes, 0.0);
    for (int m = 0; m < n_modes; ++m) {
        const ModeState init =
            vacuum_init({grid.k_list[m], grid.k_transverse}, grid, mass.base_mass(), field);
        y[4 * m + 0] = init.f.real();
        y[4 * m + 1] = init.f.imag();
        y[4 * m + 2] = init.f_dot.real();
        y[4 * m + 3] = init.f_dot.imag();
    }

    const double e_start = field.value_unchecked(t_start);
    for (int m = 0; m < n_modes; ++m) {
        const double f_sq = y[4 * m] * y[4 * m] + y[4 * m + 1] * y[4 * m + 1];
        c_first[m] = (grid.k_list[m] - e_start) * f_sq;
        cur_sum[m] = c_first[m];
        f_sq_samples[m] = f_sq;
        g_sq_samples[m] = y[4 * m + 2] * y[4 * m + 2] + y[4 * m + 3] * y[4 * m + 3];
    }

    // Counterterm boundary accumulation: ∫ (Ẽ - center) dt by the same
    // trapezoid as the mode currents.
    KahanSum disp_sum;
    disp_sum.add(e_start - center);

    const long block =
        std::max<long>(1, std::min<long>(n_steps, kBlockTarget));
    std::vector<double> stage_e(static_cast<std::size_t>(block) * rk6::kStages);
    std::vector<double> stage_m2(static_cast<std::size_t>(block) * rk6::kStages);
    const double guard = 0.25 / (h * h);
    const double k_lo = *std::min_element(grid.k_list.begin(), grid.k_list.end());
    const double k_hi = *std::max_element(grid.k_list.begin(), grid.k_list.end());

    for (long b0 = 0; b0 < n_steps; b0 += block) {
        const long bsteps = std::min(block, n_steps - b0);

        // Stage tables for this block, shared by every mode.
        for (long i = 0; i < bsteps; ++i) {
            const double t = t_start + h * static_cast<double>(b0 + i);
            for (int s = 0; s < rk6::kStages; ++s) {
                const double ts = t + rk6::kNodes[s] * h;
                const double e = field.value_unchecked(ts);
                const double mv = mass(ts);
                stage_e[i * rk6::kStages + s] = e;
                stage_m2[i * rk6::kStages + s] = mv * mv;
                const double reach = std::max(std::abs(k_lo - e), std::abs(k_hi - e));
                if (ky_sq + reach * reach + mv * mv > guard)
                    fail("step-size", "accuracy guard violated: omega * dt > 0.5");
            }
            if (b0 + i > 0) disp_sum.add(stage_e[i * rk6::kStages] - center);
        }

        // Boundary drive values for the per-mode current accumulation:
        // boundary i+1 of step i is stage 0 of the next step (node 1 has
        // c = 1, but evaluating at the next step's base time keeps one
        // definition of t per boundary).
        std::vector<double> e_bnd(bsteps);
        for (long i = 0; i + 1 < bsteps; ++i) e_bnd[i] = stage_e[(i + 1) * rk6::kStages];
        e_bnd[bsteps - 1] =
            field.value_unchecked(t_start + h * static_cast<double>(b0 + bsteps));

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (options.parallel)
#endif
        for (int m = 0; m < n_modes; ++m) {
            const double kx = grid.k_list[m];
            double* ym = &y[4 * m];
            double local_sum = cur_sum[m];
            double local_comp = cur_comp[m];
            double local_drift = drift_max[m];
            double w2[rk6::kStages];
            for (long i = 0; i < bsteps; ++i) {
                const double* es = &stage_e[i * rk6::kStages];
                const double* m2s = &stage_m2[i * rk6::kStages];
                for (int s = 0; s < rk6::kStages; ++s)
                    w2[s] = omega_sq_from(kx, ky_sq, es[s], m2s[s]);
                rk6::advance(ym, h, w2);

                const double f_sq = ym[0] * ym[0] + ym[1] * ym[1];
                const double c_now = (kx - e_bnd[i]) * f_sq;
                const double yk = c_now - local_comp;
                const double tk = local_sum + yk;
                local_comp = (tk - local_sum) - yk;
                local_sum = tk;

                const long bnd = b0 + i + 1;
                const bool at_sample = (bnd % stride == 0) || (bnd == n_steps);
                if (at_sample) {
                    const long slot = (bnd == n_steps && n_steps % stride)
                                          ? n_samples - 1
                                          : bnd / stride;
                    f_sq_samples[slot * n_modes + m] = f_sq;
                    g_sq_samples[slot * n_modes + m] = ym[2] * ym[2] + ym[3] * ym[3];
                    const double w_im = 2.0 * (ym[1] * ym[2] - ym[0] * ym[3]);
                    local_drift = std::max(local_drift, std::abs(w_im * volume - 1.0));
                }
                if (bnd == n_steps) c_last[m] = c_now;
            }
            cur_sum[m] = local_sum;
            cur_comp[m] = local_comp;
            drift_max[m] = local_drift;
        }
    }
    const double t_end = pulse.window_end;
    disp_sum.add(field.value_unchecked(t_end) - center);

    GridRunResult out;
    out.dt = h;
    out.steps = n_steps;
    for (int m = 0; m < n_modes; ++m)
        out.wronskian_max_drift = std::max(out.wronskian_max_drift, drift_max[m]);
    if (out.wronskian_max_drift > 1e-6)
        fail("integration", "Wronskian drift above 1e-6; the integration is unreliable");

    // Full-resolution trapezoid: h (sum over boundaries - half the ends),
    // per mode first, then the fixed-order mode reduction.
    KahanSum mode_total;
    for (int m = 0; m < n_modes; ++m)
        mode_total.add(cur_sum[m] - 0.5 * (c_first[m] + c_last[m]));
    const double e_end = field.value_unchecked(t_end);
    const double disp_integral =
        disp_sum.sum - 0.5 * ((e_start - center) + (e_end - center));
    out.transport_integral =
        2.0 * h * mode_total.sum + h * disp_integral / (kPi * grid.length_y);

    // Sampled series, reduced serially in grid order.
    out.series.resize(n_samples);
    for (long s = 0; s < n_samples; ++s) {
        const long bnd = (s == n_samples - 1) ? n_steps : s * stride;
        const double t = (bnd == n_steps) ? t_end : t_start + h * static_cast<double>(bnd);
        TimeSeriesRecord& rec = out.series[s];
        rec.t = t;
        rec.e_tilde = field.value_unchecked(t);
        rec.q_bare = q_bare_reduce({&f_sq_samples[s * n_modes], static_cast<std::size_t>(n_modes)},
                                   grid.k_list, rec.e_tilde);
        rec.q_reg = regularized_current(rec.q_bare,
                                        pv_counterterm(rec.e_tilde - center, grid.length_y));
        const double mv = mass(t);
        const double m_sq = mv * mv;
        KahanSum occ;
        for (int m = 0; m < n_modes; ++m) {
            const double w2 = omega_sq_from(grid.k_list[m], ky_sq, rec.e_tilde, m_sq);
            const double w = std::sqrt(w2);
            const double energy = g_sq_samples[s * n_modes + m] + w2 * f_sq_samples[s * n_modes + m];
            occ.add((volume / w) * energy - 1.0);
        }
        rec.n_total = occ.sum;
    }
    out.n_final = out.series.back().n_total;

    out.final_states.resize(n_modes);
    for (int m = 0; m < n_modes; ++m) {
        ModeState& st = out.final_states[m];
        st.f = {y[4 * m], y[4 * m + 1]};
        st.f_dot = {y[4 * m + 2], y[4 * m + 3]};
        st.t = t_end;
        st.k = {grid.k_list[m], grid.k_transverse};
    }
    if (options.per_mode_samples) {
        TimeSeriesRecord& last = out.series.back();
        last.per_mode.resize(n_modes);
        const double mv = mass(t_end);
        const double m_sq = mv * mv;
        for (int m = 0; m < n_modes; ++m) {
            const double w2 = omega_sq_from(grid.k_list[m], ky_sq, last.e_tilde, m_sq);
            last.per_mode[m] = {grid.k_list[m], std::norm(out.final_states[m].f),
                                occupation(out.final_states[m], std::sqrt(w2), volume)};
        }
    }
    return out;
}

}  // namespace vortsim
