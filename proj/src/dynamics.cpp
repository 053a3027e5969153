#include "vortsim/dynamics.hpp"

#include <cmath>

#include "vortsim/errors.hpp"

namespace vortsim {

double omega_squared(Wavevector k, double t, const PulseSpec& pulse,
                     const DeviceParams& device) {
    EffectiveField field(pulse, device);
    MassProfile mass(pulse);
    const double m = mass(t);
    return omega_sq_from(k.kx, k.ky * k.ky, field(t), m * m);
}

ModeState vacuum_init(Wavevector k, const ModeGrid& grid, double mass0,
                      const EffectiveField& field) {
    const double t_i = field.window_start();
    const double e_start = field.value_unchecked(t_i);
    if (std::abs(e_start - grid.center) > 1e-9 * std::max(1.0, std::abs(grid.center)))
        fail("integration",
             "vacuum initialization requires the drive to start at the lattice center "
             "(Ẽ(t_i) = n' 2π/L_x)");
    const double omega0 =
        std::sqrt(omega_sq_from(k.kx, k.ky * k.ky, e_start, mass0 * mass0));
    ModeState state;
    state.k = k;
    state.t = t_i;
    state.f = {1.0 / std::sqrt(2.0 * omega0 * grid.volume), 0.0};
    state.f_dot = {0.0, -omega0 * state.f.real()};
    return state;
}

namespace {

// W = f conj(g) - conj(f) g is purely imaginary and conserved; this is its
// imaginary part.  Vacuum trajectories carry W = i/V.
double wronskian_im(const ModeState& state) {
    return 2.0 * (state.f.imag() * state.f_dot.real() -
                  state.f.real() * state.f_dot.imag());
}

}  // namespace

double wronskian_drift(const ModeState& state, double volume) {
    return std::abs(wronskian_im(state) * volume - 1.0);
}

ModeState rk6_step(const ModeState& state, double dt,
                   const std::function<double(double)>& omega_sq) {
    if (!(dt > 0.0)) fail("step-size", "rk6_step requires dt > 0");
    double w2[rk6::kStages];
    for (int s = 0; s < rk6::kStages; ++s) {
        w2[s] = omega_sq(state.t + rk6::kNodes[s] * dt);
        if (w2[s] * dt * dt > 0.25)
            fail("step-size", "accuracy guard violated: omega * dt > 0.5");
    }
    double y[4] = {state.f.real(), state.f.imag(), state.f_dot.real(), state.f_dot.imag()};
    rk6::advance(y, dt, w2);
    ModeState next = state;
    next.f = {y[0], y[1]};
    next.f_dot = {y[2], y[3]};
    next.t = state.t + dt;
    return next;
}

ModeTrajectory integrate_state(const ModeState& start, double t_end, double dt,
                               int sample_stride,
                               const std::function<double(double)>& omega_sq,
                               double volume) {
    if (!(dt > 0.0)) fail("step-size", "integration requires dt > 0");
    if (sample_stride < 1) fail("config", "sample_stride must be at least 1");
    const double span = t_end - start.t;
    if (!(span > 0.0)) fail("domain", "integration window is empty");
    const long n_steps = std::max<long>(1, std::llround(span / dt));
    const double h = span / static_cast<double>(n_steps);

    ModeTrajectory out;
    out.dt = h;
    out.samples.reserve(static_cast<std::size_t>(n_steps / sample_stride) + 2);
    out.samples.push_back(start);

    // Drift is measured against the initial Wronskian so continuation and
    // manufactured-solution runs are checked consistently; for vacuum
    // starts this is the spec metric |W - i/V| / (1/V).
    const double w0 = wronskian_im(start);
    const double w_scale = std::max(std::abs(w0), 1.0 / volume);

    double y[4] = {start.f.real(), start.f.imag(), start.f_dot.real(), start.f_dot.imag()};
    double w2[rk6::kStages];
    double drift_max = 0.0;
    for (long i = 0; i < n_steps; ++i) {
        const double t = start.t + h * static_cast<double>(i);
        for (int s = 0; s < rk6::kStages; ++s) {
            w2[s] = omega_sq(t + rk6::kNodes[s] * h);
            if (w2[s] * h * h > 0.25)
                fail("step-size", "accuracy guard violated: omega * dt > 0.5");
        }
        rk6::advance(y, h, w2);
        const bool at_sample = ((i + 1) % sample_stride == 0) || (i + 1 == n_steps);
        if (at_sample) {
            ModeState s;
            s.k = start.k;
            s.t = (i + 1 == n_steps) ? t_end : start.t + h * static_cast<double>(i + 1);
            s.f = {y[0], y[1]};
            s.f_dot = {y[2], y[3]};
            drift_max = std::max(drift_max, std::abs(wronskian_im(s) - w0) / w_scale);
            out.samples.push_back(s);
        }
    }
    out.wronskian_max_drift = drift_max;
    if (drift_max > 1e-6)
        fail("integration", "Wronskian drift above 1e-6; the integration is unreliable");
    return out;
}

ModeTrajectory integrate_mode(Wavevector k, const ModeGrid& grid, const PulseSpec& pulse,
                              const DeviceParams& device, double dt, int sample_stride) {
    EffectiveField field(pulse, device);
    MassProfile mass(pulse);
    const ModeState start = vacuum_init(k, grid, mass.base_mass(), field);
    const double ky_sq = k.ky * k.ky;
    auto omega_sq = [&field, &mass, kx = k.kx, ky_sq](double t) {
        const double m = mass(t);
        return omega_sq_from(kx, ky_sq, field.value_unchecked(t), m * m);
    };
    return integrate_state(start, pulse.window_end, dt, sample_stride, omega_sq,
                           grid.volume);
}

}  // namespace vortsim
