#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "vortsim/grid.hpp"
#include "vortsim/pulse.hpp"

namespace vortsim {

/// One mode's quantum state: the mode function f (units (2 omega V)^{-1/2})
/// and its time derivative.  The Wronskian f conj(f_dot) - conj(f) f_dot
/// stays at i/V along any vacuum trajectory.
struct ModeState {
    std::complex<double> f;
    std::complex<double> f_dot;
    double t = 0.0;
    Wavevector k;
};

/// omega^2 = k_y^2 + (k_x - E)^2 + M^2 in c1 = 1 units; m_sq = M^2.
inline double omega_sq_from(double kx, double ky_sq, double e_tilde, double m_sq) {
    const double d = kx - e_tilde;
    return ky_sq + d * d + m_sq;
}

/// Mode frequency at time t for the given pulse and device (Eq. of motion
/// frequency; always >= M(t)^2 > 0).
double omega_squared(Wavevector k, double t, const PulseSpec& pulse, const DeviceParams& device);

/// Butcher (1964) seven-stage sixth-order Runge-Kutta tableau.
namespace rk6 {

inline constexpr int kStages = 7;
inline constexpr double kNodes[kStages] = {0.0,       1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0,
                                           0.5,       0.5,       1.0};
inline constexpr double kWeights[kStages] = {11.0 / 120.0, 0.0,        27.0 / 40.0,
                                             27.0 / 40.0,  -4.0 / 15.0, -4.0 / 15.0,
                                             11.0 / 120.0};
inline constexpr double kA[kStages][kStages - 1] = {
    {},
    {1.0 / 3.0},
    {0.0, 2.0 / 3.0},
    {1.0 / 12.0, 1.0 / 3.0, -1.0 / 12.0},
    {-1.0 / 16.0, 9.0 / 8.0, -3.0 / 16.0, -3.0 / 8.0},
    {0.0, 9.0 / 8.0, -3.0 / 8.0, -3.0 / 4.0, 1.0 / 2.0},
    {9.0 / 44.0, -9.0 / 11.0, 63.0 / 44.0, 18.0 / 11.0, 0.0, -16.0 / 11.0},
};

/// Advances y = (Re f, Im f, Re g, Im g) through one step of
/// f' = g, g' = -omega^2(t) f, with omega^2 precomputed at the seven
/// stage times.  Shared by the generic stepper and the grid kernel so
/// both produce identical floating-point results.
inline void advance(double y[4], double h, const double stage_omega_sq[kStages]) {
    double k[kStages][4];
    double ys[4];
    for (int s = 0; s < kStages; ++s) {
        ys[0] = y[0];
        ys[1] = y[1];
        ys[2] = y[2];
        ys[3] = y[3];
        for (int j = 0; j < s; ++j) {
            const double a = kA[s][j];
            if (a == 0.0) continue;
            const double ah = a * h;
            ys[0] += ah * k[j][0];
            ys[1] += ah * k[j][1];
            ys[2] += ah * k[j][2];
            ys[3] += ah * k[j][3];
        }
        const double w2 = stage_omega_sq[s];
        k[s][0] = ys[2];
        k[s][1] = ys[3];
        k[s][2] = -w2 * ys[0];
        k[s][3] = -w2 * ys[1];
    }
    for (int s = 0; s < kStages; ++s) {
        const double b = kWeights[s];
        if (b == 0.0) continue;
        const double bh = b * h;
        y[0] += bh * k[s][0];
        y[1] += bh * k[s][1];
        y[2] += bh * k[s][2];
        y[3] += bh * k[s][3];
    }
}

}  // namespace rk6

/// Vacuum initial conditions f = (2 omega0 V)^{-1/2}, f_dot = -i omega0 f
/// at the window start, with omega0 the instantaneous frequency there.
/// Throws Error("integration") when Ẽ(t_i) is off the lattice center.
ModeState vacuum_init(Wavevector k, const ModeGrid& grid, double mass0,
                      const EffectiveField& field);

/// Single fixed step; omega_sq(t) is sampled at the stage times.  Enforces
/// the accuracy guard omega * dt <= 0.5 (Error("step-size")).
ModeState rk6_step(const ModeState& state, double dt,
                   const std::function<double(double)>& omega_sq);

struct ModeTrajectory {
    std::vector<ModeState> samples;     // every sample_stride-th step plus endpoints
    double wronskian_max_drift = 0.0;   // max |W - W0| / |W0| over samples
    double dt = 0.0;                    // effective step used
};

/// Integrates one mode over [t_i, t_f] from the vacuum.  The requested dt
/// is snapped to an integer number of steps.  Drift above 1e-10 is
/// reported in the trajectory; above 1e-6 it is a hard
/// Error("integration").
ModeTrajectory integrate_mode(Wavevector k, const ModeGrid& grid, const PulseSpec& pulse,
                              const DeviceParams& device, double dt, int sample_stride);

/// Continuation form used by tests: integrates an arbitrary initial state
/// under a caller-supplied omega^2(t) up to t_end.
ModeTrajectory integrate_state(const ModeState& start, double t_end, double dt,
                               int sample_stride,
                               const std::function<double(double)>& omega_sq, double volume);

/// Wronskian deviation |W(state) - i/V| relative to 1/V.
double wronskian_drift(const ModeState& state, double volume);

}  // namespace vortsim
