#include "vortsim/observables.hpp"

#include <cmath>

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

}  // namespace

double q_bare_reduce(std::span<const double> f_sq, std::span<const double> k_list,
                     double e_tilde) {
    KahanSum acc;
    for (std::size_t i = 0; i < f_sq.size(); ++i)
        acc.add((k_list[i] - e_tilde) * f_sq[i]);
    return 2.0 * acc.sum;
}

double bare_current_density(std::span<const ModeState> states, double e_tilde,
                            const ModeGrid& grid) {
    if (states.size() != grid.k_list.size())
        fail("grid", "bare_current_density needs the full symmetric k_x set");
    std::vector<double> f_sq(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].k.kx != grid.k_list[i])
            fail("grid", "mode states are not in grid order");
        if (states[i].t != states[0].t)
            fail("grid", "mode states are not at a common time");
        f_sq[i] = std::norm(states[i].f);
    }
    return q_bare_reduce(f_sq, grid.k_list, e_tilde);
}

double pv_counterterm(double displacement, double length_y) {
    return displacement / (kPi * length_y);
}

double regularized_current(double q_bare, double q_prime) {
    return q_bare + q_prime;
}

double total_transport(std::span<const TimeSeriesRecord> series, double length_y,
                       double mass0, double uv_coeff) {
    if (series.size() < 2) fail("domain", "total_transport needs at least two samples");
    double base_gap = series[1].t - series[0].t;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double gap = series[i].t - series[i - 1].t;
        if (!(gap > 0.0)) fail("domain", "total_transport series must be increasing in t");
        base_gap = std::min(base_gap, gap);
    }
    KahanSum integral;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double gap = series[i].t - series[i - 1].t;
        if (gap > 2.0 * base_gap * (1.0 + 1e-9))
            fail("domain", "total_transport series has a gap above twice the sample stride");
        integral.add(0.5 * (series[i].q_reg + series[i - 1].q_reg) * gap);
    }
    return length_y * integral.sum + uv_coeff * mass0 * mass0;
}

double mode_energy(const ModeState& state, double omega_sq) {
    return std::norm(state.f_dot) + omega_sq * std::norm(state.f);
}

double occupation(const ModeState& state, double omega, double volume) {
    if (!(omega > 0.0)) fail("domain", "occupation requires omega > 0");
    return (volume / omega) * mode_energy(state, omega * omega) - 1.0;
}

double total_occupation(std::span<const ModeState> states, const ModeGrid& grid,
                        double e_tilde, double mass_at_t) {
    if (states.size() != grid.k_list.size())
        fail("grid", "total_occupation needs the full grid");
    const double ky_sq = grid.k_transverse * grid.k_transverse;
    const double m_sq = mass_at_t * mass_at_t;
    KahanSum acc;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const double w2 = omega_sq_from(grid.k_list[i], ky_sq, e_tilde, m_sq);
        acc.add(occupation(states[i], std::sqrt(w2), grid.volume));
    }
    return acc.sum;
}

double calibrate_uv_coefficient(double calibration_mass,
                                const std::function<double(double)>& run_raw_transport) {
    if (!(calibration_mass > 0.0))
        fail("domain", "calibration mass must be positive");
    const double q_raw = run_raw_transport(calibration_mass);
    return -q_raw / (calibration_mass * calibration_mass);
}

}  // namespace vortsim
