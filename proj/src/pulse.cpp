#include "vortsim/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vortsim/errors.hpp"

namespace vortsim {

namespace {

void validate_table(const std::vector<TablePoint>& table, const char* name) {
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (!(table[i].t > table[i - 1].t))
            fail("config", std::string(name) + " table times must be strictly increasing");
    }
}

}  // namespace

void validate(const PulseSpec& spec) {
    if (!(spec.width > 0.0))
        fail("config", "pulse width t0 must be positive");
    if (!(spec.window_start < 0.0 && spec.window_end > 0.0))
        fail("config", "pulse window must satisfy t_i < 0 < t_f");
    if (-spec.window_start < 5.0 * spec.width || spec.window_end < 5.0 * spec.width)
        fail("config", "pulse window must extend at least 5 t0 on both sides");
    if (!(spec.mass > 0.0))
        fail("config", "pulse mass M0 must be positive");
    if (spec.regulator_mass < 0.0)
        fail("config", "regulator mass must be non-negative");
    if (spec.shape == PulseShape::Tabulated && spec.drive_table.size() < 2)
        fail("config", "tabulated pulse needs at least two samples");
    validate_table(spec.drive_table, "drive");
    validate_table(spec.mass_table, "mass");
    if (!spec.mass_table.empty()) {
        MassProfile profile(spec);  // checks M(t_i) == M0
        (void)profile;
    }
}

double vector_potential_ratio(double t, const PulseSpec& spec) {
    if (spec.shape != PulseShape::GaussianDerivative)
        fail("domain", "vector_potential_ratio is defined for the gaussian_derivative shape");
    const double x = t / spec.width;
    return spec.amplitude * x * std::exp(-x * x);
}

double driving_force_prefactor(const DeviceParams& device) {
    const double lb2 =
        device.penetration_depth_suppressed * device.penetration_depth_suppressed;
    return device.light_speed_ratio * device.thickness /
           (8.0 * device.fine_structure * lb2 * device.coherence_length);
}

double driving_force_from_potential(double a_ratio, const DeviceParams& device) {
    return -driving_force_prefactor(device) * a_ratio;
}

EffectiveField::EffectiveField(const PulseSpec& spec, const DeviceParams& device)
    : prefactor_(driving_force_prefactor(device)),
      amplitude_(spec.amplitude),
      width_(spec.width),
      t_start_(spec.window_start),
      t_end_(spec.window_end),
      center_(spec.gauge_quanta * kTwoPi / device.length_x),
      gaussian_(spec.shape == PulseShape::GaussianDerivative) {
    const double xi = t_start_ / width_;
    edge_value_ = std::exp(-xi * xi);
    if (!gaussian_) {
        if (spec.drive_table.size() < 2)
            fail("config", "tabulated pulse needs at least two samples");
        node_t_.reserve(spec.drive_table.size());
        node_a_.reserve(spec.drive_table.size());
        for (const auto& p : spec.drive_table) {
            node_t_.push_back(p.t);
            node_a_.push_back(p.value);
        }
        // Exact integral of the piecewise-linear interpolant, accumulated
        // at the nodes.  The profile is zero outside the table range.
        node_cumulative_.resize(node_t_.size());
        node_cumulative_[0] = 0.0;
        for (std::size_t i = 1; i < node_t_.size(); ++i) {
            const double h = node_t_[i] - node_t_[i - 1];
            node_cumulative_[i] =
                node_cumulative_[i - 1] + 0.5 * (node_a_[i] + node_a_[i - 1]) * h;
        }
    }
}

double EffectiveField::cumulative_ratio_integral(double t) const {
    if (gaussian_) {
        const double x = t / width_;
        return 0.5 * amplitude_ * width_ * (edge_value_ - std::exp(-x * x));
    }
    if (node_t_.empty() || t <= node_t_.front()) return 0.0;
    if (t >= node_t_.back()) return node_cumulative_.back();
    const auto it = std::upper_bound(node_t_.begin(), node_t_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - node_t_.begin());
    const double h = node_t_[i] - node_t_[i - 1];
    const double u = t - node_t_[i - 1];
    const double slope = (node_a_[i] - node_a_[i - 1]) / h;
    return node_cumulative_[i - 1] + node_a_[i - 1] * u + 0.5 * slope * u * u;
}

double EffectiveField::value_unchecked(double t) const {
    return prefactor_ * cumulative_ratio_integral(t) + center_;
}

double EffectiveField::operator()(double t) const {
    const double slack = 1e-9 * (t_end_ - t_start_);
    if (t < t_start_ - slack || t > t_end_ + slack)
        fail("domain", "effective field evaluated outside the pulse window");
    return value_unchecked(t);
}

MassProfile::MassProfile(const PulseSpec& spec) : base_(spec.mass) {
    if (spec.mass_table.empty()) return;
    node_t_.reserve(spec.mass_table.size());
    node_m_.reserve(spec.mass_table.size());
    for (const auto& p : spec.mass_table) {
        node_t_.push_back(p.t);
        node_m_.push_back(p.value);
    }
    const double at_start = (*this)(spec.window_start);
    if (std::abs(at_start - base_) > 1e-12 * std::max(1.0, std::abs(base_)))
        fail("config", "tabulated mass profile must equal M0 at the window start");
}

double MassProfile::operator()(double t) const {
    if (node_t_.empty()) return base_;
    if (t <= node_t_.front()) return node_m_.front();
    if (t >= node_t_.back()) return node_m_.back();
    const auto it = std::upper_bound(node_t_.begin(), node_t_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - node_t_.begin());
    const double theta = (t - node_t_[i - 1]) / (node_t_[i] - node_t_[i - 1]);
    return node_m_[i - 1] + (node_m_[i] - node_m_[i - 1]) * theta;
}

double mass_profile(double t, const PulseSpec& spec) {
    return MassProfile(spec)(t);
}

int check_quantization(const PulseSpec& spec, const DeviceParams& device, double length_x,
                       double tol) {
    if (!(length_x > 0.0))
        fail("domain", "check_quantization requires positive length_x");
    EffectiveField field(spec, device);
    // ∫ F dt = -hbar * [Ẽ(t_f) - Ẽ(t_i)]; in units of the quantum
    // 2 pi / L_x this is just the asymptotic Ẽ shift.
    const double shift =
        field.value_unchecked(spec.window_end) - field.value_unchecked(spec.window_start);
    const double quanta = -shift / (kTwoPi / length_x);
    const double nearest = std::round(quanta);
    if (std::abs(quanta - nearest) >= tol)
        fail("quantization",
             "force integral is not an integer number of quanta; the transformed "
             "problem is not equivalent to the original");
    return static_cast<int>(nearest);
}

}  // namespace vortsim
