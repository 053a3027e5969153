#pragma once

#include <string>
#include <vector>

#include "vortsim/config.hpp"
#include "vortsim/runner.hpp"

namespace vortsim {

/// Locale-independent shortest round-trip decimal form of a double
/// ('.' separator; what every CSV cell uses).
std::string format_double(double value);

/// Compact label for filenames (same digits as format_double).
std::string mass_label(double mass);

void ensure_directory(const std::string& path);

/// timeseries_M{M0}_ky{m_y}.csv with header t,E_tilde,q_reg,N_total.
std::string emit_timeseries_csv(const std::string& directory, const SingleRunResult& run);

/// sweep CSV with header M0,Q,N_final,dt_used,wronskian_drift; named
/// sweep.csv for m_y = 0 and sweep_ky{m_y}.csv otherwise.
std::string emit_sweep_csv(const std::string& directory, const SweepResult& sweep,
                           int transverse_index);

/// fit CSV with header amplitude,rate,max_ln_residual (same naming rule).
std::string emit_fit_csv(const std::string& directory, const ExponentialFit& fit,
                         int transverse_index);

/// permode_M{M0}_ky{m_y}.csv with header k_x,f_sq,n_k (final time).
std::string emit_permode_csv(const std::string& directory, const SingleRunResult& run);

/// gnuplot scripts rendering the transport-vs-mass figure (log scale with
/// the fitted exponential) and the occupation history.
std::string emit_fig3_script(const std::string& directory, const SweepResult& sweep,
                             int transverse_index);
std::string emit_fig4_script(const std::string& directory, double mass0,
                             int transverse_index);

}  // namespace vortsim
