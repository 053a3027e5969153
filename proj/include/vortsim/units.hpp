#pragma once

namespace vortsim {

// Internal unit system: hbar = c1 = 1, all lengths in microns, fluxes in
// units of Phi_0, inductances in Gaussian length units.  With c/c1 = 7.5
// one simulation time unit equals 1 um / c1 = 0.025 ps; the conversion is
// stored for reporting only and never enters the dynamics.
inline constexpr double kFineStructure = 1.0 / 137.0;
inline constexpr double kTimeUnitPicoseconds = 0.025;
inline constexpr double kFluxQuantum = 1.0;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace vortsim
