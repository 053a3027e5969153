#pragma once

#include <vector>

#include "vortsim/units.hpp"

namespace vortsim {

struct Wavevector {
    double kx = 0.0;
    double ky = 0.0;
};

/// Periodic mode lattice for a single k_y.  Slots m run over
/// offset, offset +/- 1, ..., offset +/- (slots/2 - 1), stored in the
/// documented reduction order: ascending |m - offset| with the + side
/// first.  center = 2 pi offset / L_x is the lattice midpoint; the cutoff
/// is Lambda = max |k_x - center| = 2 pi (slots/2 - 1) / L_x.
struct ModeGrid {
    int slots = 32;           // N_x; N_x - 1 modes
    double length_x = 1.0;
    double length_y = 10.0;
    int transverse_index = 0; // m_y
    double k_transverse = 0.0;
    int slot_offset = 0;      // n' gauge relabeling; 0 in production
    double center = 0.0;
    double cutoff = 0.0;      // Lambda
    double volume = 0.0;      // V = L_x L_y
    std::vector<int> m_list;  // slot indices, reduction order
    std::vector<double> k_list;

    int mode_count() const { return slots - 1; }
};

/// Builds the lattice; slots must be even and >= 4.  Throws Error("config").
ModeGrid build_mode_grid(int slots, double length_x, double length_y, int transverse_index,
                         int slot_offset = 0);

}  // namespace vortsim
