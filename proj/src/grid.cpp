#include "vortsim/grid.hpp"

#include <cmath>

#include "vortsim/errors.hpp"

namespace vortsim {

ModeGrid build_mode_grid(int slots, double length_x, double length_y, int transverse_index,
                         int slot_offset) {
    if (slots < 4 || slots % 2 != 0)
        fail("config", "grid slots (N_x) must be even and at least 4");
    if (!(length_x > 0.0 && length_y > 0.0))
        fail("config", "grid lengths must be positive");

    ModeGrid grid;
    grid.slots = slots;
    grid.length_x = length_x;
    grid.length_y = length_y;
    grid.transverse_index = transverse_index;
    grid.k_transverse = kTwoPi * transverse_index / length_y;
    grid.slot_offset = slot_offset;
    grid.center = kTwoPi * slot_offset / length_x;
    grid.volume = length_x * length_y;

    const int half = slots / 2 - 1;
    grid.cutoff = kTwoPi * half / length_x;
    grid.m_list.reserve(slots - 1);
    grid.m_list.push_back(slot_offset);
    for (int d = 1; d <= half; ++d) {
        grid.m_list.push_back(slot_offset + d);
        grid.m_list.push_back(slot_offset - d);
    }
    grid.k_list.reserve(grid.m_list.size());
    for (int m : grid.m_list) grid.k_list.push_back(kTwoPi * m / length_x);
    return grid;
}

}  // namespace vortsim
