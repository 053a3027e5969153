#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "vortsim/errors.hpp"
#include "vortsim/grid.hpp"

using namespace vortsim;

TEST_CASE("paper grid: 31 modes up to Lambda = 30 pi") {
    const ModeGrid grid = build_mode_grid(32, 1.0, 10.0, 0);
    CHECK(grid.mode_count() == 31);
    CHECK(grid.k_list.size() == 31);
    CHECK(grid.cutoff == doctest::Approx(30.0 * kPi).epsilon(1e-15));
    CHECK(grid.cutoff == doctest::Approx(94.24777960769379).epsilon(1e-14));
    CHECK(grid.volume == 10.0);
    CHECK(grid.center == 0.0);

    // Lambda equals max |k_x| exactly
    double k_max = 0.0;
    for (double k : grid.k_list) k_max = std::max(k_max, std::abs(k));
    CHECK(k_max == grid.cutoff);

    // symmetric about zero: every +k has its -k partner, adjacent in order
    CHECK(grid.k_list[0] == 0.0);
    for (std::size_t i = 1; i + 1 < grid.k_list.size(); i += 2)
        CHECK(grid.k_list[i] == -grid.k_list[i + 1]);

    // reduction order: ascending |m|, + before -
    CHECK(grid.m_list[0] == 0);
    CHECK(grid.m_list[1] == 1);
    CHECK(grid.m_list[2] == -1);
    CHECK(grid.m_list[29] == 15);
    CHECK(grid.m_list[30] == -15);
}

TEST_CASE("smallest grid") {
    const ModeGrid grid = build_mode_grid(4, 1.0, 10.0, 0);
    CHECK(grid.mode_count() == 3);
    std::vector<double> sorted = grid.k_list;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted[0] == doctest::Approx(-kTwoPi).epsilon(1e-15));
    CHECK(sorted[1] == 0.0);
    CHECK(sorted[2] == doctest::Approx(kTwoPi).epsilon(1e-15));
}

TEST_CASE("transverse momentum") {
    CHECK(build_mode_grid(8, 1.0, 10.0, 0).k_transverse == 0.0);
    CHECK(build_mode_grid(8, 1.0, 10.0, 3).k_transverse ==
          doctest::Approx(3.0 * kTwoPi / 10.0).epsilon(1e-15));
}

TEST_CASE("gauge relabeling shifts the window with the center") {
    const ModeGrid grid = build_mode_grid(8, 1.0, 10.0, 0, 1);
    CHECK(grid.center == doctest::Approx(kTwoPi).epsilon(1e-15));
    CHECK(grid.m_list[0] == 1);
    // slots 1, 2, 0, 3, -1, 4, -2
    CHECK(std::count(grid.m_list.begin(), grid.m_list.end(), 4) == 1);
    CHECK(std::count(grid.m_list.begin(), grid.m_list.end(), -2) == 1);
    CHECK(std::count(grid.m_list.begin(), grid.m_list.end(), -3) == 0);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(build_mode_grid(33, 1.0, 10.0, 0), Error);
    CHECK_THROWS_AS(build_mode_grid(2, 1.0, 10.0, 0), Error);
    CHECK_THROWS_AS(build_mode_grid(8, 0.0, 10.0, 0), Error);
}
