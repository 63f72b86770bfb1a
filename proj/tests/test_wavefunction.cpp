#include "scop/error.hpp"
#include "scop/wavefunction.hpp"

#include <doctest.h>

#include <random>

using namespace scop;

TEST_CASE("position probabilities on a uniform wave function") {
    const Grid grid{0.0, 4.0, 1024};
    const auto psi = WaveFunction::uniform(grid);
    Region all;
    for (std::size_t i = 0; i < grid.n_cells; ++i) all.insert(i);
    CHECK(position_probability(psi, all) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(position_probability(psi, region_from_interval(grid, 0.0, 2.0)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(position_probability(psi, {}), Error);

    // zero support
    std::vector<std::complex<double>> amps(8, 0.0);
    amps[0] = std::sqrt(2.0); // mass 1 in the first cell of a dx = 1/2 grid
    const WaveFunction spiked(Grid{0.0, 4.0, 8}, amps);
    CHECK(position_probability(spiked, {5}) == 0.0);
}

TEST_CASE("collapse projects and renormalizes") {
    const Grid grid{0.0, 4.0, 64};
    const auto psi = WaveFunction::uniform(grid);
    Region all;
    for (std::size_t i = 0; i < grid.n_cells; ++i) all.insert(i);
    const auto same = collapse_wavefunction(psi, all);
    CHECK(l2_distance(same, psi) < 1e-12);

    const auto half_region = region_from_interval(grid, 0.0, 2.0);
    const auto half = collapse_wavefunction(psi, half_region);
    CHECK(position_probability(half, half_region) == doctest::Approx(1.0).epsilon(1e-12));
    // amplitudes scale by sqrt(2) inside the region
    CHECK(half.amplitudes()[0].real() ==
          doctest::Approx(psi.amplitudes()[0].real() * std::sqrt(2.0)));
    CHECK(half.amplitudes()[63] == std::complex<double>(0.0));

    // collapsing twice changes nothing
    const auto again = collapse_wavefunction(half, half_region);
    CHECK(l2_distance(again, half) < 1e-12);

    std::vector<std::complex<double>> amps(8, 0.0);
    amps[0] = std::sqrt(2.0);
    const WaveFunction spiked(Grid{0.0, 4.0, 8}, amps);
    CHECK_THROWS_AS(collapse_wavefunction(spiked, {7}), Error);
}

TEST_CASE("nested collapse identities") {
    const Grid grid{0.0, 4.0, 1024};
    const auto psi = WaveFunction::uniform(grid);
    const auto omega1 = region_from_interval(grid, 0.0, 2.0);
    const auto omega2 = region_from_interval(grid, 0.0, 1.0);
    const auto report = verify_cascade_identities(psi, omega1, omega2, 1e-12);
    CHECK(report.ok());
    CHECK(report.p_direct == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(report.p_outer == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(report.p_conditional == doctest::Approx(0.5).epsilon(1e-12));

    // omega2 = omega1: conditional probability 1 and identical states
    const auto trivial = verify_cascade_identities(psi, omega1, omega1, 1e-12);
    CHECK(trivial.ok());
    CHECK(trivial.p_conditional == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trivial.state_distance < 1e-12);

    CHECK_THROWS_AS(verify_cascade_identities(psi, omega2, omega1, 1e-12), Error); // not nested

    // random nested dyadic regions on a gaussian state
    const auto gauss = WaveFunction::gaussian(grid, 2.0, 0.5);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t span = 64 << (rng() % 3);
        const std::size_t start = (rng() % (grid.n_cells / span)) * span;
        Region outer, inner;
        for (std::size_t i = start; i < start + span; ++i) outer.insert(i);
        for (std::size_t i = start; i < start + span / 2; ++i) inner.insert(i);
        if (position_probability(gauss, inner) < 1e-9) continue;
        const auto r = verify_cascade_identities(gauss, outer, inner, 1e-10);
        CHECK(r.ok());
    }
}

TEST_CASE("grid refinement moves probabilities by O(dx)") {
    const Grid coarse{0.0, 4.0, 256};
    const Grid fine{0.0, 4.0, 512};
    const auto a = WaveFunction::gaussian(coarse, 2.0, 0.5);
    const auto b = WaveFunction::gaussian(fine, 2.0, 0.5);
    const double pa = position_probability(a, region_from_interval(coarse, 1.0, 2.0));
    const double pb = position_probability(b, region_from_interval(fine, 1.0, 2.0));
    CHECK(std::abs(pa - pb) < 4.0 * coarse.dx());
}

TEST_CASE("normalization is enforced") {
    std::vector<std::complex<double>> amps(4, 1.0); // mass 4 on a unit-dx grid
    CHECK_THROWS_AS(WaveFunction(Grid{0.0, 4.0, 4}, amps), Error);
}
