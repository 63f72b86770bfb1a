#include "scop/demo.hpp"
#include "scop/dynamics.hpp"
#include "scop/error.hpp"
#include "scop/experiments.hpp"

#include <doctest.h>

using namespace scop;

namespace {

std::vector<Region> equal_blocks(const Grid& grid, std::size_t k) {
    std::vector<Region> blocks(k);
    for (std::size_t b = 0; b < k; ++b)
        for (std::size_t i = b * grid.n_cells / k; i < (b + 1) * grid.n_cells / k; ++i)
            blocks[b].insert(i);
    return blocks;
}

} // namespace

TEST_CASE("two-block uniform demo: eigenstates with certain self-transitions") {
    const Grid grid{0.0, 4.0, 16};
    const auto demo = build_quantum_scop(WaveFunction::uniform(grid), equal_blocks(grid, 2));
    const auto& sys = demo.system;

    CHECK(sys.states.size() == 3); // psi:B0, psi:B1, psi:B0+B1 (the prepared state)
    CHECK(demo.initial_state == "psi:B0+B1");
    for (const auto& block_state : {StateId("psi:B0"), StateId("psi:B1")}) {
        CHECK(sys.mu("position", block_state, "position", block_state).is_certain());
        CHECK(range_of_context_for_state(sys, "position", block_state) ==
              std::set<StateId>{block_state});
    }
    // uniform halves: exact dyadic 1/2
    CHECK(sys.mu("position", "psi:B0", "position", demo.initial_state) ==
          SubsetProb::point(Rational(1, 2)));

    CHECK(validate(sys).ok());
    CHECK(is_first_kind_experiment(sys, demo.experiment));
    CHECK(is_cascade_experiment(sys, demo.experiment).ok());

    // the prepared state is not an eigenstate: measuring localizes it
    const auto report = classify(sys);
    CHECK_FALSE(report.couples.at({"position", demo.initial_state}).eigenstate);
    // the localization properties order by region inclusion
    CHECK(sys.kappa("loc:B0") == std::set<StateId>{"psi:B0"});
    CHECK(sys.kappa("loc:B0+B1") == std::set<StateId>{"psi:B0", "psi:B0+B1", "psi:B1"});
}

TEST_CASE("gaussian four-block demo is exact in rationals") {
    const Grid grid{0.0, 4.0, 64};
    const auto demo =
        build_quantum_scop(WaveFunction::gaussian(grid, 2.0, 0.5), equal_blocks(grid, 4));
    CHECK(demo.system.states.size() == 15); // nonzero unions of 4 blocks
    CHECK(validate(demo.system).ok());
    CHECK(is_first_kind_experiment(demo.system, demo.experiment));
    const auto cascade = is_cascade_experiment(demo.system, demo.experiment);
    CHECK(cascade.ok());
    CHECK(cascade.checked_instances > 1000);
}

TEST_CASE("demo with a destruction state still validates and cascades") {
    const Grid grid{0.0, 4.0, 16};
    const auto demo = build_quantum_scop(WaveFunction::uniform(grid), equal_blocks(grid, 2), true);
    const auto& sys = demo.system;
    REQUIRE(sys.destruction_state.has_value());
    CHECK(sys.xi(*sys.destruction_state).empty());
    CHECK(sys.mu("position", "destroyed", "position", "destroyed").is_certain());
    CHECK(validate(sys).ok());
    CHECK(is_cascade_experiment(sys, demo.experiment).ok());
}

TEST_CASE("partition validation") {
    const Grid grid{0.0, 4.0, 16};
    const auto psi = WaveFunction::uniform(grid);
    CHECK_THROWS_AS(build_quantum_scop(psi, {}), Error);
    auto blocks = equal_blocks(grid, 2);
    blocks[1].erase(15); // hole
    CHECK_THROWS_AS(build_quantum_scop(psi, blocks), Error);
    auto overlapping = equal_blocks(grid, 2);
    overlapping[1].insert(0); // overlap
    CHECK_THROWS_AS(build_quantum_scop(psi, overlapping), Error);

    const Grid big{0.0, 4.0, 32};
    CHECK_THROWS_AS(build_quantum_scop(WaveFunction::uniform(big), equal_blocks(big, 17)), Error);
}

TEST_CASE("classical observation fixture") {
    const auto one = build_classical_scop({{1.5, 0.25}});
    CHECK(one.system.states.size() == 1);
    CHECK(classify(one.system).d_classical);

    const auto demo = build_classical_scop({{0.0, 1.0}, {2.0, -1.0}, {3.5, 0.0}});
    const auto& sys = demo.system;
    CHECK(validate(sys).ok());
    const auto report = classify(sys);
    CHECK(report.d_classical);
    for (const auto& p : sys.states) {
        CHECK(report.couples.at({demo.experiment, p}).eigenstate);
        CHECK(report.couples.at({demo.experiment, p}).eigencontext);
    }
    // O(e, (u,mv)) = {u}
    CHECK(outcomes(sys, demo.experiment, demo.states[1]) ==
          std::set<OutcomeLabel>{OutcomeLabel::plain("2")});

    CHECK_THROWS_AS(build_classical_scop({{1.0, 2.0}, {1.0, 5.0}}), Error);
}
