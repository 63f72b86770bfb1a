#include "scop/demo.hpp"
#include "scop/dynamics.hpp"
#include "scop/error.hpp"
#include "scop/experiments.hpp"
#include "scop/generator.hpp"
#include "scop/preorder.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace scop;

namespace {

QuantumDemo two_block_demo() {
    const Grid grid{0.0, 4.0, 16};
    const auto psi = WaveFunction::uniform(grid);
    return build_quantum_scop(psi, {region_from_interval(grid, 0.0, 2.0),
                                    region_from_interval(grid, 2.0, 4.0)});
}

// One experiment whose two source states collapse to the same eigenstate,
// plus a property separating them: not testable by that experiment.
ScopSystem blind_experiment_fixture() {
    ScopSystem sys;
    sys.states = {"p1", "p2", "t"};
    sys.contexts = {"e"};
    sys.properties = {"hidden"};
    sys.xi_map["p1"] = {"hidden"};
    sys.xi_map["p2"] = {};
    sys.xi_map["t"] = {};
    ExperimentSpec spec;
    spec.context = "e";
    for (const auto& p : sys.states) {
        sys.mu_table.emplace(MuKey{"e", "t", "e", p}, SubsetProb::one());
        spec.outcomes.emplace(ExperimentSpec::TransitionKey{"e", "t", p},
                              OutcomeLabel::plain("x"));
    }
    sys.experiments["e"] = std::move(spec);
    return sys;
}

} // namespace

TEST_CASE("outcome sets per state and in total") {
    const auto classical = build_classical_scop({{1.0, 2.0}, {3.0, 4.0}});
    const auto& sys = classical.system;
    // the observation reads off the position coordinate
    CHECK(outcomes(sys, classical.experiment, classical.states[0]) ==
          std::set<OutcomeLabel>{OutcomeLabel::plain("1")});
    CHECK(outcomes_total(sys, classical.experiment) ==
          std::set<OutcomeLabel>{OutcomeLabel::plain("1"), OutcomeLabel::plain("3")});
    CHECK_THROWS_AS(outcomes(sys, "nope", classical.states[0]), Error);

    // a missing outcome on a possible transition is a validation finding
    auto broken = two_block_demo().system;
    auto& spec = broken.experiments.at("position");
    spec.outcomes.erase(spec.outcomes.begin());
    bool found = false;
    for (const auto& issue : validate(broken).issues)
        if (issue.kind == "outcome-alignment") found = true;
    CHECK(found);
}

TEST_CASE("collapse is the outcome-indexed target state") {
    const auto demo = two_block_demo();
    const auto& sys = demo.system;
    const auto b0 = OutcomeLabel::subset({"B0"});
    const auto full = OutcomeLabel::subset({"B0", "B1"});

    const auto collapsed = collapse(sys, demo.experiment, demo.initial_state, b0);
    CHECK(collapsed == "psi:B0");
    // eigenstate: collapsing again is a fixed point
    CHECK(collapse(sys, demo.experiment, collapsed, b0) == collapsed);
    // a shared outcome collapses every source to the same target
    CHECK(collapse(sys, demo.experiment, demo.initial_state, full) == demo.initial_state);
    CHECK_THROWS_AS(collapse(sys, demo.experiment, "psi:B0", OutcomeLabel::subset({"B1"})), Error);

    // coarse outcomes restrict to the reachable part of the row
    CHECK(effective_collapse(sys, demo.experiment, "psi:B0", full) == StateId("psi:B0"));
    CHECK_FALSE(effective_collapse(sys, demo.experiment, "psi:B0", OutcomeLabel::subset({"B1"}))
                    .has_value());
}

TEST_CASE("find_test: localization properties are tested by the position experiment") {
    const Grid grid{0.0, 4.0, 16};
    const auto psi = WaveFunction::uniform(grid);
    const auto demo = build_quantum_scop(psi, {region_from_interval(grid, 0.0, 1.0),
                                               region_from_interval(grid, 1.0, 2.0),
                                               region_from_interval(grid, 2.0, 4.0)});
    const auto& sys = demo.system;
    // the test set of "localized in {B0,B1}" is every outcome inside it
    const auto test = find_test(sys, "loc:B0+B1", demo.experiment);
    REQUIRE(test.has_value());
    CHECK(*test == std::set<OutcomeLabel>{OutcomeLabel::subset({"B0"}),
                                          OutcomeLabel::subset({"B1"}),
                                          OutcomeLabel::subset({"B0", "B1"})});

    // a property no experiment resolves has no test
    const auto blind = blind_experiment_fixture();
    CHECK_FALSE(find_test(blind, "hidden", "e").has_value());

    // an improper property is vacuously testable with the empty set
    auto with_improper = blind;
    with_improper.properties.push_back("never");
    const auto empty_test = find_test(with_improper, "never", "e");
    REQUIRE(empty_test.has_value());
    CHECK(empty_test->empty());
}

TEST_CASE("operational entity: tests plus pairwise disjoint outcome sets") {
    const auto op = generate_system(3, {3, 3, 4}, Profile::operational);
    const auto report = is_operational_entity(op);
    CHECK(report.operational);
    CHECK(report.witnesses.size() == op.properties.size());

    // untestable property
    const auto blind = blind_experiment_fixture();
    const auto blind_report = is_operational_entity(blind);
    CHECK_FALSE(blind_report.operational);
    REQUIRE(blind_report.failures.size() == 1);
    CHECK(blind_report.failures[0].find("no test") != std::string::npos);

    // a single experiment cannot give two properties disjoint-outcome tests
    ScopSystem solo;
    solo.states = {"p1", "p2"};
    solo.contexts = {"e"};
    solo.properties = {"a", "b"};
    solo.xi_map["p1"] = {"a"};
    solo.xi_map["p2"] = {"b"};
    ExperimentSpec spec;
    spec.context = "e";
    for (const auto& p : solo.states) {
        solo.mu_table.emplace(MuKey{"e", p, "e", p}, SubsetProb::one());
        spec.outcomes.emplace(ExperimentSpec::TransitionKey{"e", p, p},
                              OutcomeLabel::plain("x:" + p));
    }
    solo.experiments["e"] = std::move(spec);
    const auto solo_report = is_operational_entity(solo);
    CHECK_FALSE(solo_report.operational);
    bool pair_failure = false;
    for (const auto& failure : solo_report.failures)
        if (failure.find("disjoint") != std::string::npos) pair_failure = true;
    CHECK(pair_failure);
}

TEST_CASE("first kind: quantum measurements and classical observations") {
    const auto demo = two_block_demo();
    CHECK(is_first_kind_experiment(demo.system, demo.experiment));
    // coarse collapsed states stay refinable, so the strict context check
    // is weaker territory: block states are strict eigenstates though
    CHECK(range_of_context_for_state(demo.system, demo.experiment, "psi:B0") ==
          std::set<StateId>{"psi:B0"});

    const auto classical = build_classical_scop({{0.0, 0.0}, {2.5, -1.0}});
    CHECK(is_first_kind_context(classical.system, classical.experiment));
    CHECK(is_first_kind_experiment(classical.system, classical.experiment));

    // a collapsed state that drifts under re-measurement
    ScopSystem drift;
    drift.states = {"p", "q", "r"};
    drift.contexts = {"e"};
    for (const auto& s : drift.states) drift.xi_map[s] = {};
    ExperimentSpec spec;
    spec.context = "e";
    const auto arrow = [&](const StateId& from, const StateId& to, const std::string& label) {
        drift.mu_table.emplace(MuKey{"e", to, "e", from}, SubsetProb::one());
        spec.outcomes.emplace(ExperimentSpec::TransitionKey{"e", to, from},
                              OutcomeLabel::plain(label));
    };
    arrow("p", "q", "xq");
    arrow("q", "r", "xr");
    arrow("r", "r", "xr");
    drift.experiments["e"] = std::move(spec);
    CHECK_FALSE(is_first_kind_experiment(drift, "e"));
    CHECK_FALSE(is_first_kind_context(drift, "e"));
}

TEST_CASE("cascade laws hold on the demo and violations are itemized") {
    const auto demo = two_block_demo();
    const auto report = is_cascade_experiment(demo.system, demo.experiment);
    CHECK(report.ok());
    CHECK(report.checked_instances > 0);

    // perturbing a self-transition breaks idempotence, and only that
    auto broken = demo.system;
    const MuKey self{"position", "psi:B0", "position", "psi:B0"};
    broken.mu_table.erase(self);
    broken.mu_table.emplace(self, SubsetProb::point(Rational(9, 10)));
    const auto broken_report = is_cascade_experiment(broken, demo.experiment);
    CHECK_FALSE(broken_report.ok());
    bool idempotence_reported = false;
    for (const auto& violation : broken_report.violations) {
        if (violation.law == "idempotence" && violation.p == "psi:B0") idempotence_reported = true;
        CHECK((violation.law == "idempotence" || violation.law == "multiplication" ||
               violation.law == "complement"));
    }
    CHECK(idempotence_reported);

    // no spectrum, no cascade check
    const auto classical = build_classical_scop({{1.0, 2.0}});
    CHECK_THROWS_AS(is_cascade_experiment(classical.system, classical.experiment), Error);
}

TEST_CASE("product experiments merge outcome structure") {
    const auto op = generate_system(9, {2, 3, 4}, Profile::operational);
    const auto layout = operational_layout(3);
    const auto& e0 = layout.experiments[0];
    const auto& e1 = layout.experiments[1];

    const auto prod = product_experiment(op, {e0, e1}, "joint");
    for (const auto& p : op.states) {
        std::set<OutcomeLabel> expected = outcomes(prod, e0, p);
        const auto other = outcomes(prod, e1, p);
        expected.insert(other.begin(), other.end());
        CHECK(outcomes(prod, "joint", p) == expected);
    }

    // the product tests the meet of the factor properties with A1 u A2
    const auto a0_test = find_test(prod, layout.test_properties[0], e0);
    const auto a1_test = find_test(prod, layout.test_properties[1], e1);
    REQUIRE(a0_test.has_value());
    REQUIRE(a1_test.has_value());
    const auto meet_test = find_test(prod, layout.meet_property, "joint");
    REQUIRE(meet_test.has_value());
    std::set<OutcomeLabel> expected_union = *a0_test;
    expected_union.insert(a1_test->begin(), a1_test->end());
    CHECK(*meet_test == expected_union);
    CHECK(meet_properties(prod, {layout.test_properties[0], layout.test_properties[1]})
              .count(layout.meet_property));

    // single factor: unchanged outcome map
    const auto solo = product_experiment(op, {e0}, "alone");
    CHECK(solo.experiments.at("alone").outcomes == op.experiments.at(e0).outcomes);

    // overlapping outcome labels clash
    CHECK_THROWS_AS(product_experiment(op, {e0, e0}, "clash"), Error);
}

TEST_CASE("sco_to_scop generates tagged power-set properties") {
    ScoSystem sco;
    sco.states = {"p", "tx", "ty"};
    sco.contexts = {"e"};
    ExperimentSpec spec;
    spec.context = "e";
    const auto arrow = [&](const StateId& from, const StateId& to, const std::string& label) {
        sco.mu_table.emplace(MuKey{"e", to, "e", from}, SubsetProb::one());
        spec.outcomes.emplace(ExperimentSpec::TransitionKey{"e", to, from},
                              OutcomeLabel::plain(label));
    };
    arrow("tx", "tx", "x");
    arrow("ty", "ty", "y");
    sco.mu_table.emplace(MuKey{"e", "tx", "e", "p"}, SubsetProb::point(Rational(1, 2)));
    spec.outcomes.emplace(ExperimentSpec::TransitionKey{"e", "tx", "p"},
                          OutcomeLabel::plain("x"));
    sco.mu_table.emplace(MuKey{"e", "ty", "e", "p"}, SubsetProb::point(Rational(1, 2)));
    spec.outcomes.emplace(ExperimentSpec::TransitionKey{"e", "ty", "p"},
                          OutcomeLabel::plain("y"));
    sco.experiments["e"] = std::move(spec);

    const auto sys = sco_to_scop(sco, 64);
    CHECK(sys.properties.size() == 4); // {}, {x}, {y}, {x,y}
    const auto top = sco_property_id("e", {OutcomeLabel::plain("x"), OutcomeLabel::plain("y")});
    CHECK(sys.kappa(top) == std::set<StateId>{"p", "tx", "ty"}); // actual in every state
    const auto just_x = sco_property_id("e", {OutcomeLabel::plain("x")});
    CHECK(sys.kappa(just_x) == std::set<StateId>{"tx"});
    const auto bottom = sco_property_id("e", {});
    CHECK(sys.kappa(bottom).empty());

    CHECK_THROWS_AS(sco_to_scop(sco, 3), Error); // cap exceeded
}
