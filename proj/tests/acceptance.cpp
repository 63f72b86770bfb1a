// Acceptance suite: end-to-end checks of the library against its
// contract, one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails. Tolerances and runtime budgets are pinned here.

#include "scop/demo.hpp"
#include "scop/dynamics.hpp"
#include "scop/experiments.hpp"
#include "scop/generator.hpp"
#include "scop/morphism.hpp"
#include "scop/preorder.hpp"
#include "scop/system.hpp"
#include "scop/wavefunction.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace scop;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    std::string name;
    double time_budget_seconds; // 0 = no budget
    std::function<Outcome()> run;
};

void fail(Outcome& outcome, const std::string& message) {
    outcome.pass = false;
    if (!outcome.detail.empty()) outcome.detail += "; ";
    outcome.detail += message;
}

// ---------------------------------------------------------------- 1
Outcome quantum_cascade_reproduction() {
    Outcome outcome;
    const Grid grid{0.0, 4.0, 1024};
    const auto psi = WaveFunction::uniform(grid);
    const auto omega1 = region_from_interval(grid, 0.0, 2.0);
    const auto omega2 = region_from_interval(grid, 0.0, 1.0);
    const auto report = verify_cascade_identities(psi, omega1, omega2, 1e-12);
    if (std::abs(report.p_direct - 0.25) > 1e-12)
        fail(outcome, "direct probability differs from 0.25");
    if (report.probability_gap > 1e-12) fail(outcome, "probabilities do not multiply");
    if (report.state_distance > 1e-12) fail(outcome, "collapse routes disagree in L2");
    std::ostringstream detail;
    detail << "p=" << report.p_direct << " gap=" << report.probability_gap
           << " L2=" << report.state_distance;
    outcome.detail = detail.str() + (outcome.detail.empty() ? "" : "; " + outcome.detail);
    return outcome;
}

// ---------------------------------------------------------------- 2
Outcome cascade_axiom_suite() {
    Outcome outcome;
    const Grid grid{0.0, 4.0, 1024};
    const auto psi = WaveFunction::gaussian(grid, 2.0, 0.5);
    std::vector<Region> blocks(4);
    for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t i = b * grid.n_cells / 4; i < (b + 1) * grid.n_cells / 4; ++i)
            blocks[b].insert(i);
    const auto demo = build_quantum_scop(psi, blocks);
    const auto report = is_cascade_experiment(demo.system, demo.experiment);
    if (!report.ok()) {
        fail(outcome, std::to_string(report.violations.size()) + " cascade violations");
        for (std::size_t i = 0; i < report.violations.size() && i < 3; ++i)
            fail(outcome, report.violations[i].law + " at " + report.violations[i].p);
    }
    if (report.checked_instances == 0) fail(outcome, "no instances checked");
    if (!validate(demo.system).ok()) fail(outcome, "demo system fails validation");
    outcome.detail = std::to_string(report.checked_instances) + " exact-rational instances" +
                     (outcome.detail.empty() ? "" : "; " + outcome.detail);
    return outcome;
}

// ---------------------------------------------------------------- 3
Outcome preorder_laws() {
    Outcome outcome;
    std::size_t systems = 0, triples = 0;
    for (std::uint64_t seed = 0; seed < 500 && outcome.pass; ++seed) {
        const GeneratorSizes sizes{2 + seed % 7, 2 + seed % 3, 2 + (seed / 2) % 7};
        const auto sys = generate_system(seed, sizes, Profile::generic);
        ++systems;
        const auto states = PreorderView::states(sys);
        const auto props = PreorderView::properties(sys);
        for (const auto* view : {&states, &props}) {
            const auto& el = view->elements();
            for (const auto& x : el)
                if (!view->implies(x, x)) fail(outcome, "reflexivity fails at seed " + std::to_string(seed));
            for (const auto& x : el)
                for (const auto& y : el)
                    for (const auto& z : el) {
                        ++triples;
                        if (view->implies(x, y) && view->implies(y, z) && !view->implies(x, z))
                            fail(outcome, "transitivity fails at seed " + std::to_string(seed));
                    }
        }
        // actuality propagation, both parts, every applicable triple
        for (const auto& a : sys.properties) {
            const auto ka = sys.kappa(a);
            for (const auto& b : sys.properties) {
                if (!property_implies(sys, a, b)) continue;
                for (const auto& p : sys.states) {
                    ++triples;
                    if (sys.xi(p).count(a) && !sys.xi(p).count(b))
                        fail(outcome, "property propagation fails at seed " + std::to_string(seed));
                }
            }
            for (const auto& p : sys.states) {
                for (const auto& q : sys.states) {
                    if (!state_implies(sys, p, q)) continue;
                    ++triples;
                    if (ka.count(q) && !ka.count(p))
                        fail(outcome, "state propagation fails at seed " + std::to_string(seed));
                }
            }
        }
    }
    if (outcome.pass)
        outcome.detail =
            std::to_string(systems) + " systems, " + std::to_string(triples) + " triples";
    return outcome;
}

// ---------------------------------------------------------------- 4
Outcome product_propositions() {
    Outcome outcome;
    const auto layout = operational_layout(3);
    std::size_t product_states_checked = 0;
    for (std::uint64_t seed = 0; seed < 200 && outcome.pass; ++seed) {
        const auto op = generate_system(seed, {2 + seed % 4, 3, 3}, Profile::operational);
        const auto& e0 = layout.experiments[0];
        const auto& e1 = layout.experiments[1];
        const auto prod = product_experiment(op, {e0, e1}, "joint");
        // all base experiments at once, to exercise more than pairs
        const auto wide = product_experiment(op, op.contexts, "wide");

        for (const auto& p : op.states) {
            // R(Pi e_i, p) = union of R(e_i, p)
            std::set<StateId> expected_r = range_of_context_for_state(op, e0, p);
            const auto r1 = range_of_context_for_state(op, e1, p);
            expected_r.insert(r1.begin(), r1.end());
            if (range_of_context_for_state(prod, "joint", p) != expected_r)
                fail(outcome, "range union fails at seed " + std::to_string(seed));
            // O(Pi e_i, p) = union of O(e_i, p)
            std::set<OutcomeLabel> expected_o = outcomes(op, e0, p);
            const auto o1 = outcomes(op, e1, p);
            expected_o.insert(o1.begin(), o1.end());
            if (outcomes(prod, "joint", p) != expected_o)
                fail(outcome, "outcome union fails at seed " + std::to_string(seed));

            std::set<StateId> wide_r;
            std::set<OutcomeLabel> wide_o;
            for (const auto& e : op.contexts) {
                const auto r = range_of_context_for_state(op, e, p);
                wide_r.insert(r.begin(), r.end());
                const auto o = outcomes(op, e, p);
                wide_o.insert(o.begin(), o.end());
            }
            if (range_of_context_for_state(wide, "wide", p) != wide_r ||
                outcomes(wide, "wide", p) != wide_o)
                fail(outcome, "wide product union fails at seed " + std::to_string(seed));
        }

        // the product experiment tests the meet with A = A0 u A1
        const auto a0_test = find_test(op, layout.test_properties[0], e0);
        const auto a1_test = find_test(op, layout.test_properties[1], e1);
        const auto joint_test = find_test(prod, layout.meet_property, "joint");
        if (!a0_test || !a1_test || !joint_test) {
            fail(outcome, "missing canonical test at seed " + std::to_string(seed));
            continue;
        }
        std::set<OutcomeLabel> expected_test = *a0_test;
        expected_test.insert(a1_test->begin(), a1_test->end());
        if (*joint_test != expected_test)
            fail(outcome, "product test differs from A0 u A1 at seed " + std::to_string(seed));
        if (!meet_properties(op, {layout.test_properties[0], layout.test_properties[1]})
                 .count(layout.meet_property))
            fail(outcome, "tested property is not the meet at seed " + std::to_string(seed));

        // product states are join states of their factors
        auto extended = op;
        const auto sample_states = {std::pair{op.states[0], layout.bottom},
                                    std::pair{op.states[0], op.states[1]},
                                    std::pair{op.states[2], op.states[3]}};
        for (const auto& [p, q] : sample_states) {
            if (p == q) continue;
            const StateId id = "(" + p + "*" + q + ")";
            extended = product_state(extended, {p, q}, id);
            ++product_states_checked;
            if (!join_states(extended, {p, q}).count(id))
                fail(outcome, "product state is not a join state at seed " + std::to_string(seed));
            // consistency with the operational reading of xi on products:
            // a property is actual in the product iff the test outcomes of
            // both factors stay inside its test set
            for (const auto& [a, test] : is_operational_entity(op).witnesses) {
                const auto& [exp, subset] = test;
                const auto row = outcomes(extended, exp, id);
                const bool covered =
                    std::includes(subset.begin(), subset.end(), row.begin(), row.end());
                if (covered != static_cast<bool>(extended.xi(id).count(a)))
                    fail(outcome, "product xi disagrees with tests at seed " + std::to_string(seed));
            }
        }
    }
    if (outcome.pass)
        outcome.detail = "200 operational systems, " + std::to_string(product_states_checked) +
                         " product states";
    return outcome;
}

// ---------------------------------------------------------------- 5 & 6
std::vector<ScopSystem> build_closed_systems() {
    std::vector<ScopSystem> out;
    out.reserve(100);
    for (std::uint64_t seed = 0; seed < 100; ++seed)
        out.push_back(
            close_under_pair_products(generate_system(seed, {2 + seed % 3, 3, 3},
                                                      Profile::operational)));
    return out;
}

Outcome completeness_theorem(const std::vector<ScopSystem>& closed) {
    Outcome outcome;
    for (std::size_t i = 0; i < closed.size(); ++i) {
        if (!check_property_completeness(closed[i]).complete)
            fail(outcome, "property completeness fails at seed " + std::to_string(i));
        if (!check_state_completeness(closed[i]).complete)
            fail(outcome, "state completeness fails at seed " + std::to_string(i));
        if (!outcome.pass) break;
    }
    if (outcome.pass)
        outcome.detail = std::to_string(closed.size()) + " operationally closed systems";
    return outcome;
}

Outcome interval_characterization(const std::vector<ScopSystem>& closed) {
    Outcome outcome;
    std::size_t fixtures = 0;
    const auto check_one = [&](const ScopSystem& sys, const std::string& label) {
        ++fixtures;
        for (const auto& p : sys.states) {
            const auto s = property_state(sys, p);
            std::set<PropertyId> above;
            for (const auto& a : sys.properties)
                if (property_implies(sys, s, a)) above.insert(a);
            if (above != sys.xi(p)) fail(outcome, "xi interval fails on " + label);
        }
        for (const auto& a : sys.properties) {
            const auto t = state_property(sys, a);
            std::set<StateId> below;
            for (const auto& p : sys.states)
                if (state_implies(sys, p, t)) below.insert(p);
            if (below != sys.kappa(a)) fail(outcome, "kappa interval fails on " + label);
        }
    };
    for (std::size_t i = 0; i < closed.size() && outcome.pass; ++i)
        check_one(closed[i], "closed system " + std::to_string(i));
    for (std::uint64_t seed = 0; seed < 50 && outcome.pass; ++seed)
        check_one(generate_complete_chain_system(seed, 4 + seed % 4, 3 + seed % 4),
                  "chain system " + std::to_string(seed));
    if (outcome.pass) outcome.detail = std::to_string(fixtures) + " complete fixtures, exhaustive";
    return outcome;
}

// ---------------------------------------------------------------- 7
Outcome morphism_suite() {
    Outcome outcome;
    std::size_t meet_join_pairs = 0;
    for (std::uint64_t seed = 0; seed < 100 && outcome.pass; ++seed) {
        const auto mor = generate_quotient_morphism(seed);
        if (!verify(mor).ok()) {
            fail(outcome, "quotient morphism fails verify at seed " + std::to_string(seed));
            break;
        }
        const auto preservation = check_preservation(mor);
        if (!preservation.order_violations.empty())
            fail(outcome, "order preservation fails at seed " + std::to_string(seed));
        if (!preservation.meet_join_violations.empty())
            fail(outcome, "meet/join preservation fails at seed " + std::to_string(seed));
        if (preservation.meet_join_checked) ++meet_join_pairs;

        // category laws on this fixture: compose(g, h) applies h first
        const auto id_source = identity(mor.source);
        const auto id_target = identity(mor.target);
        if (!(compose(mor, id_source) == mor) || !(compose(id_target, mor) == mor))
            fail(outcome, "identity laws fail at seed " + std::to_string(seed));
        const auto assoc_left = compose(id_target, compose(mor, id_source));
        const auto assoc_right = compose(compose(id_target, mor), id_source);
        if (!(assoc_left == assoc_right))
            fail(outcome, "associativity fails at seed " + std::to_string(seed));
    }
    if (meet_join_pairs == 0) fail(outcome, "no complete pairs exercised the meet/join clauses");

    std::size_t lifts = 0;
    for (std::uint64_t seed = 0; seed < 100 && outcome.pass; ++seed) {
        const auto sco = generate_sco_quotient_morphism(seed);
        if (!verify_sco(sco).ok()) {
            fail(outcome, "SCO morphism fails verify at seed " + std::to_string(seed));
            break;
        }
        const auto lifted = lift(sco, 4096);
        ++lifts;
        if (!verify(lifted).ok())
            fail(outcome, "lifted morphism fails verify at seed " + std::to_string(seed));
    }
    if (outcome.pass)
        outcome.detail = "100 quotient morphisms (" + std::to_string(meet_join_pairs) +
                         " complete pairs), " + std::to_string(lifts) + " SCO lifts";
    return outcome;
}

// ---------------------------------------------------------------- 8
Outcome classical_fixture() {
    Outcome outcome;
    const auto demo = build_classical_scop({{0.5, 1.0}, {1.5, -2.0}, {3.25, 0.5}});
    const auto& sys = demo.system;
    const auto report = classify(sys);
    if (!report.d_classical) fail(outcome, "not d-classical");
    for (const auto& p : sys.states) {
        if (!report.couples.at({demo.experiment, p}).eigenstate)
            fail(outcome, "state " + p + " is not an eigenstate of the observation");
        const auto row = outcomes(sys, demo.experiment, p);
        if (row.size() != 1) fail(outcome, "observation outcome is not the position");
    }
    if (outcomes(sys, demo.experiment, demo.states[0]) !=
        std::set<OutcomeLabel>{OutcomeLabel::plain("0.5")})
        fail(outcome, "outcome of the first particle is not its position");
    if (!validate(sys).ok()) fail(outcome, "fixture fails validation");
    if (outcome.pass) outcome.detail = "d-classical, eigenstates, O(e,(u,mv)) = {u}";
    return outcome;
}

// ---------------------------------------------------------------- 9
Outcome subset_probability_algebra() {
    Outcome outcome;
    std::mt19937_64 rng(20260808);
    const auto random_value = [&](int max_parts) {
        std::vector<SubsetProb::Interval> raw;
        const int parts = 1 + static_cast<int>(rng() % max_parts);
        for (int j = 0; j < parts; ++j) {
            const int a = static_cast<int>(rng() % 101);
            const int b = a + static_cast<int>(rng() % (101 - a));
            raw.push_back({Rational(a, 100), Rational(b, 100)});
        }
        return raw;
    };
    const auto membership = [](const std::vector<SubsetProb::Interval>& raw) {
        std::vector<bool> out(201, false);
        for (int k = 0; k <= 200; ++k) {
            const Rational x(k, 200);
            for (const auto& iv : raw)
                if (x >= iv.lo && x <= iv.hi) {
                    out[k] = true;
                    break;
                }
        }
        return out;
    };

    std::size_t trials = 0;
    for (int trial = 0; trial < 1000 && outcome.pass; ++trial) {
        ++trials;
        const auto raw_a = random_value(4);
        const auto raw_b = random_value(4);
        const SubsetProb a(raw_a), b(raw_b);

        // canonical form reproduces raw membership on the oracle grid
        const auto expected = membership(raw_a);
        for (int k = 0; k <= 200; ++k)
            if (a.contains(Rational(k, 200)) != expected[k]) {
                fail(outcome, "membership oracle disagrees at trial " + std::to_string(trial));
                break;
            }

        if (!(one_minus(one_minus(a)) == a)) fail(outcome, "involution fails");
        if (!(product(a, b) == product(b, a))) fail(outcome, "commutativity fails");
        if (!(product(a, SubsetProb::one()) == a)) fail(outcome, "identity fails");
        if (!(product(a, SubsetProb::zero()) == SubsetProb::zero())) fail(outcome, "annihilator fails");
        if (!(set_union(a, a) == a)) fail(outcome, "idempotence fails");
        if (!(set_union(a, b) == set_union(b, a))) fail(outcome, "union commutativity fails");
        const auto raw_c = random_value(3);
        const SubsetProb c(raw_c);
        if (!(set_union(set_union(a, b), c) == set_union(a, set_union(b, c))))
            fail(outcome, "union associativity fails");

        // union membership matches the oracle of the concatenated raw lists
        auto joined = raw_a;
        joined.insert(joined.end(), raw_b.begin(), raw_b.end());
        const auto expected_union = membership(joined);
        const auto u = set_union(a, b);
        for (int k = 0; k <= 200; ++k)
            if (u.contains(Rational(k, 200)) != expected_union[k]) {
                fail(outcome, "union oracle disagrees at trial " + std::to_string(trial));
                break;
            }
    }
    if (outcome.pass) outcome.detail = std::to_string(trials) + " random interval unions";
    return outcome;
}

} // namespace

int main() {
    const auto closed = build_closed_systems();

    std::vector<Criterion> criteria = {
        {"quantum cascade reproduction (uniform, n=1024, 1e-12)", 1.0,
         quantum_cascade_reproduction},
        {"cascade axiom suite (gaussian, 4 blocks, exact rationals)", 5.0, cascade_axiom_suite},
        {"pre-order laws on 500 seeded systems", 30.0, preorder_laws},
        {"product propositions on 200 operational systems", 0.0, product_propositions},
        {"completeness theorem on 100 closed systems", 0.0,
         [&] { return completeness_theorem(closed); }},
        {"interval characterization on complete fixtures", 0.0,
         [&] { return interval_characterization(closed); }},
        {"morphism suite: quotients, preservation, category laws, lifts", 0.0, morphism_suite},
        {"classical observation fixture", 0.0, classical_fixture},
        {"subset-probability algebra vs grid oracle", 5.0, subset_probability_algebra},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& criterion = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& err) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + err.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.time_budget_seconds > 0 && elapsed > criterion.time_budget_seconds) {
            outcome.pass = false;
            outcome.detail += (outcome.detail.empty() ? "" : "; ");
            outcome.detail += "over time budget of " +
                              std::to_string(criterion.time_budget_seconds) + "s";
        }
        std::printf("[%zu/%zu] %s  %s  (%s; %.2fs)\n", i + 1, criteria.size(),
                    outcome.pass ? "PASS" : "FAIL", criterion.name.c_str(),
                    outcome.detail.c_str(), elapsed);
        if (!outcome.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
