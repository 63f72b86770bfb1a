#include "scop/error.hpp"
#include "scop/experiments.hpp"
#include "scop/generator.hpp"
#include "scop/morphism.hpp"
#include "scop/preorder.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace scop;
using test::tiny_system;

TEST_CASE("identity morphisms verify on any system") {
    for (int seed = 0; seed < 5; ++seed) {
        const auto sys = generate_system(seed, {4, 2, 3}, Profile::generic);
        CHECK(verify(identity(sys)).ok());
    }
    CHECK(verify(identity(generate_system(1, {2, 3, 3}, Profile::operational))).ok());
}

TEST_CASE("quotient morphisms verify; a perturbed entry is pinpointed") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto mor = generate_quotient_morphism(seed);
        CHECK(verify(mor).ok());
    }

    auto broken = generate_quotient_morphism(2);
    // perturb one target-side value: exactly that tuple must be reported
    const auto& key = broken.target.mu_table.begin()->first;
    const MuKey perturbed = key;
    auto value = SubsetProb::point(Rational(1, 7));
    broken.target.mu_table.erase(perturbed);
    broken.target.mu_table.emplace(perturbed, value);
    const auto report = verify(broken);
    CHECK_FALSE(report.ok());
    std::size_t mu_violations = 0;
    for (const auto& violation : report.violations)
        if (violation.kind == "covariance-mu") ++mu_violations;
    CHECK(mu_violations == 1);
}

TEST_CASE("missing map entries are a domain mismatch") {
    auto mor = identity(tiny_system());
    mor.n.erase("a0");
    CHECK_THROWS_AS(verify(mor), Error);
}

TEST_CASE("category laws: units and associativity") {
    // f runs from the sub-entity into the big entity; compose(g, h)
    // applies h first, so the identities sit on the matching ends.
    const auto f = generate_quotient_morphism(5);
    const auto id_source = identity(f.source);
    const auto id_target = identity(f.target);
    CHECK(compose(f, id_source) == f);
    CHECK(compose(id_target, f) == f);

    // chain f : A -> B with an endomorphism g : B -> B
    const auto g = [&] {
        ScopMorphism upper;
        upper.source = f.target;
        upper.target = f.target;
        for (const auto& p : f.target.states) upper.m[p] = p;
        for (const auto& e : f.target.contexts) upper.l[e] = e;
        for (const auto& a : f.target.properties) upper.n[a] = a;
        return upper;
    }();
    CHECK(verify(compose(g, f)).ok());
    CHECK(compose(g, compose(f, id_source)) == compose(compose(g, f), id_source));

    CHECK_THROWS_AS(compose(f, f), Error); // endpoints do not match
}

TEST_CASE("preservation: order biconditionals always, meet/join on complete pairs") {
    std::size_t meet_join_seen = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto mor = generate_quotient_morphism(seed);
        const auto report = check_preservation(mor);
        CHECK(report.order_violations.empty());
        CHECK(report.meet_join_violations.empty());
        if (report.meet_join_checked) ++meet_join_seen;
    }
    CHECK(meet_join_seen > 0); // odd seeds build complete chain fixtures

    // require_complete raises on incomplete pairs
    const auto generic = generate_quotient_morphism(2); // even: generic fixture
    CHECK_THROWS_AS(check_preservation(generic, true), Error);
}

TEST_CASE("sampled verification spots planted violations") {
    const auto good = generate_quotient_morphism(4);
    CHECK(verify_sampled(good, 500, 1).ok());

    auto broken = good;
    // corrupt every xi value in the target: any sampled pair catches it
    for (auto& [p, props] : broken.target.xi_map) props.clear();
    bool caught = false;
    for (const auto& a : broken.source.properties)
        for (const auto& p : broken.source.states)
            if (broken.source.xi(p).count(a)) caught = true;
    if (caught) CHECK_FALSE(verify_sampled(broken, 500, 1).ok());
}

TEST_CASE("SCO morphisms verify and lift to SCOP morphisms") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto sco = generate_sco_quotient_morphism(seed);
        CHECK(verify_sco(sco).ok());
        const auto lifted = lift(sco, 4096);
        CHECK(verify(lifted).ok());
    }
}

TEST_CASE("lifting maps subset properties through the outcome bijection") {
    // one experiment, two outcomes, k swaps the labels
    ScoSystem small;
    small.states = {"tx", "ty"};
    small.contexts = {"e"};
    ExperimentSpec spec;
    spec.context = "e";
    spec.outcomes.emplace(ExperimentSpec::TransitionKey{"e", "tx", "tx"},
                          OutcomeLabel::plain("x"));
    spec.outcomes.emplace(ExperimentSpec::TransitionKey{"e", "ty", "ty"},
                          OutcomeLabel::plain("y"));
    small.mu_table.emplace(MuKey{"e", "tx", "e", "tx"}, SubsetProb::one());
    small.mu_table.emplace(MuKey{"e", "ty", "e", "ty"}, SubsetProb::one());
    small.experiments["e"] = spec;

    ScoSystem swapped = small;
    auto& swapped_spec = swapped.experiments.at("e");
    swapped_spec.outcomes.clear();
    swapped_spec.outcomes.emplace(ExperimentSpec::TransitionKey{"e", "tx", "tx"},
                                  OutcomeLabel::plain("y"));
    swapped_spec.outcomes.emplace(ExperimentSpec::TransitionKey{"e", "ty", "ty"},
                                  OutcomeLabel::plain("x"));

    ScoMorphism mor;
    mor.source = small;
    mor.target = swapped;
    mor.m = {{"tx", "tx"}, {"ty", "ty"}};
    mor.l = {{"e", "e"}};
    mor.k["e"] = {{OutcomeLabel::plain("x"), OutcomeLabel::plain("y")},
                  {OutcomeLabel::plain("y"), OutcomeLabel::plain("x")}};
    REQUIRE(verify_sco(mor).ok());

    const auto lifted = lift(mor, 64);
    CHECK(verify(lifted).ok());
    CHECK(lifted.n.at(sco_property_id("e", {OutcomeLabel::plain("x")})) ==
          sco_property_id("e", {OutcomeLabel::plain("y")}));

    // identity SCO morphism lifts to the identity SCOP morphism
    ScoMorphism id_mor;
    id_mor.source = small;
    id_mor.target = small;
    id_mor.m = {{"tx", "tx"}, {"ty", "ty"}};
    id_mor.l = {{"e", "e"}};
    id_mor.k["e"] = {{OutcomeLabel::plain("x"), OutcomeLabel::plain("x")},
                     {OutcomeLabel::plain("y"), OutcomeLabel::plain("y")}};
    const auto id_lift = lift(id_mor, 64);
    for (const auto& [a, b] : id_lift.n) CHECK(a == b);
    CHECK(verify(id_lift).ok());
}
