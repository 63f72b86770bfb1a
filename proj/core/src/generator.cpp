#include "scop/generator.hpp"

#include "scop/dynamics.hpp"
#include "scop/error.hpp"
#include "scop/experiments.hpp"

#include <algorithm>

namespace scop {

namespace {

// Exact singleton weights w_i / sum(w) over the chosen targets.
std::vector<Rational> random_row_weights(Rng& rng, std::size_t n) {
    std::vector<Rational> weights(n);
    Rational total = 0;
    for (auto& w : weights) {
        w = Rational(1 + rng.below(9));
        total += w;
    }
    for (auto& w : weights) w /= total;
    return weights;
}

ScopSystem generate_generic(std::uint64_t seed, const GeneratorSizes& sizes) {
    Rng rng(seed);
    ScopSystem sys;
    for (std::size_t i = 0; i < std::max<std::size_t>(1, sizes.states); ++i)
        sys.states.push_back("s" + std::to_string(i));
    for (std::size_t i = 0; i < std::max<std::size_t>(1, sizes.contexts); ++i)
        sys.contexts.push_back("e" + std::to_string(i));
    for (std::size_t i = 0; i < std::max<std::size_t>(1, sizes.properties); ++i)
        sys.properties.push_back("a" + std::to_string(i));

    for (const auto& p : sys.states) {
        auto& props = sys.xi_map[p];
        for (const auto& a : sys.properties)
            if (rng.coin()) props.insert(a);
    }

    for (const auto& e : sys.contexts) {
        for (const auto& p : sys.states) {
            const std::size_t fan = 1 + rng.below(3);
            std::set<std::pair<ContextId, StateId>> targets;
            while (targets.size() < std::min(fan, sys.states.size() * sys.contexts.size()))
                targets.insert({sys.contexts[rng.below(sys.contexts.size())],
                                sys.states[rng.below(sys.states.size())]});
            const auto weights = random_row_weights(rng, targets.size());
            std::size_t i = 0;
            for (const auto& [f, q] : targets)
                sys.mu_table.emplace(MuKey{f, q, e, p}, SubsetProb::point(weights[i++]));
        }
    }
    return sys;
}

ScopSystem generate_d_classical(std::uint64_t seed, const GeneratorSizes& sizes) {
    Rng rng(seed);
    ScopSystem sys;
    for (std::size_t i = 0; i < std::max<std::size_t>(1, sizes.states); ++i)
        sys.states.push_back("s" + std::to_string(i));
    for (std::size_t i = 0; i < std::max<std::size_t>(1, sizes.contexts); ++i)
        sys.contexts.push_back("e" + std::to_string(i));
    for (std::size_t i = 0; i < sizes.properties; ++i)
        sys.properties.push_back("a" + std::to_string(i));
    for (const auto& p : sys.states) {
        auto& props = sys.xi_map[p];
        for (const auto& a : sys.properties)
            if (rng.coin()) props.insert(a);
    }
    // One image couple per (e,p): both ranges are singletons.
    for (const auto& e : sys.contexts)
        for (const auto& p : sys.states)
            sys.mu_table.emplace(MuKey{sys.contexts[rng.below(sys.contexts.size())],
                                       sys.states[rng.below(sys.states.size())], e, p},
                                 SubsetProb::one());
    return sys;
}

std::string exp_name(std::size_t i) { return "exp" + std::to_string(i); }
std::string outcome_name(std::size_t i, std::size_t j) {
    return exp_name(i) + ":x" + std::to_string(j);
}
std::string eigen_name(std::size_t i, std::size_t j) {
    return "t" + std::to_string(i) + "_" + std::to_string(j);
}

ScopSystem generate_operational(std::uint64_t seed, const GeneratorSizes& sizes) {
    Rng rng(seed);
    const std::size_t n_exp = std::max<std::size_t>(2, sizes.contexts - 1);
    const auto layout = operational_layout(n_exp + 1);

    ScoSystem sco;
    for (std::size_t i = 0; i < n_exp; ++i) sco.contexts.push_back(exp_name(i));
    sco.contexts.push_back(layout.detector);

    // Per-experiment eigenstate pools, then the structural states.
    for (std::size_t i = 0; i < n_exp; ++i) {
        sco.states.push_back(eigen_name(i, 0));
        sco.states.push_back(eigen_name(i, 1));
    }
    sco.states.push_back("tdet_yes");
    sco.states.push_back("tdet_no");
    sco.states.push_back(layout.bottom);
    for (std::size_t i = 0; i < sizes.states; ++i) sco.states.push_back("g" + std::to_string(i));

    // Row of one state under one base experiment: either deterministic to
    // an eigenstate or a split over both. Returns the deterministic
    // eigenstate index, or nullopt for split rows.
    std::map<std::pair<std::size_t, StateId>, std::optional<std::size_t>> routing;
    const auto fix = [&](std::size_t i, const StateId& p, std::optional<std::size_t> j) {
        routing[{i, p}] = j;
    };
    for (std::size_t i = 0; i < n_exp; ++i) {
        fix(i, eigen_name(i, 0), 0);
        fix(i, eigen_name(i, 1), 1);
        fix(i, layout.bottom, 0);
        fix(i, "tdet_yes", i < 2 ? std::optional<std::size_t>(0) : std::nullopt);
    }
    fix(0, "tdet_no", 1);
    // Witness states for every combination of the two designated test
    // properties: in kappa(a0) only, in kappa(a1) only, in neither.
    fix(1, eigen_name(0, 0), 1);
    fix(1, eigen_name(0, 1), 1);
    fix(0, eigen_name(1, 0), 1);
    fix(0, eigen_name(1, 1), 1);

    for (std::size_t i = 0; i < n_exp; ++i) {
        ExperimentSpec spec;
        spec.context = exp_name(i);
        for (const auto& p : sco.states) {
            auto route = routing.find({i, p});
            std::optional<std::size_t> choice;
            if (route != routing.end())
                choice = route->second;
            else
                choice = rng.coin() ? std::optional<std::size_t>(rng.below(2)) : std::nullopt;
            routing[{i, p}] = choice;
            if (choice) {
                const StateId target = eigen_name(i, *choice);
                sco.mu_table.emplace(MuKey{exp_name(i), target, exp_name(i), p},
                                     SubsetProb::one());
                spec.outcomes.emplace(ExperimentSpec::TransitionKey{exp_name(i), target, p},
                                      OutcomeLabel::plain(outcome_name(i, *choice)));
            } else {
                const auto weights = random_row_weights(rng, 2);
                for (std::size_t j = 0; j < 2; ++j) {
                    const StateId target = eigen_name(i, j);
                    sco.mu_table.emplace(MuKey{exp_name(i), target, exp_name(i), p},
                                         SubsetProb::point(weights[j]));
                    spec.outcomes.emplace(ExperimentSpec::TransitionKey{exp_name(i), target, p},
                                          OutcomeLabel::plain(outcome_name(i, j)));
                }
            }
        }
        sco.experiments[exp_name(i)] = std::move(spec);
    }

    // The detector observes whether both designated tests come out first;
    // its yes-property is then exactly the meet of the two test properties.
    {
        ExperimentSpec spec;
        spec.context = layout.detector;
        for (const auto& p : sco.states) {
            const bool both_first = routing[{0, p}] == std::optional<std::size_t>(0) &&
                                    routing[{1, p}] == std::optional<std::size_t>(0);
            const StateId target = both_first ? "tdet_yes" : "tdet_no";
            sco.mu_table.emplace(MuKey{layout.detector, target, layout.detector, p},
                                 SubsetProb::one());
            spec.outcomes.emplace(ExperimentSpec::TransitionKey{layout.detector, target, p},
                                  OutcomeLabel::plain(both_first ? "det:yes" : "det:no"));
        }
        sco.experiments[layout.detector] = std::move(spec);
    }

    // Properties: one proper test subset plus the full set per experiment.
    std::map<ContextId, std::vector<std::set<OutcomeLabel>>> subsets;
    for (std::size_t i = 0; i < n_exp; ++i) {
        const auto x0 = OutcomeLabel::plain(outcome_name(i, 0));
        const auto x1 = OutcomeLabel::plain(outcome_name(i, 1));
        subsets[exp_name(i)] = {{x0}, {x0, x1}};
    }
    const auto yes = OutcomeLabel::plain("det:yes");
    const auto no = OutcomeLabel::plain("det:no");
    subsets[layout.detector] = {{yes}, {yes, no}};

    return sco_to_scop(sco, subsets);
}

} // namespace

OperationalLayout operational_layout(std::size_t n_contexts) {
    OperationalLayout layout;
    const std::size_t n_exp = std::max<std::size_t>(2, n_contexts - 1);
    for (std::size_t i = 0; i < n_exp; ++i) layout.experiments.push_back(exp_name(i));
    layout.detector = "det";
    for (std::size_t i = 0; i < n_exp; ++i)
        layout.test_properties.push_back(
            sco_property_id(exp_name(i), {OutcomeLabel::plain(outcome_name(i, 0))}));
    layout.meet_property = sco_property_id("det", {OutcomeLabel::plain("det:yes")});
    layout.bottom = "bottom";
    return layout;
}

ScopSystem generate_system(std::uint64_t seed, const GeneratorSizes& sizes, Profile profile) {
    switch (profile) {
    case Profile::generic: return generate_generic(seed, sizes);
    case Profile::d_classical: return generate_d_classical(seed, sizes);
    case Profile::operational: return generate_operational(seed, sizes);
    }
    raise(errc::parse_error, "unknown profile");
}

ScopSystem generate_complete_chain_system(std::uint64_t seed, std::size_t n_states,
                                          std::size_t n_properties) {
    Rng rng(seed);
    ScopSystem sys;
    n_states = std::max<std::size_t>(2, n_states);
    n_properties = std::max<std::size_t>(2, n_properties);
    for (std::size_t i = 0; i < n_states; ++i) sys.states.push_back("s" + std::to_string(i));
    sys.contexts.push_back("evolve");
    for (std::size_t i = 0; i < n_properties; ++i)
        sys.properties.push_back("a" + std::to_string(i));

    // xi(s_j) = {a_i : i >= c(j)} with some state at threshold 0: both set
    // families are chains, hence complete.
    for (std::size_t j = 0; j < n_states; ++j) {
        const std::size_t threshold = j == 0 ? 0 : rng.below(n_properties);
        auto& props = sys.xi_map[sys.states[j]];
        for (std::size_t i = threshold; i < n_properties; ++i)
            props.insert("a" + std::to_string(i));
    }

    for (const auto& p : sys.states) {
        const std::size_t fan = 1 + rng.below(2);
        std::set<StateId> targets;
        while (targets.size() < fan) targets.insert(sys.states[rng.below(n_states)]);
        const auto weights = random_row_weights(rng, targets.size());
        std::size_t i = 0;
        for (const auto& q : targets)
            sys.mu_table.emplace(MuKey{"evolve", q, "evolve", p}, SubsetProb::point(weights[i++]));
    }
    return sys;
}

namespace {

// Appends a source-only state: full rows, never a target.
void add_source_only_state(ScopSystem& sys, const StateId& id, Rng& rng,
                           const std::set<PropertyId>& xi_value) {
    const std::vector<StateId> old_states = sys.states;
    sys.states.push_back(id);
    sys.xi_map[id] = xi_value;
    for (const auto& e : sys.contexts) {
        const std::size_t fan = 1 + rng.below(2);
        std::set<std::pair<ContextId, StateId>> targets;
        while (targets.size() < fan)
            targets.insert({sys.contexts[rng.below(sys.contexts.size())],
                            old_states[rng.below(old_states.size())]});
        const auto weights = random_row_weights(rng, targets.size());
        std::size_t i = 0;
        for (const auto& [f, q] : targets)
            sys.mu_table.emplace(MuKey{f, q, e, id}, SubsetProb::point(weights[i++]));
    }
}

// Clones a source-only state: identical rows and xi, still never a target.
ScopSystem clone_state(const ScopSystem& sys, const StateId& original, const StateId& clone) {
    ScopSystem out = sys;
    out.states.push_back(clone);
    out.xi_map[clone] = sys.xi(original);
    std::map<MuKey, SubsetProb> extra;
    for (const auto& [key, value] : sys.mu_table)
        if (key.p == original) extra.emplace(MuKey{key.f, key.q, key.e, clone}, value);
    out.mu_table.insert(extra.begin(), extra.end());
    for (auto& [ctx, spec] : out.experiments) {
        std::map<ExperimentSpec::TransitionKey, OutcomeLabel> extra_outcomes;
        for (const auto& [key, label] : spec.outcomes)
            if (key.p == original)
                extra_outcomes.emplace(ExperimentSpec::TransitionKey{key.f, key.q, clone}, label);
        spec.outcomes.insert(extra_outcomes.begin(), extra_outcomes.end());
    }
    return out;
}

} // namespace

ScopMorphism generate_quotient_morphism(std::uint64_t seed) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const bool complete_pair = (seed % 2) == 1;
    ScopSystem base = complete_pair
                          ? generate_complete_chain_system(seed, 3 + rng.below(3), 3 + rng.below(3))
                          : generate_generic(seed, GeneratorSizes{4 + rng.below(3), 2 + rng.below(2),
                                                                  3 + rng.below(3)});

    // xi of the twin copies an existing value, which keeps chain systems
    // complete.
    const auto& donor = base.states[rng.below(base.states.size())];
    add_source_only_state(base, "w", rng, base.xi(donor));

    ScopMorphism mor;
    mor.source = base;
    mor.target = clone_state(base, "w", "w_clone");
    for (const auto& p : base.states) mor.m[p] = p;
    mor.m["w_clone"] = "w";
    for (const auto& e : base.contexts) mor.l[e] = e;
    for (const auto& a : base.properties) mor.n[a] = a;
    return mor;
}

ScoMorphism generate_sco_quotient_morphism(std::uint64_t seed) {
    Rng rng(seed ^ 0xd1b54a32d192ed03ULL);
    const std::size_t n_exp = 1 + rng.below(2);

    ScoSystem sco;
    for (std::size_t i = 0; i < n_exp; ++i) sco.contexts.push_back(exp_name(i));
    for (std::size_t i = 0; i < n_exp; ++i) {
        sco.states.push_back(eigen_name(i, 0));
        sco.states.push_back(eigen_name(i, 1));
    }
    sco.states.push_back("g0");
    sco.states.push_back("w");

    for (std::size_t i = 0; i < n_exp; ++i) {
        ExperimentSpec spec;
        spec.context = exp_name(i);
        for (const auto& p : sco.states) {
            std::optional<std::size_t> choice;
            if (p == eigen_name(i, 0)) choice = 0;
            else if (p == eigen_name(i, 1)) choice = 1;
            else choice = rng.coin() ? std::optional<std::size_t>(rng.below(2)) : std::nullopt;
            if (choice) {
                const StateId target = eigen_name(i, *choice);
                sco.mu_table.emplace(MuKey{exp_name(i), target, exp_name(i), p}, SubsetProb::one());
                spec.outcomes.emplace(ExperimentSpec::TransitionKey{exp_name(i), target, p},
                                      OutcomeLabel::plain(outcome_name(i, *choice)));
            } else {
                const auto weights = random_row_weights(rng, 2);
                for (std::size_t j = 0; j < 2; ++j) {
                    const StateId target = eigen_name(i, j);
                    sco.mu_table.emplace(MuKey{exp_name(i), target, exp_name(i), p},
                                         SubsetProb::point(weights[j]));
                    spec.outcomes.emplace(ExperimentSpec::TransitionKey{exp_name(i), target, p},
                                          OutcomeLabel::plain(outcome_name(i, j)));
                }
            }
        }
        sco.experiments[exp_name(i)] = std::move(spec);
    }

    ScoMorphism mor;
    mor.source = sco;

    // Clone "w" (source-only by construction: eigenstate targets only).
    ScoSystem big = sco;
    big.states.push_back("w_clone");
    std::map<MuKey, SubsetProb> extra;
    for (const auto& [key, value] : sco.mu_table)
        if (key.p == "w") extra.emplace(MuKey{key.f, key.q, key.e, "w_clone"}, value);
    big.mu_table.insert(extra.begin(), extra.end());
    for (auto& [ctx, spec] : big.experiments) {
        std::map<ExperimentSpec::TransitionKey, OutcomeLabel> extra_outcomes;
        for (const auto& [key, label] : spec.outcomes)
            if (key.p == "w")
                extra_outcomes.emplace(ExperimentSpec::TransitionKey{key.f, key.q, "w_clone"},
                                       label);
        spec.outcomes.insert(extra_outcomes.begin(), extra_outcomes.end());
    }
    mor.target = big;

    for (const auto& p : sco.states) mor.m[p] = p;
    mor.m["w_clone"] = "w";
    for (const auto& e : sco.contexts) mor.l[e] = e;
    for (const auto& [e, spec] : sco.experiments) {
        auto& ke = mor.k[e];
        for (const auto& [key, label] : spec.outcomes) ke[label] = label;
    }
    return mor;
}

ScopSystem close_under_pair_products(const ScopSystem& sys) {
    ScopSystem out = sys;
    const auto contexts = sys.contexts;
    const auto states = sys.states;
    for (std::size_t i = 0; i < contexts.size(); ++i) {
        for (std::size_t j = i + 1; j < contexts.size(); ++j) {
            const ContextId id = "(" + contexts[i] + "*" + contexts[j] + ")";
            const std::vector<ContextId> factors{contexts[i], contexts[j]};
            if (out.is_experiment(contexts[i]) && out.is_experiment(contexts[j]))
                out = product_experiment(out, factors, id);
            else
                out = product_context(out, factors, id);
        }
    }
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i + 1; j < states.size(); ++j)
            out = product_state(out, {states[i], states[j]},
                                "(" + states[i] + "*" + states[j] + ")");
    return out;
}

} // namespace scop
