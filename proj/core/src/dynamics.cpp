#include "scop/dynamics.hpp"

#include "scop/error.hpp"

#include <algorithm>
#include <random>

namespace scop {

std::set<StateId> range_of_context_for_state(const ScopSystem& sys, const ContextId& e,
                                             const StateId& p) {
    sys.require_context(e);
    sys.require_state(p);
    std::set<StateId> out;
    for (const auto& [key, value] : sys.mu_table)
        if (key.e == e && key.p == p && !value.is_null()) out.insert(key.q);
    return out;
}

std::set<StateId> range_of_context(const ScopSystem& sys, const ContextId& e) {
    sys.require_context(e);
    std::set<StateId> out;
    for (const auto& [key, value] : sys.mu_table)
        if (key.e == e && !value.is_null()) out.insert(key.q);
    return out;
}

std::set<ContextId> range_of_state_for_context(const ScopSystem& sys, const StateId& p,
                                               const ContextId& e) {
    sys.require_context(e);
    sys.require_state(p);
    std::set<ContextId> out;
    for (const auto& [key, value] : sys.mu_table)
        if (key.e == e && key.p == p && !value.is_null()) out.insert(key.f);
    return out;
}

std::set<ContextId> range_of_state(const ScopSystem& sys, const StateId& p) {
    sys.require_state(p);
    std::set<ContextId> out;
    for (const auto& [key, value] : sys.mu_table)
        if (key.p == p && !value.is_null()) out.insert(key.f);
    return out;
}

DeterminismReport classify(const ScopSystem& sys) {
    DeterminismReport report;
    // One pass to collect R(e,p) and R(p,e) for every couple.
    std::map<Couple, std::set<StateId>> state_range;
    std::map<Couple, std::set<ContextId>> context_range;
    for (const auto& [key, value] : sys.mu_table) {
        if (value.is_null()) continue;
        state_range[{key.e, key.p}].insert(key.q);
        context_range[{key.e, key.p}].insert(key.f);
    }
    for (const auto& e : sys.contexts) report.context_deterministic[e] = true;
    for (const auto& p : sys.states) report.state_deterministic[p] = true;

    for (const auto& e : sys.contexts) {
        for (const auto& p : sys.states) {
            const Couple couple{e, p};
            CoupleReport c;
            const auto sr = state_range.find(couple);
            const auto cr = context_range.find(couple);
            const std::set<StateId> empty_s;
            const std::set<ContextId> empty_c;
            const auto& targets = sr == state_range.end() ? empty_s : sr->second;
            const auto& follow = cr == context_range.end() ? empty_c : cr->second;
            c.context_deterministic = targets.size() == 1;
            c.state_deterministic = follow.size() == 1;
            c.deterministic = c.context_deterministic && c.state_deterministic;
            if (c.deterministic) c.image = Couple{*follow.begin(), *targets.begin()};
            c.eigenstate = targets.size() == 1 && *targets.begin() == p;
            c.eigencontext = follow.size() == 1 && *follow.begin() == e;
            if (!c.context_deterministic) report.context_deterministic[e] = false;
            if (!c.state_deterministic) report.state_deterministic[p] = false;
            report.couples.emplace(couple, std::move(c));
        }
    }
    report.d_classical = true;
    for (const auto& [e, det] : report.context_deterministic)
        if (!det) report.d_classical = false;
    for (const auto& [p, det] : report.state_deterministic)
        if (!det) report.d_classical = false;
    return report;
}

ScopSystem product_context(const ScopSystem& sys, const std::vector<ContextId>& factors,
                           const ContextId& new_id, std::optional<std::vector<Rational>> weights) {
    if (factors.empty()) raise(errc::empty_factor_list, "product context needs factors");
    for (const auto& e : factors) sys.require_context(e);
    if (sys.has_context(new_id)) raise(errc::duplicate_id, "context '" + new_id + "' exists");
    if (weights) {
        if (weights->size() != factors.size())
            raise(errc::domain_mismatch, "weight count differs from factor count");
        for (const auto& w : *weights)
            if (w <= 0) raise(errc::domain_mismatch, "hidden-factor weights must be positive");
    }

    ScopSystem out = sys;
    out.contexts.push_back(new_id);
    out.context_products[new_id] = ProductContextInfo{factors, std::move(weights)};

    // mu(f, q, Pi e_i, p) = union_i mu(f, q, e_i, p)
    std::map<MuKey, SubsetProb> extra;
    for (const auto& [key, value] : sys.mu_table) {
        if (value.is_null()) continue;
        if (std::find(factors.begin(), factors.end(), key.e) == factors.end()) continue;
        const MuKey pk{key.f, key.q, new_id, key.p};
        const auto it = extra.find(pk);
        if (it == extra.end())
            extra.emplace(pk, value);
        else
            it->second = set_union(it->second, value);
    }
    out.mu_table.insert(extra.begin(), extra.end());
    return out;
}

ScopSystem product_state(const ScopSystem& sys, const std::vector<StateId>& factors,
                         const StateId& new_id) {
    if (factors.empty()) raise(errc::empty_factor_list, "product state needs factors");
    for (const auto& p : factors) sys.require_state(p);
    if (sys.has_state(new_id)) raise(errc::duplicate_id, "state '" + new_id + "' exists");

    ScopSystem out = sys;
    out.states.push_back(new_id);
    out.state_products[new_id] = ProductStateInfo{factors};

    // mu(f, q, e, Pi p_i) = union_i mu(f, q, e, p_i)
    std::map<MuKey, SubsetProb> extra;
    for (const auto& [key, value] : sys.mu_table) {
        if (value.is_null()) continue;
        if (std::find(factors.begin(), factors.end(), key.p) == factors.end()) continue;
        const MuKey pk{key.f, key.q, key.e, new_id};
        const auto it = extra.find(pk);
        if (it == extra.end())
            extra.emplace(pk, value);
        else
            it->second = set_union(it->second, value);
    }
    out.mu_table.insert(extra.begin(), extra.end());

    // xi(Pi p_i) = intersection_i xi(p_i): the unique choice under which
    // product states are join states.
    std::set<PropertyId> xi_value = sys.xi(factors.front());
    for (std::size_t i = 1; i < factors.size(); ++i) {
        const auto& other = sys.xi(factors[i]);
        std::set<PropertyId> next;
        std::set_intersection(xi_value.begin(), xi_value.end(), other.begin(), other.end(),
                              std::inserter(next, next.begin()));
        xi_value = std::move(next);
    }
    out.xi_map[new_id] = std::move(xi_value);

    // Extend experiment outcome maps over the new rows.
    for (auto& [ctx, spec] : out.experiments) {
        std::map<ExperimentSpec::TransitionKey, OutcomeLabel> extra_outcomes;
        for (const auto& [key, label] : spec.outcomes) {
            if (std::find(factors.begin(), factors.end(), key.p) == factors.end()) continue;
            const ExperimentSpec::TransitionKey nk{key.f, key.q, new_id};
            const auto it = extra_outcomes.find(nk);
            if (it == extra_outcomes.end())
                extra_outcomes.emplace(nk, label);
            else if (!(it->second == label))
                raise(errc::outcome_clash, "factors of '" + new_id +
                                               "' disagree on the outcome of a shared transition of '" +
                                               ctx + "'");
        }
        spec.outcomes.insert(extra_outcomes.begin(), extra_outcomes.end());
    }
    return out;
}

CoupleTransitionGraph build_transition_graph(const ScopSystem& sys) {
    CoupleTransitionGraph graph;
    for (const auto& [key, value] : sys.mu_table) {
        if (value.is_null()) continue;
        graph.edges[{key.e, key.p}].push_back({{key.f, key.q}, value});
    }
    return graph;
}

namespace {

// Deterministic uniform double in [0,1) derived from the engine output;
// avoids std::uniform_real_distribution, which is not pinned by the
// standard.
double unit_double(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::size_t pick_weighted(std::mt19937_64& eng, const std::vector<double>& weights) {
    double total = 0;
    for (const double w : weights) total += w;
    const double u = unit_double(eng) * total;
    double acc = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return weights.size() - 1;
}

// Resolve a (possibly nested) product context to a concrete factor.
ContextId resolve_hidden_factor(const ScopSystem& sys, const ContextId& e,
                                std::mt19937_64& eng) {
    ContextId current = e;
    for (std::size_t depth = 0;; ++depth) {
        if (depth > sys.contexts.size())
            raise(errc::dead_end, "cyclic product provenance at '" + current + "'");
        const auto it = sys.context_products.find(current);
        if (it == sys.context_products.end()) return current;
        const auto& info = it->second;
        std::vector<double> weights;
        if (info.weights) {
            weights.reserve(info.weights->size());
            for (const auto& w : *info.weights) weights.push_back(rational_to_double(w));
        } else {
            weights.assign(info.factors.size(), 1.0);
        }
        current = info.factors[pick_weighted(eng, weights)];
    }
}

} // namespace

std::vector<Couple> sample_trajectory(const ScopSystem& sys, const Couple& start,
                                      std::size_t steps, std::uint64_t seed) {
    sys.require_context(start.first);
    sys.require_state(start.second);
    const auto graph = build_transition_graph(sys);

    std::mt19937_64 eng(seed);
    std::vector<Couple> trajectory;
    trajectory.reserve(steps + 1);
    trajectory.push_back(start);

    Couple current = start;
    for (std::size_t step = 0; step < steps; ++step) {
        const ContextId acting = resolve_hidden_factor(sys, current.first, eng);
        const auto row_it = graph.edges.find({acting, current.second});
        if (row_it == graph.edges.end() || row_it->second.empty())
            raise(errc::dead_end, "no transition out of (" + acting + ", " + current.second + ")");
        const auto& row = row_it->second;

        std::vector<double> weights;
        weights.reserve(row.size());
        for (const auto& [couple, prob] : row) {
            if (!prob.is_singleton())
                raise(errc::non_singleton_probability,
                      "row (" + acting + ", " + current.second + ") has subset value " + prob.str());
            weights.push_back(rational_to_double(prob.singleton_value()));
        }
        current = row[pick_weighted(eng, weights)].first;
        trajectory.push_back(current);
    }
    return trajectory;
}

} // namespace scop
