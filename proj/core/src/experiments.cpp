#include "scop/experiments.hpp"

#include "scop/dynamics.hpp"
#include "scop/error.hpp"

#include <algorithm>

namespace scop {

namespace {

const ExperimentSpec& spec_of(const ScopSystem& sys, const ContextId& e) {
    const auto it = sys.experiments.find(e);
    if (it == sys.experiments.end())
        raise(errc::not_an_experiment, "context '" + e + "' has no outcome structure");
    return it->second;
}

bool label_subset_of(const OutcomeLabel& a, const OutcomeLabel& b) {
    if (!a.is_subset() || !b.is_subset()) return a == b;
    return std::includes(b.elems().begin(), b.elems().end(), a.elems().begin(), a.elems().end());
}

} // namespace

std::set<OutcomeLabel> outcomes(const ScopSystem& sys, const ContextId& e, const StateId& p) {
    sys.require_state(p);
    const auto& spec = spec_of(sys, e);
    std::set<OutcomeLabel> out;
    for (const auto& [key, label] : spec.outcomes)
        if (key.p == p) out.insert(label);
    return out;
}

std::set<OutcomeLabel> outcomes_total(const ScopSystem& sys, const ContextId& e) {
    const auto& spec = spec_of(sys, e);
    std::set<OutcomeLabel> out;
    for (const auto& [key, label] : spec.outcomes) out.insert(label);
    return out;
}

StateId collapse(const ScopSystem& sys, const ContextId& e, const StateId& p,
                 const OutcomeLabel& x) {
    sys.require_state(p);
    const auto& spec = spec_of(sys, e);
    for (const auto& [key, label] : spec.outcomes)
        if (key.p == p && label == x) return key.q;
    raise(errc::outcome_not_possible,
          "outcome '" + x.text() + "' of '" + e + "' is not possible in state '" + p + "'");
}

std::optional<StateId> effective_collapse(const ScopSystem& sys, const ContextId& e,
                                          const StateId& p, const OutcomeLabel& y) {
    const auto row = outcomes(sys, e, p);
    if (row.count(y)) return collapse(sys, e, p, y);
    if (!y.is_subset()) return std::nullopt;
    // Restrict y to the union of the row's subset labels.
    std::set<std::string> support;
    for (const auto& label : row)
        if (label.is_subset()) support.insert(label.elems().begin(), label.elems().end());
    std::set<std::string> restricted;
    std::set_intersection(y.elems().begin(), y.elems().end(), support.begin(), support.end(),
                          std::inserter(restricted, restricted.begin()));
    if (restricted.empty()) return std::nullopt;
    const auto w = OutcomeLabel::subset(std::move(restricted));
    if (!row.count(w)) return std::nullopt;
    return collapse(sys, e, p, w);
}

std::optional<std::set<OutcomeLabel>> find_test(const ScopSystem& sys, const PropertyId& a,
                                                const ContextId& e) {
    sys.require_property(a);
    spec_of(sys, e);
    std::set<OutcomeLabel> candidate;
    const auto actual_in = sys.kappa(a);
    for (const auto& p : actual_in) {
        const auto row = outcomes(sys, e, p);
        candidate.insert(row.begin(), row.end());
    }
    for (const auto& p : sys.states) {
        const auto row = outcomes(sys, e, p);
        const bool covered =
            std::includes(candidate.begin(), candidate.end(), row.begin(), row.end());
        if (covered != (actual_in.count(p) != 0)) return std::nullopt;
    }
    return candidate;
}

OperationalityReport is_operational_entity(const ScopSystem& sys) {
    OperationalityReport report;

    // All working tests per property; experiments iterate in id order.
    std::map<PropertyId, std::vector<std::pair<ContextId, std::set<OutcomeLabel>>>> tests;
    std::map<ContextId, std::set<OutcomeLabel>> totals;
    for (const auto& [e, spec] : sys.experiments) totals[e] = outcomes_total(sys, e);

    for (const auto& a : sys.properties) {
        for (const auto& [e, spec] : sys.experiments) {
            const auto found = find_test(sys, a, e);
            if (found) tests[a].push_back({e, *found});
        }
        if (tests[a].empty())
            report.failures.push_back("property '" + a + "' has no test");
        else
            report.witnesses[a] = tests[a].front();
    }

    std::vector<PropertyId> sorted = sys.properties;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            const auto& a = sorted[i];
            const auto& b = sorted[j];
            if (tests[a].empty() || tests[b].empty()) continue; // reported above
            bool found_disjoint = false;
            for (const auto& [e, unused_a] : tests[a]) {
                for (const auto& [f, unused_b] : tests[b]) {
                    const auto& oe = totals[e];
                    const auto& of = totals[f];
                    std::vector<OutcomeLabel> common;
                    std::set_intersection(oe.begin(), oe.end(), of.begin(), of.end(),
                                          std::back_inserter(common));
                    if (common.empty()) found_disjoint = true;
                }
            }
            if (!found_disjoint)
                report.failures.push_back("properties '" + a + "' and '" + b +
                                          "' have no tests with disjoint outcome sets");
        }
    }
    report.operational = report.failures.empty();
    return report;
}

bool is_first_kind_context(const ScopSystem& sys, const ContextId& e) {
    sys.require_context(e);
    for (const auto& [key, value] : sys.mu_table) {
        if (key.e != e || value.is_null()) continue;
        if (range_of_context_for_state(sys, key.f, key.q) != std::set<StateId>{key.q})
            return false;
    }
    return true;
}

bool is_first_kind_experiment(const ScopSystem& sys, const ContextId& e) {
    const auto& spec = spec_of(sys, e);
    for (const auto& [key, label] : spec.outcomes) {
        const auto& target = key.q;
        if (!sys.mu(e, target, e, target).is_certain()) return false;
    }
    return true;
}

namespace {

// Per-state view of one experiment's outcome structure, built once per
// verification pass so collapse resolution does not rescan the spec.
struct CascadeRows {
    std::map<StateId, std::map<OutcomeLabel, StateId>> targets;
    std::map<StateId, std::set<std::string>> support; // union of subset labels

    explicit CascadeRows(const ExperimentSpec& spec) {
        for (const auto& [key, label] : spec.outcomes) {
            targets[key.p].emplace(label, key.q);
            if (label.is_subset()) {
                auto& sup = support[key.p];
                sup.insert(label.elems().begin(), label.elems().end());
            }
        }
    }

    // effective_collapse against the cached rows.
    std::optional<StateId> collapse(const StateId& p, const OutcomeLabel& y) const {
        const auto row = targets.find(p);
        if (row == targets.end()) return std::nullopt;
        const auto direct = row->second.find(y);
        if (direct != row->second.end()) return direct->second;
        if (!y.is_subset()) return std::nullopt;
        const auto sup = support.find(p);
        if (sup == support.end()) return std::nullopt;
        std::set<std::string> restricted;
        std::set_intersection(y.elems().begin(), y.elems().end(), sup->second.begin(),
                              sup->second.end(), std::inserter(restricted, restricted.begin()));
        if (restricted.empty()) return std::nullopt;
        const auto w = row->second.find(OutcomeLabel::subset(std::move(restricted)));
        if (w == row->second.end()) return std::nullopt;
        return w->second;
    }
};

} // namespace

CascadeReport is_cascade_experiment(const ScopSystem& sys, const ContextId& e) {
    const auto& spec = spec_of(sys, e);
    if (!spec.spectrum)
        raise(errc::no_spectrum, "experiment '" + e + "' declares no spectrum");

    CascadeReport report;
    report.context = e;
    report.spectrum = *spec.spectrum;

    std::vector<OutcomeLabel> subset_outcomes;
    for (const auto& label : outcomes_total(sys, e))
        if (label.is_subset()) subset_outcomes.push_back(label);
    if (subset_outcomes.empty())
        raise(errc::no_spectrum, "experiment '" + e + "' has no subset-encoded outcomes");

    const CascadeRows rows(spec);
    const auto outcome_probability = [&](const StateId& p, const OutcomeLabel& y) {
        const auto target = rows.collapse(p, y);
        if (!target) return SubsetProb::zero();
        return sys.mu(e, *target, e, p);
    };

    for (const auto& p : sys.states) {
        for (const auto& x : subset_outcomes) {
            const auto qx = rows.collapse(p, x);
            if (!qx) continue;

            // (2) re-measuring the collapsed state is certain.
            ++report.checked_instances;
            if (!sys.mu(e, *qx, e, *qx).is_certain())
                report.violations.push_back({"idempotence", p, x, x,
                                             "mu(e," + *qx + ",e," + *qx + ") = " +
                                                 sys.mu(e, *qx, e, *qx).str()});

            for (const auto& y : subset_outcomes) {
                if (!label_subset_of(x, y)) continue;

                // (1) a coarser outcome leaves the finer collapse alone.
                ++report.checked_instances;
                const auto stable = rows.collapse(*qx, y);
                if (!stable)
                    report.violations.push_back(
                        {"collapse-stability", p, x, y,
                         "'" + y.text() + "' is not applicable after collapsing to '" + *qx + "'"});
                else if (*stable != *qx)
                    report.violations.push_back({"collapse-stability", p, x, y,
                                                 "P_y(P_x(p)) = " + *stable + " but P_x(p) = " + *qx});

                // (3) probabilities multiply along the cascade.
                const auto qy = rows.collapse(p, y);
                if (!qy) continue;
                ++report.checked_instances;
                const auto direct = sys.mu(e, *qx, e, p);
                const auto chained = product(sys.mu(e, *qx, e, *qy), sys.mu(e, *qy, e, p));
                if (!(direct == chained))
                    report.violations.push_back({"multiplication", p, x, y,
                                                 direct.str() + " != " + chained.str()});
            }
        }

        // (4) complementary outcomes have complementary probabilities.
        for (const auto& z : subset_outcomes) {
            for (const auto& t : subset_outcomes) {
                if (!(z < t)) continue; // unordered pairs once
                std::set<std::string> join;
                std::set_union(z.elems().begin(), z.elems().end(), t.elems().begin(),
                               t.elems().end(), std::inserter(join, join.begin()));
                std::set<std::string> common;
                std::set_intersection(z.elems().begin(), z.elems().end(), t.elems().begin(),
                                      t.elems().end(), std::inserter(common, common.begin()));
                if (join != *spec.spectrum || !common.empty()) continue;
                const bool z_applies = rows.collapse(p, z).has_value();
                const bool t_applies = rows.collapse(p, t).has_value();
                if (!z_applies && !t_applies) continue; // p yields no spectrum outcome at all
                ++report.checked_instances;
                const auto lhs = outcome_probability(p, z);
                const auto rhs = one_minus(outcome_probability(p, t));
                if (!(lhs == rhs))
                    report.violations.push_back(
                        {"complement", p, z, t, lhs.str() + " != 1 - ... = " + rhs.str()});
            }
        }
    }
    return report;
}

ScopSystem product_experiment(const ScopSystem& sys, const std::vector<ContextId>& factors,
                              const ContextId& new_id,
                              std::optional<std::vector<Rational>> weights) {
    if (factors.empty()) raise(errc::empty_factor_list, "product experiment needs factors");
    for (const auto& e : factors) spec_of(sys, e);

    // Total outcome sets must be pairwise disjoint.
    for (std::size_t i = 0; i < factors.size(); ++i) {
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
            const auto oi = outcomes_total(sys, factors[i]);
            const auto oj = outcomes_total(sys, factors[j]);
            std::vector<OutcomeLabel> common;
            std::set_intersection(oi.begin(), oi.end(), oj.begin(), oj.end(),
                                  std::back_inserter(common));
            if (!common.empty())
                raise(errc::outcome_clash, "factors '" + factors[i] + "' and '" + factors[j] +
                                               "' share outcome '" + common.front().text() + "'");
        }
    }

    ScopSystem out = product_context(sys, factors, new_id, std::move(weights));

    ExperimentSpec merged;
    merged.context = new_id;
    bool any_spectrum = false;
    std::set<std::string> spectrum;
    for (const auto& factor : factors) {
        const auto& spec = sys.experiments.at(factor);
        if (spec.spectrum) {
            any_spectrum = true;
            spectrum.insert(spec.spectrum->begin(), spec.spectrum->end());
        }
        for (const auto& [key, label] : spec.outcomes) {
            const auto [pos, inserted] = merged.outcomes.emplace(key, label);
            if (!inserted && !(pos->second == label))
                raise(errc::outcome_clash,
                      "factors assign different outcomes to transition (" + key.f + "," + key.q +
                          "," + key.p + ")");
        }
    }
    if (any_spectrum) merged.spectrum = std::move(spectrum);
    out.experiments[new_id] = std::move(merged);
    return out;
}

PropertyId sco_property_id(const ContextId& e, const std::set<OutcomeLabel>& subset) {
    std::string id = e + "::{";
    bool first = true;
    for (const auto& label : subset) {
        if (!first) id += ",";
        id += label.text();
        first = false;
    }
    return id + "}";
}

namespace {

ScopSystem sco_to_scop_impl(const ScoSystem& sco,
                            const std::map<ContextId, std::vector<std::set<OutcomeLabel>>>& subsets) {
    ScopSystem out;
    out.states = sco.states;
    out.destruction_state = sco.destruction_state;
    out.contexts = sco.contexts;
    out.mu_table = sco.mu_table;
    out.experiments = sco.experiments;
    for (const auto& p : out.states) out.xi_map[p] = {};

    for (const auto& [e, family] : subsets) {
        if (!sco.experiments.count(e))
            raise(errc::not_an_experiment, "context '" + e + "' has no outcome structure");
        // O(e,p) per state, computed once.
        std::map<StateId, std::set<OutcomeLabel>> rows;
        for (const auto& [key, label] : sco.experiments.at(e).outcomes)
            rows[key.p].insert(label);
        for (const auto& subset : family) {
            const PropertyId id = sco_property_id(e, subset);
            out.properties.push_back(id);
            for (const auto& p : out.states) {
                const auto& row = rows[p];
                if (std::includes(subset.begin(), subset.end(), row.begin(), row.end()))
                    out.xi_map[p].insert(id);
            }
        }
    }
    return out;
}

} // namespace

ScopSystem sco_to_scop(const ScoSystem& sco, std::size_t cap) {
    std::map<ContextId, std::vector<std::set<OutcomeLabel>>> subsets;
    std::size_t total = 0;
    for (const auto& [e, spec] : sco.experiments) {
        std::vector<OutcomeLabel> labels;
        {
            std::set<OutcomeLabel> seen;
            for (const auto& [key, label] : spec.outcomes) seen.insert(label);
            labels.assign(seen.begin(), seen.end());
        }
        if (labels.size() >= 8 * sizeof(std::size_t) - 1)
            raise(errc::cap_exceeded, "experiment '" + e + "' has too many outcomes to enumerate");
        const std::size_t count = std::size_t{1} << labels.size();
        total += count;
        if (total > cap)
            raise(errc::cap_exceeded,
                  "power sets exceed the property cap; pass explicit subset lists instead");
        auto& family = subsets[e];
        family.reserve(count);
        for (std::size_t mask = 0; mask < count; ++mask) {
            std::set<OutcomeLabel> subset;
            for (std::size_t bit = 0; bit < labels.size(); ++bit)
                if (mask & (std::size_t{1} << bit)) subset.insert(labels[bit]);
            family.push_back(std::move(subset));
        }
    }
    return sco_to_scop_impl(sco, subsets);
}

ScopSystem sco_to_scop(const ScoSystem& sco,
                       const std::map<ContextId, std::vector<std::set<OutcomeLabel>>>& subsets) {
    return sco_to_scop_impl(sco, subsets);
}

} // namespace scop
