#include "scop/system.hpp"

#include "scop/error.hpp"

#include <algorithm>

namespace scop {

const char* errc_name(errc code) {
    switch (code) {
    case errc::empty_subset: return "EmptySubset";
    case errc::out_of_unit_interval: return "OutOfUnitInterval";
    case errc::unknown_id: return "UnknownId";
    case errc::duplicate_id: return "DuplicateId";
    case errc::empty_factor_list: return "EmptyFactorList";
    case errc::non_singleton_probability: return "NonSingletonProbability";
    case errc::dead_end: return "DeadEnd";
    case errc::not_an_experiment: return "NotAnExperiment";
    case errc::outcome_not_possible: return "OutcomeNotPossible";
    case errc::no_spectrum: return "NoSpectrum";
    case errc::outcome_clash: return "OutcomeClash";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::covariance_violation: return "CovarianceViolation";
    case errc::not_composable: return "NotComposable";
    case errc::domain_mismatch: return "DomainMismatch";
    case errc::not_complete: return "NotComplete";
    case errc::empty_region: return "EmptyRegion";
    case errc::zero_probability_region: return "ZeroProbabilityRegion";
    case errc::not_nested: return "NotNested";
    case errc::partition_invalid: return "PartitionInvalid";
    case errc::too_many_blocks: return "TooManyBlocks";
    case errc::duplicate_position: return "DuplicatePosition";
    case errc::not_normalized: return "NotNormalized";
    case errc::parse_error: return "ParseError";
    }
    return "Error";
}

OutcomeLabel OutcomeLabel::plain(std::string name) {
    OutcomeLabel label;
    label.is_subset_ = false;
    label.name_ = std::move(name);
    return label;
}

OutcomeLabel OutcomeLabel::subset(std::set<std::string> elems) {
    OutcomeLabel label;
    label.is_subset_ = true;
    label.elems_ = std::move(elems);
    return label;
}

std::string OutcomeLabel::text() const {
    if (!is_subset_) return name_;
    std::string out = "{";
    bool first = true;
    for (const auto& e : elems_) {
        if (!first) out += ",";
        out += e;
        first = false;
    }
    return out + "}";
}

bool OutcomeLabel::operator<(const OutcomeLabel& other) const {
    if (is_subset_ != other.is_subset_) return !is_subset_;
    if (!is_subset_) return name_ < other.name_;
    return elems_ < other.elems_;
}

bool ScopSystem::has_state(const StateId& p) const {
    return std::find(states.begin(), states.end(), p) != states.end();
}

bool ScopSystem::has_context(const ContextId& e) const {
    return std::find(contexts.begin(), contexts.end(), e) != contexts.end();
}

bool ScopSystem::has_property(const PropertyId& a) const {
    return std::find(properties.begin(), properties.end(), a) != properties.end();
}

void ScopSystem::require_state(const StateId& p) const {
    if (!has_state(p)) raise(errc::unknown_id, "state '" + p + "'");
}

void ScopSystem::require_context(const ContextId& e) const {
    if (!has_context(e)) raise(errc::unknown_id, "context '" + e + "'");
}

void ScopSystem::require_property(const PropertyId& a) const {
    if (!has_property(a)) raise(errc::unknown_id, "property '" + a + "'");
}

const SubsetProb& ScopSystem::mu(const ContextId& f, const StateId& q, const ContextId& e,
                                 const StateId& p) const {
    require_context(f);
    require_context(e);
    require_state(q);
    require_state(p);
    static const SubsetProb kZero = SubsetProb::zero();
    const auto it = mu_table.find(MuKey{f, q, e, p});
    return it == mu_table.end() ? kZero : it->second;
}

const std::set<PropertyId>& ScopSystem::xi(const StateId& p) const {
    require_state(p);
    static const std::set<PropertyId> kEmpty;
    const auto it = xi_map.find(p);
    return it == xi_map.end() ? kEmpty : it->second;
}

std::set<StateId> ScopSystem::kappa(const PropertyId& a) const {
    require_property(a);
    std::set<StateId> out;
    for (const auto& p : states)
        if (xi(p).count(a)) out.insert(p);
    return out;
}

ScoSystem ScopSystem::sco_part() const {
    return ScoSystem{states, destruction_state, contexts, mu_table, experiments};
}

namespace {

void check_duplicates(const std::vector<std::string>& ids, const std::string& what,
                      std::vector<ValidationIssue>& issues) {
    std::set<std::string> seen;
    for (const auto& id : ids) {
        if (id.empty()) issues.push_back({"empty-id", what + " with empty id"});
        if (!seen.insert(id).second)
            issues.push_back({"duplicate-id", what + " '" + id + "' declared twice"});
    }
}

// Transitions of one (e,p) row whose outcome is inclusion-minimal within
// the row. For subset-labelled rows the coarser outcomes contain the finer
// ones, so only the minimal ones are mutually exclusive alternatives.
bool is_minimal_in_row(const OutcomeLabel& label,
                       const std::vector<const OutcomeLabel*>& row_labels) {
    if (!label.is_subset()) return true;
    for (const auto* other : row_labels) {
        if (!other->is_subset() || *other == label) continue;
        const auto& a = other->elems();
        const auto& b = label.elems();
        if (a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end()))
            return false;
    }
    return true;
}

} // namespace

ValidationReport validate(const ScopSystem& sys) {
    std::vector<ValidationIssue> issues;

    check_duplicates(sys.states, "state", issues);
    check_duplicates(sys.contexts, "context", issues);
    check_duplicates(sys.properties, "property", issues);

    if (sys.destruction_state && !sys.has_state(*sys.destruction_state))
        issues.push_back({"unknown-id", "destruction state '" + *sys.destruction_state +
                                            "' is not a declared state"});

    for (const auto& [key, value] : sys.mu_table) {
        if (!sys.has_context(key.f))
            issues.push_back({"unknown-id", "mu references context '" + key.f + "'"});
        if (!sys.has_context(key.e))
            issues.push_back({"unknown-id", "mu references context '" + key.e + "'"});
        if (!sys.has_state(key.q))
            issues.push_back({"unknown-id", "mu references state '" + key.q + "'"});
        if (!sys.has_state(key.p))
            issues.push_back({"unknown-id", "mu references state '" + key.p + "'"});
        (void)value;
    }

    for (const auto& [state, props] : sys.xi_map) {
        if (!sys.has_state(state))
            issues.push_back({"unknown-id", "xi references state '" + state + "'"});
        for (const auto& a : props)
            if (!sys.has_property(a))
                issues.push_back({"unknown-id", "xi(" + state + ") references property '" + a + "'"});
    }

    // Group the nonzero transitions by acting couple (e,p).
    std::map<std::pair<ContextId, StateId>, std::vector<const std::pair<const MuKey, SubsetProb>*>>
        rows;
    for (const auto& entry : sys.mu_table)
        if (!entry.second.is_null()) rows[{entry.first.e, entry.first.p}].push_back(&entry);

    // Weak sum rule: a couple is always changed to some couple.
    for (const auto& e : sys.contexts)
        for (const auto& p : sys.states)
            if (!rows.count({e, p}))
                issues.push_back(
                    {"weak-sum-rule", "no reachable couple from (" + e + ", " + p + ")"});

    // Experiment specs.
    for (const auto& [ctx, spec] : sys.experiments) {
        if (!sys.has_context(ctx))
            issues.push_back({"unknown-id", "experiment spec for unknown context '" + ctx + "'"});
        if (!spec.context.empty() && spec.context != ctx)
            issues.push_back({"experiment-key-mismatch",
                              "spec stored under '" + ctx + "' names context '" + spec.context + "'"});

        std::map<OutcomeLabel, StateId> collapse_target; // per experiment
        std::map<StateId, std::vector<std::pair<ExperimentSpec::TransitionKey, OutcomeLabel>>>
            by_source;
        for (const auto& [key, label] : spec.outcomes) {
            if (!sys.has_context(key.f))
                issues.push_back({"unknown-id", "outcome of '" + ctx + "' references context '" +
                                                    key.f + "'"});
            if (!sys.has_state(key.q) || !sys.has_state(key.p)) {
                issues.push_back({"unknown-id", "outcome of '" + ctx + "' references unknown state"});
                continue;
            }
            const auto it = sys.mu_table.find(MuKey{key.f, key.q, ctx, key.p});
            if (it == sys.mu_table.end() || it->second.is_null())
                issues.push_back({"outcome-alignment",
                                  "outcome '" + label.text() + "' of '" + ctx +
                                      "' sits on an impossible transition (" + key.f + "," + key.q +
                                      "," + key.p + ")"});
            if (label.is_subset()) {
                if (!spec.spectrum) {
                    issues.push_back({"no-spectrum", "subset outcome '" + label.text() + "' of '" +
                                                         ctx + "' but no spectrum declared"});
                } else {
                    for (const auto& elem : label.elems())
                        if (!spec.spectrum->count(elem))
                            issues.push_back({"spectrum-mismatch",
                                              "outcome '" + label.text() + "' of '" + ctx +
                                                  "' uses '" + elem + "' outside the spectrum"});
                }
            }
            // Collapse consistency: a shared outcome determines the target.
            const auto [pos, inserted] = collapse_target.emplace(label, key.q);
            if (!inserted && pos->second != key.q)
                issues.push_back({"collapse-consistency",
                                  "outcome '" + label.text() + "' of '" + ctx + "' reaches both '" +
                                      pos->second + "' and '" + key.q + "'"});
            by_source[key.p].push_back({key, label});
        }

        // Alignment in the other direction: every possible transition of an
        // experiment carries an outcome.
        for (const auto& [key, value] : sys.mu_table) {
            if (key.e != ctx || value.is_null()) continue;
            if (!spec.outcomes.count(ExperimentSpec::TransitionKey{key.f, key.q, key.p}))
                issues.push_back({"outcome-alignment", "possible transition (" + key.f + "," + key.q +
                                                           "," + key.p + ") of experiment '" + ctx +
                                                           "' has no outcome"});
        }

        // Within one (e,p) row, outcome <-> target state must be one-to-one.
        for (const auto& [p, entries] : by_source) {
            std::map<OutcomeLabel, std::set<StateId>> targets_of_label;
            std::map<StateId, std::set<OutcomeLabel>> labels_of_target;
            for (const auto& [key, label] : entries) {
                targets_of_label[label].insert(key.q);
                labels_of_target[key.q].insert(label);
            }
            for (const auto& [label, targets] : targets_of_label)
                if (targets.size() > 1)
                    issues.push_back({"outcome-row-injectivity",
                                      "outcome '" + label.text() + "' in row (" + ctx + "," + p +
                                          ") has several target states"});
            for (const auto& [target, labels] : labels_of_target)
                if (labels.size() > 1)
                    issues.push_back({"outcome-row-injectivity",
                                      "target '" + target + "' in row (" + ctx + "," + p +
                                          ") carries several outcomes"});
        }
    }

    // Product provenance.
    for (const auto& [id, info] : sys.context_products) {
        if (!sys.has_context(id))
            issues.push_back({"unknown-id", "product provenance for unknown context '" + id + "'"});
        if (info.factors.empty())
            issues.push_back({"product-provenance", "product context '" + id + "' has no factors"});
        for (const auto& factor : info.factors)
            if (!sys.has_context(factor))
                issues.push_back({"unknown-id", "product context '" + id + "' references factor '" +
                                                    factor + "'"});
        if (info.weights) {
            if (info.weights->size() != info.factors.size())
                issues.push_back({"product-provenance",
                                  "product context '" + id + "' has mismatched weight count"});
            for (const auto& w : *info.weights)
                if (w <= 0)
                    issues.push_back({"product-provenance",
                                      "product context '" + id + "' has non-positive weight"});
        }
    }
    for (const auto& [id, info] : sys.state_products) {
        if (!sys.has_state(id))
            issues.push_back({"unknown-id", "product provenance for unknown state '" + id + "'"});
        if (info.factors.empty())
            issues.push_back({"product-provenance", "product state '" + id + "' has no factors"});
        for (const auto& factor : info.factors)
            if (!sys.has_state(factor))
                issues.push_back(
                    {"unknown-id", "product state '" + id + "' references factor '" + factor + "'"});
    }

    // Singleton sum rule, only meaningful when every stored value is a
    // singleton; subset-valued systems are bound by the weak rule alone.
    bool all_singleton = true;
    for (const auto& [key, value] : sys.mu_table)
        if (!value.is_singleton()) all_singleton = false;
    if (all_singleton && !sys.mu_table.empty()) {
        for (const auto& [couple, entries] : rows) {
            const auto& [e, p] = couple;
            // rows of products overlay the alternatives of their factors
            if (sys.context_products.count(e) || sys.state_products.count(p)) continue;
            const auto spec_it = sys.experiments.find(e);
            std::vector<const OutcomeLabel*> row_labels;
            if (spec_it != sys.experiments.end()) {
                for (const auto* entry : entries) {
                    const auto it = spec_it->second.outcomes.find(
                        ExperimentSpec::TransitionKey{entry->first.f, entry->first.q, p});
                    if (it != spec_it->second.outcomes.end()) row_labels.push_back(&it->second);
                }
            }
            Rational total = 0;
            for (const auto* entry : entries) {
                if (spec_it != sys.experiments.end()) {
                    const auto it = spec_it->second.outcomes.find(
                        ExperimentSpec::TransitionKey{entry->first.f, entry->first.q, p});
                    if (it != spec_it->second.outcomes.end() &&
                        !is_minimal_in_row(it->second, row_labels))
                        continue;
                }
                total += entry->second.singleton_value();
            }
            if (total != 1)
                issues.push_back({"singleton-sum", "row (" + e + ", " + p + ") sums to " +
                                                       rational_to_string(total) + ", not 1"});
        }
    }

    std::sort(issues.begin(), issues.end());
    issues.erase(std::unique(issues.begin(), issues.end()), issues.end());
    return ValidationReport{std::move(issues)};
}

} // namespace scop
