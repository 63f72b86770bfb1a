#pragma once

#include "scop/subset_prob.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scop {

using StateId = std::string;
using ContextId = std::string;
using PropertyId = std::string;

// Key of one transition probability entry: the chance for the couple (e,p)
// to change to the couple (f,q).
struct MuKey {
    ContextId f;
    StateId q;
    ContextId e;
    StateId p;
    auto operator<=>(const MuKey&) const = default;
};

// An experiment outcome. Either a plain label, or a subset of the
// experiment's spectrum (the encoding used by cascade experiments, where
// outcomes are subsets of a spectrum set E).
class OutcomeLabel {
public:
    static OutcomeLabel plain(std::string name);
    static OutcomeLabel subset(std::set<std::string> elems);

    bool is_subset() const { return is_subset_; }
    const std::string& name() const { return name_; }
    const std::set<std::string>& elems() const { return elems_; }

    // Canonical display text; subset labels print as "{a,b}".
    std::string text() const;

    bool operator==(const OutcomeLabel&) const = default;
    bool operator<(const OutcomeLabel& other) const;

private:
    bool is_subset_ = false;
    std::string name_;
    std::set<std::string> elems_;
};

// Outcome structure attached to a context e. outcome_map assigns the
// outcome x(f,q,e,p) to each possible transition of e; it must be defined
// exactly on the triples (f,q,p) with mu(f,q,e,p) != {0}, outcomes within
// one (e,p) row must pair one-to-one with target states (so the collapse
// map P_x is a function), and a shared outcome of two rows must collapse
// to the same target.
struct ExperimentSpec {
    struct TransitionKey {
        ContextId f;
        StateId q;
        StateId p;
        auto operator<=>(const TransitionKey&) const = default;
    };

    ContextId context;
    std::optional<std::set<std::string>> spectrum; // cascade experiments only
    std::map<TransitionKey, OutcomeLabel> outcomes;

    bool operator==(const ExperimentSpec&) const = default;
};

// Provenance of a product context Pi_i e_i: "choose one factor and apply
// it". Kept on the system because sampling resolves the hidden factor
// choice through it. Weights default to uniform.
struct ProductContextInfo {
    std::vector<ContextId> factors;
    std::optional<std::vector<Rational>> weights;
    bool operator==(const ProductContextInfo&) const = default;
};

struct ProductStateInfo {
    std::vector<StateId> factors;
    bool operator==(const ProductStateInfo&) const = default;
};

// A state context system (Sigma, M, mu): the property-free part of the
// model. Property sets for an operational entity can be reconstructed
// from it (see sco_to_scop).
struct ScoSystem {
    std::vector<StateId> states;
    std::optional<StateId> destruction_state;
    std::vector<ContextId> contexts;
    std::map<MuKey, SubsetProb> mu_table;
    std::map<ContextId, ExperimentSpec> experiments;

    bool operator==(const ScoSystem&) const = default;
};

/*
 * A finite state context property system (Sigma, M, L, mu, xi).
 *
 * mu_table is sparse with default {0}; xi_map is total on states. The
 * Cartan map kappa is never stored: it is derived from xi, so the duality
 * a in xi(p) <=> p in kappa(a) holds by construction.
 *
 * Systems are treated as immutable values after construction; operations
 * that "extend" a system (products, demos, sco_to_scop) return new ones.
 */
struct ScopSystem {
    std::vector<StateId> states;
    std::optional<StateId> destruction_state;
    std::vector<ContextId> contexts;
    std::vector<PropertyId> properties;
    std::map<MuKey, SubsetProb> mu_table;
    std::map<StateId, std::set<PropertyId>> xi_map;
    std::map<ContextId, ExperimentSpec> experiments;
    std::map<ContextId, ProductContextInfo> context_products;
    std::map<StateId, ProductStateInfo> state_products;

    bool has_state(const StateId& p) const;
    bool has_context(const ContextId& e) const;
    bool has_property(const PropertyId& a) const;

    void require_state(const StateId& p) const;    // throws errc::unknown_id
    void require_context(const ContextId& e) const;
    void require_property(const PropertyId& a) const;

    // Stored value or {0}; throws errc::unknown_id on unknown ids.
    const SubsetProb& mu(const ContextId& f, const StateId& q, const ContextId& e,
                         const StateId& p) const;

    // Actual property set of p; total on states.
    const std::set<PropertyId>& xi(const StateId& p) const;

    // Derived: all states making a actual.
    std::set<StateId> kappa(const PropertyId& a) const;

    bool is_experiment(const ContextId& e) const { return experiments.count(e) != 0; }

    ScoSystem sco_part() const;

    bool operator==(const ScopSystem&) const = default;
};

struct ValidationIssue {
    std::string kind;   // stable machine tag, e.g. "weak-sum-rule"
    std::string detail;
    bool operator==(const ValidationIssue&) const = default;
    auto operator<=>(const ValidationIssue&) const = default;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues; // sorted, deterministic
    bool ok() const { return issues.empty(); }
};

/*
 * Pure structural + semantic validation. Reports (never throws on):
 *  - duplicate ids and unknown-id references in mu/xi/experiments/products
 *  - weak sum rule: every couple (e,p) must reach some couple (f,q)
 *  - singleton sum rule: in an all-singleton system every (e,p) row must
 *    total exactly 1. Rows of product contexts and of product states are
 *    exempt (they overlay the alternatives of their factors), and rows of
 *    subset-labelled experiments are summed over inclusion-minimal
 *    outcomes only (coarser outcomes overlap the finer ones they contain).
 *  - experiment specs: outcome/transition alignment, row one-to-oneness,
 *    collapse consistency, spectrum coverage of subset labels
 */
ValidationReport validate(const ScopSystem& sys);

} // namespace scop
