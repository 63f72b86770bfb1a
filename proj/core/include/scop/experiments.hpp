#pragma once

#include "scop/system.hpp"

namespace scop {

// O(e,p): outcomes of experiment e possible in state p.
// Throws errc::not_an_experiment if e has no spec.
std::set<OutcomeLabel> outcomes(const ScopSystem& sys, const ContextId& e, const StateId& p);

// O(e) = union over p of O(e,p).
std::set<OutcomeLabel> outcomes_total(const ScopSystem& sys, const ContextId& e);

// q = P_x^e(p), the unique state reached from p when e gives outcome x.
// The probability of that outcome is mu(e, q, e, p).
// Throws errc::outcome_not_possible when x is not in O(e,p).
StateId collapse(const ScopSystem& sys, const ContextId& e, const StateId& p,
                 const OutcomeLabel& x);

/*
 * Applies a subset outcome y of O(e) to a state p it may only partially
 * overlap: the acting row outcome is y restricted to the union of p's row
 * labels. Returns the collapsed state, or nullopt when the restriction is
 * not an outcome of the row (the outcome y then has probability {0} at p).
 * For y in O(e,p) this coincides with collapse.
 */
std::optional<StateId> effective_collapse(const ScopSystem& sys, const ContextId& e,
                                          const StateId& p, const OutcomeLabel& y);

/*
 * Canonical test search: e tests property a iff some A with
 * a in xi(p) <=> O(e,p) subset-of A exists. It suffices to try
 * A* = union of O(e,p) over p in kappa(a): any valid A contains A*, and
 * A* valid follows (a failing negative state under A* would fail under
 * every larger A too). Returns A* or nullopt.
 */
std::optional<std::set<OutcomeLabel>> find_test(const ScopSystem& sys, const PropertyId& a,
                                                const ContextId& e);

struct OperationalityReport {
    bool operational = false;
    // One test per property (first experiment in id order that works).
    std::map<PropertyId, std::pair<ContextId, std::set<OutcomeLabel>>> witnesses;
    std::vector<std::string> failures;
};

// Operational entity: every property has a test, and every pair of
// properties has tests whose total outcome sets are disjoint. The pairwise
// clause is read literally, so it can only be met across distinct
// experiments with disjoint outcome labelling.
OperationalityReport is_operational_entity(const ScopSystem& sys);

// Context of the first kind: every transition (e,p) -> (f,q) lands on a
// strict eigenstate of f (R(f,q) = {q}).
bool is_first_kind_context(const ScopSystem& sys, const ContextId& e);

// Experiment of the first kind: collapsed states are eigenstates of e in
// the re-measurement sense, mu(e, P_x(p), e, P_x(p)) = {1} for every p and
// x in O(e,p). (Coarse outcomes of a cascade leave further refinement
// possible, so this is deliberately weaker than the strict context check.)
bool is_first_kind_experiment(const ScopSystem& sys, const ContextId& e);

struct CascadeViolation {
    std::string law; // "collapse-stability" | "idempotence" | "multiplication" | "complement"
    StateId p;
    OutcomeLabel x;
    OutcomeLabel y;
    std::string detail;
};

struct CascadeReport {
    ContextId context;
    std::set<std::string> spectrum;
    std::size_t checked_instances = 0;
    std::vector<CascadeViolation> violations;
    bool ok() const { return violations.empty(); }
};

/*
 * Verifies the cascade laws of an experiment whose outcomes are subsets of
 * its spectrum E. For every state p and subset outcomes x, y of O(e) with
 * x contained in y:
 *   (1) P_y(P_x(p)) = P_x(p)
 *   (2) mu(e, P_x(p), e, P_x(p)) = {1}
 *   (3) mu(e, P_x(p), e, p) = mu(e, P_x(p), e, P_y(p)) * mu(e, P_y(p), e, p)
 * and for z, t in O(e) partitioning E (z u t = E, z n t = empty), every p:
 *   (4) mu(e, P_z(p), e, p) = 1 - mu(e, P_t(p), e, p)
 * Collapses are resolved with effective_collapse; an outcome inapplicable
 * at p contributes {0}, and instances where no term denotes are skipped.
 * Throws errc::no_spectrum when the spec has no spectrum or no subset
 * outcomes.
 */
CascadeReport is_cascade_experiment(const ScopSystem& sys, const ContextId& e);

// Product context of experiment factors with pairwise disjoint total
// outcome sets, plus the merged outcome map, so that
// O(Pi e_i, p) = union_i O(e_i, p). Throws errc::outcome_clash on overlap.
ScopSystem product_experiment(const ScopSystem& sys, const std::vector<ContextId>& factors,
                              const ContextId& new_id,
                              std::optional<std::vector<Rational>> weights = std::nullopt);

// Property id used for the generated property (e, A).
PropertyId sco_property_id(const ContextId& e, const std::set<OutcomeLabel>& subset);

/*
 * Builds the state context property system related to a state context
 * system: one property (e, A) per experiment e and subset A of O(e), with
 * A in xi(p) <=> O(e,p) subset-of A. Property ids are tagged with their
 * experiment, which keeps total outcome sets disjoint across experiments.
 * Throws errc::cap_exceeded when the generated property count would pass
 * `cap`; supply explicit per-experiment subset lists to stay below it.
 */
ScopSystem sco_to_scop(const ScoSystem& sco, std::size_t cap);
ScopSystem sco_to_scop(const ScoSystem& sco,
                       const std::map<ContextId, std::vector<std::set<OutcomeLabel>>>& subsets);

} // namespace scop
