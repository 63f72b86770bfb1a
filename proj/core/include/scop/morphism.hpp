#pragma once

#include "scop/system.hpp"

namespace scop {

/*
 * A morphism between two systems: `source` plays the sub-entity S and
 * `target` the big entity S'. The state map runs against the other two:
 *
 *   m : states(target) -> states(source)
 *   l : contexts(source) -> contexts(target)
 *   n : properties(source) -> properties(target)
 *
 * and for every source experiment e, k[e] maps outcome labels of e to
 * outcome labels of l(e) such that each restriction
 * O(e, m(p')) -> O(l(e), p') is a bijection.
 */
struct ScopMorphism {
    ScopSystem source;
    ScopSystem target;
    std::map<StateId, StateId> m;
    std::map<ContextId, ContextId> l;
    std::map<PropertyId, PropertyId> n;
    std::map<ContextId, std::map<OutcomeLabel, OutcomeLabel>> k;

    bool operator==(const ScopMorphism&) const = default;
};

struct MorphismViolation {
    std::string kind; // "covariance-mu" | "covariance-xi" | "experiment" | ...
    std::string detail;
    bool operator==(const MorphismViolation&) const = default;
    auto operator<=>(const MorphismViolation&) const = default;
};

struct MorphismReport {
    std::vector<MorphismViolation> violations; // sorted
    bool ok() const { return violations.empty(); }
};

// Exhaustive check of both covariance formulas
//   mu(f, m(q'), e, m(p')) = mu'(l(f), q', l(e), p')
//   a in xi(m(p'))        <=> n(a) in xi'(p')
// plus the experiment condition. Throws errc::domain_mismatch when a map
// misses part of its domain or hits an unknown id.
MorphismReport verify(const ScopMorphism& mor);

ScopMorphism identity(const ScopSystem& sys);

// compose(g, h): h applied first. Requires h.target == g.source
// (errc::not_composable). Maps compose along their own orientations:
// state maps contravariantly, context/property maps covariantly.
ScopMorphism compose(const ScopMorphism& g, const ScopMorphism& h);

struct PreservationReport {
    // p' < q' <=> m(p') < m(q') and a < b <=> n(a) < n(b), all pairs.
    std::vector<std::string> order_violations;
    // n maps meets to meets and m maps joins to joins, up to equivalence;
    // only checked when both systems are property- and state-complete.
    bool meet_join_checked = false;
    std::vector<std::string> meet_join_violations;
    bool ok() const { return order_violations.empty() && meet_join_violations.empty(); }
};

// Consequences of covariance, provable from the laws verify() checks; a
// failure here indicates a bug, which makes this a regression oracle.
// With require_complete, throws errc::not_complete when either system
// fails a completeness check instead of skipping the meet/join clauses.
PreservationReport check_preservation(const ScopMorphism& mor, bool require_complete = false);

// Spot-check fallback for systems too large for the exhaustive sweep:
// `samples` random covariance tuples per formula, seeded. A clean report
// means no violation was found, not that none exists.
MorphismReport verify_sampled(const ScopMorphism& mor, std::size_t samples, std::uint64_t seed);

// The property-free variant: (m, l) between state context systems, with
// the same covariance formula and outcome bijections.
struct ScoMorphism {
    ScoSystem source;
    ScoSystem target;
    std::map<StateId, StateId> m;
    std::map<ContextId, ContextId> l;
    std::map<ContextId, std::map<OutcomeLabel, OutcomeLabel>> k;
};

MorphismReport verify_sco(const ScoMorphism& mor);

// Builds the related state context property systems of both sides (full
// power sets, errc::cap_exceeded guarded) and lifts (m, l) to (m, l, n)
// with n(e, A) = (l(e), k[e](A)). Throws errc::covariance_violation when
// the SCO morphism does not verify.
ScopMorphism lift(const ScoMorphism& mor, std::size_t cap);

} // namespace scop
