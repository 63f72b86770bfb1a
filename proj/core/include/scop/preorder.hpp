#pragma once

#include "scop/system.hpp"

namespace scop {

// a < b  iff  kappa(a) is a subset of kappa(b).
bool property_implies(const ScopSystem& sys, const PropertyId& a, const PropertyId& b);

// p < q  iff  xi(q) is a subset of xi(p). The reversal is deliberate: a
// state lower in the order makes more properties actual.
bool state_implies(const ScopSystem& sys, const StateId& p, const StateId& q);

enum class Carrier { states, properties };

// Cached reflexive-transitive implication relation over one carrier.
// Immutable once built; queries are read-only.
class PreorderView {
public:
    static PreorderView states(const ScopSystem& sys);
    static PreorderView properties(const ScopSystem& sys);

    Carrier carrier() const { return carrier_; }
    const std::vector<std::string>& elements() const { return elements_; }

    bool implies(const std::string& x, const std::string& y) const; // x < y
    bool equivalent(const std::string& x, const std::string& y) const;

    // Classes of mutual implication, each sorted, ordered by least member.
    std::vector<std::vector<std::string>> equivalence_classes() const;

    // Greatest lower bounds / least upper bounds of a subset, as a (possibly
    // empty) equivalence class. The infimum of {} is the class of greatest
    // elements and dually, which on complete carriers are the maximal /
    // minimal classes.
    std::vector<std::string> infimum_set(const std::vector<std::string>& subset) const;
    std::vector<std::string> supremum_set(const std::vector<std::string>& subset) const;

    // Hasse edges of the quotient order (least class members as class names).
    std::vector<std::pair<std::string, std::string>> hasse_edges() const;

private:
    Carrier carrier_;
    std::vector<std::string> elements_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<bool>> leq_; // leq_[i][j] : element i < element j

    std::size_t at(const std::string& x) const;
};

// All properties c with kappa(c) = intersection of kappa(a_i); the members
// are mutually equivalent. Empty result means no meet property exists.
// The empty family yields the properties with kappa = Sigma.
std::set<PropertyId> meet_properties(const ScopSystem& sys, const std::set<PropertyId>& props);

// Dual: all states s with xi(s) = intersection of xi(p_j).
std::set<StateId> join_states(const ScopSystem& sys, const std::set<StateId>& states);

struct CompletenessReport {
    bool complete = false;
    // Minimal witnesses: the empty subset when Sigma (resp. L) has no
    // witness, otherwise offending pairs.
    std::vector<std::vector<std::string>> missing;
};

// Property completeness via closure of the set family {kappa(a)}: the
// family must contain Sigma (the empty meet) and be closed under pairwise
// intersection, which on a finite carrier is equivalent to arbitrary meets.
CompletenessReport check_property_completeness(const ScopSystem& sys);
CompletenessReport check_state_completeness(const ScopSystem& sys);

// s(p): representative (least id) of the meet of xi(p). Requires both
// completeness checks to pass; throws errc::not_complete otherwise.
PropertyId property_state(const ScopSystem& sys, const StateId& p);

// t(a): representative of the join of kappa(a). Same precondition.
StateId state_property(const ScopSystem& sys, const PropertyId& a);

struct ProperClassification {
    std::set<StateId> proper_states, improper_states;
    std::set<PropertyId> proper_properties, improper_properties;
};

// proper state: xi(p) nonempty; proper property: kappa(a) nonempty.
ProperClassification classify_proper(const ScopSystem& sys);

} // namespace scop
