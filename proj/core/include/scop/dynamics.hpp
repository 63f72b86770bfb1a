#pragma once

#include "scop/system.hpp"

#include <cstdint>

namespace scop {

using Couple = std::pair<ContextId, StateId>; // (context, state)

// R(e,p): states reachable from p under e. Nonempty whenever the weak sum
// rule holds.
std::set<StateId> range_of_context_for_state(const ScopSystem& sys, const ContextId& e,
                                             const StateId& p);

// R(e) = union over p of R(e,p).
std::set<StateId> range_of_context(const ScopSystem& sys, const ContextId& e);

// R(p,e): contexts e can change to under the influence of p.
std::set<ContextId> range_of_state_for_context(const ScopSystem& sys, const StateId& p,
                                               const ContextId& e);

// R(p) = union over e of R(p,e).
std::set<ContextId> range_of_state(const ScopSystem& sys, const StateId& p);

struct CoupleReport {
    bool context_deterministic = false; // |R(e,p)| = 1
    bool state_deterministic = false;   // |R(p,e)| = 1
    bool deterministic = false;         // both; then image is set
    std::optional<Couple> image;
    bool eigenstate = false;   // R(e,p) = {p}
    bool eigencontext = false; // R(p,e) = {e}
};

struct DeterminismReport {
    std::map<ContextId, bool> context_deterministic; // deterministic to every state
    std::map<StateId, bool> state_deterministic;     // deterministic to every context
    std::map<Couple, CoupleReport> couples;
    bool d_classical = false; // all states and all contexts deterministic
};

DeterminismReport classify(const ScopSystem& sys);

// Extends the system with the product context Pi_i e_i: its mu rows are
// the subset unions of the factor rows. Factor list (and optional hidden
// choice weights) recorded as provenance. No experiment spec is attached;
// see product_experiment for that.
ScopSystem product_context(const ScopSystem& sys, const std::vector<ContextId>& factors,
                           const ContextId& new_id,
                           std::optional<std::vector<Rational>> weights = std::nullopt);

// Extends the system with the product state Pi_i p_i: mu rows are unions
// of the factor rows, xi is the intersection of the factors' xi (the
// unique choice making product states join states), and experiment
// outcome maps are extended accordingly.
ScopSystem product_state(const ScopSystem& sys, const std::vector<StateId>& factors,
                         const StateId& new_id);

// Transitions out of each couple, with their nonzero probabilities.
struct CoupleTransitionGraph {
    std::map<Couple, std::vector<std::pair<Couple, SubsetProb>>> edges;
};

CoupleTransitionGraph build_transition_graph(const ScopSystem& sys);

/*
 * Seeded pseudo-random walk on the couple transition graph, starting at
 * `start` and taking `steps` transitions; the returned list includes the
 * start couple. At a product context the hidden factor is drawn first
 * (uniformly, or by the declared weights), recursively for products of
 * products, and then the factor's row is sampled. Non-product rows must be
 * singleton-valued (errc::non_singleton_probability otherwise). The walk
 * is a pure function of (sys, start, steps, seed).
 */
std::vector<Couple> sample_trajectory(const ScopSystem& sys, const Couple& start,
                                      std::size_t steps, std::uint64_t seed);

} // namespace scop
