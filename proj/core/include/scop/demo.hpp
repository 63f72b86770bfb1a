#pragma once

#include "scop/system.hpp"
#include "scop/wavefunction.hpp"

namespace scop {

struct QuantumDemo {
    ScopSystem system;
    ContextId experiment;           // the position measurement
    StateId initial_state;          // the prepared wave function
    std::map<std::string, Region> blocks;                 // block name -> cells
    std::map<StateId, std::set<std::string>> state_regions; // state -> supporting blocks
};

/*
 * Discretized position measurement as a finite system. The partition
 * blocks form the spectrum E; the outcomes are the nonzero unions of
 * blocks; each outcome W has one collapsed state (the initial state is
 * identified with the collapse onto its own support). Transition
 * probabilities are ratios of exact per-block masses (cell masses
 * converted dyadically from the doubles), so the cascade laws hold in
 * exact rational arithmetic. The optional destruction state is inert
 * under the measurement and carries a plain "destroyed" outcome.
 *
 * Throws errc::partition_invalid (blocks must partition the grid) and
 * errc::too_many_blocks (more than 16).
 */
QuantumDemo build_quantum_scop(const WaveFunction& psi, const std::vector<Region>& partition,
                               bool include_destruction = false);

struct ClassicalDemo {
    ScopSystem system;
    ContextId experiment; // the picture being taken
    std::vector<StateId> states;
};

// A motionless point particle on a line, observed by taking a picture:
// every state (u, mv) is a deterministic eigenstate of the observation
// and the outcome read off is u. Throws errc::duplicate_position.
ClassicalDemo build_classical_scop(const std::vector<std::pair<double, double>>& positions);

} // namespace scop
