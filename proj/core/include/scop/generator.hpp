#pragma once

#include "scop/morphism.hpp"
#include "scop/system.hpp"

#include <cstdint>
#include <random>

namespace scop {

// Deterministic helper over std::mt19937_64; avoids std::uniform_int_distribution
// so that generated systems are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }
    bool coin() { return (next() & 1) != 0; }

private:
    std::mt19937_64 eng_;
};

enum class Profile { generic, d_classical, operational };

struct GeneratorSizes {
    std::size_t states = 6;     // free states (the operational profile adds its scaffolding)
    std::size_t contexts = 3;
    std::size_t properties = 5; // generic profile only
};

/*
 * Seeded random systems for property testing.
 *
 *  generic      all-singleton rows summing to 1, random xi, random context
 *               changes.
 *  d-classical  every couple has exactly one image with probability {1}.
 *  operational  first-kind experiments with per-experiment eigenstate
 *               pools and tagged outcomes, a "detector" experiment whose
 *               yes-property is the meet of the first two experiments'
 *               test properties, a bottom state making every property
 *               actual, and properties generated through sco_to_scop with
 *               one proper test subset plus the full set per experiment.
 *               The result is an operational entity; with the default two
 *               base experiments it is also property- and state-complete.
 */
ScopSystem generate_system(std::uint64_t seed, const GeneratorSizes& sizes, Profile profile);

// Deterministic ids used by the operational profile.
struct OperationalLayout {
    std::vector<ContextId> experiments; // base experiments
    ContextId detector;
    std::vector<PropertyId> test_properties; // (exp_i, {x0}) per base experiment
    PropertyId meet_property;                // (detector, {yes})
    StateId bottom;
};
OperationalLayout operational_layout(std::size_t n_contexts);

// Nested-kappa "chain" systems: complete by construction (property and
// state families are chains, hence intersection-closed with witnesses).
ScopSystem generate_complete_chain_system(std::uint64_t seed, std::size_t n_states,
                                          std::size_t n_properties);

/*
 * Quotient morphism fixture: the big system S' carries a clone of one
 * source-only state of the sub-entity S (equal rows, equal xi, never a
 * target), m merges the twins and l, n are identities. Valid by
 * construction; odd seeds build on complete chain systems so the meet/join
 * preservation clauses get exercised too.
 */
ScopMorphism generate_quotient_morphism(std::uint64_t seed);

// Same twin construction over a state context system with experiments;
// k maps are identities on outcome labels.
ScoMorphism generate_sco_quotient_morphism(std::uint64_t seed);

// One round of pair products over the original contexts and states:
// product experiments for context pairs, product states for state pairs.
ScopSystem close_under_pair_products(const ScopSystem& sys);

} // namespace scop
