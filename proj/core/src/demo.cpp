#include "scop/demo.hpp"

#include "scop/error.hpp"

#include <algorithm>
#include <cstdio>

namespace scop {

namespace {

std::string block_name(std::size_t i) { return "B" + std::to_string(i); }

std::string region_suffix(const std::set<std::string>& blocks) {
    std::string out;
    bool first = true;
    for (const auto& b : blocks) {
        if (!first) out += "+";
        out += b;
        first = false;
    }
    return out;
}

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

} // namespace

QuantumDemo build_quantum_scop(const WaveFunction& psi, const std::vector<Region>& partition,
                               bool include_destruction) {
    if (partition.empty()) raise(errc::partition_invalid, "partition is empty");
    if (partition.size() > 16) raise(errc::too_many_blocks, "at most 16 blocks");
    {
        std::vector<bool> covered(psi.grid().n_cells, false);
        for (const auto& block : partition) {
            if (block.empty()) raise(errc::partition_invalid, "empty partition block");
            for (const auto i : block) {
                if (i >= psi.grid().n_cells)
                    raise(errc::partition_invalid, "block cell outside the grid");
                if (covered[i]) raise(errc::partition_invalid, "blocks overlap");
                covered[i] = true;
            }
        }
        for (const auto c : covered)
            if (!c) raise(errc::partition_invalid, "blocks do not cover the grid");
    }

    QuantumDemo demo;
    demo.experiment = "position";

    // Exact per-block masses; ratios of these are the mu values, so the
    // cascade identities hold without any floating-point slack.
    std::vector<Rational> block_mass(partition.size());
    std::set<std::string> spectrum;
    std::set<std::string> support;
    for (std::size_t b = 0; b < partition.size(); ++b) {
        const auto name = block_name(b);
        spectrum.insert(name);
        demo.blocks[name] = partition[b];
        for (const auto i : partition[b]) block_mass[b] += rational_from_double(psi.cell_mass(i));
        if (block_mass[b] > 0) support.insert(name);
    }
    if (support.empty()) raise(errc::partition_invalid, "wave function carries no mass");

    const auto mass_of = [&](const std::set<std::string>& blocks) {
        Rational total = 0;
        for (std::size_t b = 0; b < partition.size(); ++b)
            if (blocks.count(block_name(b))) total += block_mass[b];
        return total;
    };
    const auto state_id = [&](const std::set<std::string>& blocks) {
        return "psi:" + region_suffix(blocks);
    };

    // Outcome regions: the nonempty unions of supporting blocks.
    std::vector<std::string> support_list(support.begin(), support.end());
    std::vector<std::set<std::string>> regions;
    for (std::size_t mask = 1; mask < (std::size_t{1} << support_list.size()); ++mask) {
        std::set<std::string> region;
        for (std::size_t bit = 0; bit < support_list.size(); ++bit)
            if (mask & (std::size_t{1} << bit)) region.insert(support_list[bit]);
        regions.push_back(std::move(region));
    }
    std::sort(regions.begin(), regions.end());

    ScopSystem sys;
    sys.contexts.push_back(demo.experiment);
    ExperimentSpec spec;
    spec.context = demo.experiment;
    spec.spectrum = spectrum;

    for (const auto& region : regions) {
        const auto id = state_id(region);
        sys.states.push_back(id);
        sys.xi_map[id] = {};
        demo.state_regions[id] = region;
    }
    demo.initial_state = state_id(support);

    // Localization properties, one per outcome region; a state is
    // localized in V exactly when its support sits inside V.
    for (const auto& region : regions) {
        const PropertyId prop = "loc:" + region_suffix(region);
        sys.properties.push_back(prop);
        for (const auto& other : regions)
            if (std::includes(region.begin(), region.end(), other.begin(), other.end()))
                sys.xi_map[state_id(other)].insert(prop);
    }

    // mu(e, psi_W, e, psi_U) = mass(W) / mass(U) for W inside U; the
    // outcome of that transition is the subset W.
    for (const auto& source : regions) {
        const Rational denom = mass_of(source);
        for (const auto& target : regions) {
            if (!std::includes(source.begin(), source.end(), target.begin(), target.end()))
                continue;
            const MuKey key{demo.experiment, state_id(target), demo.experiment, state_id(source)};
            sys.mu_table.emplace(key, SubsetProb::point(mass_of(target) / denom));
            spec.outcomes.emplace(
                ExperimentSpec::TransitionKey{demo.experiment, state_id(target), state_id(source)},
                OutcomeLabel::subset(target));
        }
    }

    if (include_destruction) {
        const StateId dead = "destroyed";
        sys.states.push_back(dead);
        sys.destruction_state = dead;
        sys.xi_map[dead] = {};
        sys.mu_table.emplace(MuKey{demo.experiment, dead, demo.experiment, dead},
                             SubsetProb::one());
        spec.outcomes.emplace(ExperimentSpec::TransitionKey{demo.experiment, dead, dead},
                              OutcomeLabel::plain("destroyed"));
    }

    sys.experiments[demo.experiment] = std::move(spec);
    demo.system = std::move(sys);
    return demo;
}

ClassicalDemo build_classical_scop(const std::vector<std::pair<double, double>>& positions) {
    if (positions.empty()) raise(errc::partition_invalid, "no particle states given");

    ClassicalDemo demo;
    demo.experiment = "picture";

    ScopSystem sys;
    sys.contexts.push_back(demo.experiment);
    ExperimentSpec spec;
    spec.context = demo.experiment;

    std::set<std::string> seen_positions;
    for (const auto& [u, mv] : positions) {
        const std::string u_text = format_double(u);
        if (!seen_positions.insert(u_text).second)
            raise(errc::duplicate_position, "two particles share position " + u_text);
        const StateId id = "(" + u_text + "," + format_double(mv) + ")";
        sys.states.push_back(id);
        sys.xi_map[id] = {};
        demo.states.push_back(id);
        // An observation: no change of state, outcome is the position.
        sys.mu_table.emplace(MuKey{demo.experiment, id, demo.experiment, id}, SubsetProb::one());
        spec.outcomes.emplace(ExperimentSpec::TransitionKey{demo.experiment, id, id},
                              OutcomeLabel::plain(u_text));
    }

    sys.experiments[demo.experiment] = std::move(spec);
    demo.system = std::move(sys);
    return demo;
}

} // namespace scop
