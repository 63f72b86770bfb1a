#pragma once

#include "scop/generator.hpp"
#include "scop/system.hpp"

#include <set>
#include <vector>

namespace scop::test {

inline SubsetProb sp(const std::string& text) {
    // tiny builder: "a-b,c" -> [a,b] u {c}, components separated by commas
    std::vector<SubsetProb::Interval> raw;
    std::string current;
    const auto flush = [&] {
        const auto dash = current.find('~');
        if (dash == std::string::npos) {
            const auto x = rational_from_string(current);
            raw.push_back({x, x});
        } else {
            raw.push_back({rational_from_string(current.substr(0, dash)),
                           rational_from_string(current.substr(dash + 1))});
        }
        current.clear();
    };
    for (const char c : text) {
        if (c == ',') flush();
        else current += c;
    }
    flush();
    return SubsetProb(std::move(raw));
}

// Membership of the k/200 grid computed straight from a raw interval list,
// independent of canonicalization. Two canonical forms with /100 endpoints
// agree iff they agree on this grid.
inline std::set<int> grid_membership(const std::vector<SubsetProb::Interval>& raw) {
    std::set<int> out;
    for (int k = 0; k <= 200; ++k) {
        const Rational x(k, 200);
        for (const auto& iv : raw) {
            if (x >= iv.lo && x <= iv.hi) {
                out.insert(k);
                break;
            }
        }
    }
    return out;
}

// Two states, two contexts, two properties; all-singleton and valid.
// "move" swaps the states deterministically, "hold" keeps them.
inline ScopSystem tiny_system() {
    ScopSystem sys;
    sys.states = {"p0", "p1"};
    sys.contexts = {"hold", "move"};
    sys.properties = {"a0", "a1"};
    sys.xi_map["p0"] = {"a0"};
    sys.xi_map["p1"] = {"a0", "a1"};
    for (const auto& p : sys.states)
        sys.mu_table.emplace(MuKey{"hold", p, "hold", p}, SubsetProb::one());
    sys.mu_table.emplace(MuKey{"move", "p1", "move", "p0"}, SubsetProb::one());
    sys.mu_table.emplace(MuKey{"move", "p0", "move", "p1"}, SubsetProb::one());
    return sys;
}

} // namespace scop::test
