#pragma once

#include "scop/morphism.hpp"
#include "scop/system.hpp"

#include <string>

namespace scop {

/*
 * System definition files (JSON, UTF-8):
 *
 * {
 *   "states":   [{"id": "s0", "destruction": false}, ...],
 *   "contexts": ["e0", ...],
 *   "properties": ["a0", ...],
 *   "xi": {"s0": ["a0", ...], ...},
 *   "mu": [{"f": "...", "q": "...", "e": "...", "p": "...",
 *           "prob": [["lo","hi"], ...]}, ...],
 *   "experiments": {"e0": {"context": "e0", "spectrum": [...] | null,
 *                          "outcomes": [{"f": ..., "q": ..., "p": ...,
 *                                        "label": "x" | "labelSubset": [...]}]}},
 *   "products": {"contexts": {"id": {"factors": [...], "weights": [...]}},
 *                "states":   {"id": {"factors": [...]}}}
 * }
 *
 * Rationals are "num/den", integer, or decimal strings (at most 12
 * fractional digits), parsed exactly. Serialization is canonical: stable
 * ordering, xi total over the states, explicit {0} mu entries dropped.
 */
std::string system_to_text(const ScopSystem& sys, bool pretty = false);
ScopSystem system_from_text(const std::string& text);

ScopSystem load_system(const std::string& path);
void save_system(const ScopSystem& sys, const std::string& path, bool pretty = false);

/*
 * Morphism files reference their endpoint systems by path (resolved
 * relative to the morphism file):
 *
 * {"source": "sub.json", "target": "big.json",
 *  "m": {...}, "l": {...}, "n": {...},
 *  "k": {"ctx": {"outcome text": "outcome text"}}}
 *
 * k entries are keyed by canonical outcome text and resolved against the
 * experiments' declared labels. SCO morphism files omit "n".
 */
ScopMorphism load_morphism(const std::string& path);
ScoMorphism load_sco_morphism(const std::string& path);

} // namespace scop
