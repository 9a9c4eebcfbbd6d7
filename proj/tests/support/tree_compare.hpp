#pragma once

#include <string>

#include "reskernel/driver.hpp"

namespace resk {
namespace testing {

// Walks two blow-up trees in parallel and checks that they perform the same
// centers in the same order, chart by chart, up to renaming.
//
// Fresh chart variables may differ between the runs, so a dictionary from
// base-tree names to other-tree names is grown as the walk descends: it
// starts as the identity on the base root ring and is extended whenever the
// paired charts rename a variable (blow-up substitutions and in-chart
// coordinate changes are matched record by record).
//
// When `embed_var` is nonempty the other tree is a run of the same ideal
// re-embedded with that extra variable. Each of its centers must then equal
// the translated base center together with the current strict transform of
// the embedding variable, and the patch that keeps the embedding variable
// must be inert (no further blow-ups). With `embed_var` empty the trees must
// match exactly up to the dictionary.
//
// On mismatch returns false and writes a human-readable reason to `why`.
bool center_trees_match(const BlowUpTree& base, const BlowUpTree& other,
                        const std::string& embed_var, std::string& why);

}  // namespace testing
}  // namespace resk
