#pragma once

#include "rcdesign/grid.hpp"
#include "rcdesign/profile.hpp"
#include "rcdesign/search.hpp"

namespace rcd {

// Independent brute-force enumerator for tiny instances: exhaustive DFS with
// only the binary constraint and replication caps, classification of every
// completion, and deduplication by full-group lexicographic minimality. No
// propagation, no orderly pruning; shares only the Grid type and classify
// with the main engine.
EnumerationReport naive_enumerate(int r, int c, int v, const ConstraintProfile& profile,
                                  bool override_guard = false);

// Canonical representative by exhaustive search over all row/column
// permutations with the induced symbol permutation.
Grid min_over_group(const Grid& g);

}  // namespace rcd
