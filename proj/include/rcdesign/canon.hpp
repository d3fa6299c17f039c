#pragma once

#include "rcdesign/grid.hpp"

#include <cstdint>
#include <vector>

namespace rcd {

// Symbol permutation that makes symbols appear for the first time in
// increasing order when the grid is read row-major after applying the given
// row/column permutations. perm[old_symbol] = new_symbol; symbols that do
// not occur are relabelled after the occurring ones, in increasing order.
std::vector<int> induced_symbol_perm(const Grid& g, const std::vector<int>& row_perm,
                                     const std::vector<int>& col_perm);

// Lexicographic canonicity under the acting isotopism group: the full group
// for complete grids, and for a row-major prefix the subgroup of row/column
// permutations mapping the filled cells onto themselves.
bool is_canonical(const Grid& g, bool partial);

// Size of the autotopism group of a complete binary grid.
std::int64_t autotopism_count(const Grid& g);

}  // namespace rcd
