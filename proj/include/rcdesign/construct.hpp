#pragma once

#include "rcdesign/grid.hpp"

#include <stdexcept>
#include <string>

namespace rcd {

struct ConstructError : std::domain_error {
    using std::domain_error::domain_error;
};

// Replace i occurrences of repeated symbols with fresh ones; input must be
// an NTA with v >= rc - c*min(r, c-1)/2 and 0 < i <= rc - v.
Grid replace_repeats(const Grid& g, int i);

// Append a column of r fresh symbols; same parameter regime as above.
Grid add_fresh_column(const Grid& g);

// Explicit construction for v >= rc - c/2: repeated symbol i sits in
// columns 2i-1 and 2i on the i-th pair of rows, fresh symbols fill the rest
// in row-major order.
Grid tail_construction(int r, int c, int v);

// Concatenate two NTAs with the same number of rows; the second grid's
// symbols are offset by the first grid's symbol count.
Grid concatenate(const Grid& g1, const Grid& g2);

// Delete column j from an (r x n, n) near Youden rectangle.
Grid delete_column(const Grid& g, int j);

// Addition table of Z_n.
Grid cyclic_latin(int n);

// Drop the last k <= 2 rows.
Grid drop_last_rows(const Grid& g, int k);

// Complete a (k x n, n)-NTA (a Latin rectangle) to a Latin square and
// return the (n-k) x n complement.
Grid complement_in_latin(const Grid& g);

// Fixture-backed store of 3-row base cases used by build_3xc.
class FixtureStore {
public:
    FixtureStore();                        // $RCDESIGN_DATA or compiled default
    explicit FixtureStore(std::string dir);
    Grid base_3xc(int c, int v) const;
    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
};

// A (3 x c, v)-NTA for any c >= 6 and c <= v <= 3c.
Grid build_3xc(int c, int v, const FixtureStore& store);
Grid build_3xc(int c, int v);

// The explicit 3-row family: even variant is the (3 x 2k, 3k)-NTA, odd
// variant the (3 x (2k+1), 3k+2)-NTA derived from it.
Grid three_row_explicit(int k, bool odd);

}  // namespace rcd
