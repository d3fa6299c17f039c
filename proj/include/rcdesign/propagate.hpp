#pragma once

#include "rcdesign/grid.hpp"
#include "rcdesign/params.hpp"
#include "rcdesign/profile.hpp"

#include <vector>

namespace rcd {

enum class RuleResult { Unchanged, Changed, Contradiction };

enum class PairKind { RR, CC, RC };

struct DimBounds {
    bool active = false;
    int lo = 0, hi = 0;
};

// The A/B estimate sets for rows, columns and cells. A sets only grow and
// B sets only shrink during propagation; soundness: for any completion
// satisfying the profile, A_R[i] is contained in the final row content,
// which is contained in B_R[i], and likewise for columns and cells.
struct EstimateState {
    int r = 0, c = 0, v = 0;
    std::vector<symset> A_R, B_R, A_C, B_C;
    std::vector<symset> B_cell;          // row-major; filled cell => singleton
    std::vector<symset> row_content, col_content;
    std::vector<std::int8_t> cells;      // copy of the grid cells
    symset V_may = 0, V_next = 0;
    DimBounds rc, rr, cc;
    int next_index = -1;                 // row-major index of the next cell, -1 if none
    bool contradiction_at_init = false;

    // dirty marks drive the round-robin sweeps: pair rules are revisited
    // only while one of their lines keeps changing
    std::uint64_t dirty_rows = 0, dirty_cols = 0;

    symset& bcell(int i, int j) { return B_cell[size_t(i) * c + j]; }
    const symset& bcell(int i, int j) const { return B_cell[size_t(i) * c + j]; }
    bool cell_empty(int i, int j) const { return cells[size_t(i) * c + j] == kEmpty; }
};

struct CellRef {
    int i = -1, j = -1;
    bool valid() const { return i >= 0; }
};

EstimateState init_estimates(const Grid& g, const Params& p, const ConstraintProfile& profile,
                             CellRef next);
// Buffer-reusing variant for hot paths.
void init_estimates_into(EstimateState& st, const Grid& g, const Params& p,
                         const ConstraintProfile& profile, CellRef next);

// Rules 1-2 of the completability procedure for one row (kind RR) or
// column (kind CC).
RuleResult rule_full_content(EstimateState& st, PairKind line_kind, int index);

// Rules 3-4: cells restrict lines and lines restrict cells.
RuleResult rule_cells(EstimateState& st);

// Rule 5: row-column intersection bounds around an empty cell.
RuleResult rule_rc_empty(EstimateState& st, int i, int j);

// Rule 6 (and its CC/RC analogues): lower bound on the intersection size
// of a pair of lines, checked against the profile's upper bound.
RuleResult rule_pair_lower(EstimateState& st, PairKind kind, int a, int b);

// Rule 7 analogues: upper bound on the intersection, checked against the
// profile's lower bound.
RuleResult rule_pair_upper(EstimateState& st, PairKind kind, int a, int b);

struct PropagateResult {
    bool completable = false;
    symset candidates = 0;  // options for the next cell when completable
};

// Applies all rules round-robin to a fixpoint. Never reports NonCompletable
// when a profile-satisfying completion of the prefix exists.
PropagateResult propagate_fixpoint(const Grid& g, const Params& p,
                                   const ConstraintProfile& profile, CellRef next,
                                   EstimateState* scratch = nullptr);

}  // namespace rcd
