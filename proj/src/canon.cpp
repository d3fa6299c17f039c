#include "rcdesign/canon.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rcd {

std::vector<int> induced_symbol_perm(const Grid& g, const std::vector<int>& row_perm,
                                     const std::vector<int>& col_perm) {
    std::vector<int> perm(g.num_symbols, -1);
    int next = 0;
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j) {
            int s = g.at(row_perm[i], col_perm[j]);
            if (s != kEmpty && perm[s] < 0) perm[s] = next++;
        }
    for (int s = 0; s < g.num_symbols; ++s)
        if (perm[s] < 0) perm[s] = next++;
    return perm;
}

namespace {

// Backtracking comparison of all images phi(T) against a target sequence.
// Row and column maps are built lazily: a column is committed to a slot
// (its position under pi_c) only when a comparison first needs it, which
// keeps the branching narrow. Labels follow the induced symbol permutation:
// the symbol of phi-row 0 in the column at slot z gets label z, and symbols
// outside phi-row 0 get fresh labels c, c+1, ... in order of appearance.
struct CanonScan {
    const Grid* g = nullptr;
    int r = 0, c = 0, v = 0;
    int full_rows = 0;    // number of phi rows compared at full width
    int tail_width = 0;   // extra cells of the fixed partial row (0 if none)
    bool whole_group = false;  // complete grid: all rows may move
    const std::int8_t* target = nullptr;
    bool count_ties = false;
    std::int64_t ties = 0;
    bool smaller = false;

    int sigma0 = -1;
    int sym_col[kMaxSymbols + 1];  // column of symbol in row sigma0, -1

    int slot_col[kMaxSymbols + 1];
    int col_slot[kMaxSymbols + 1];
    int label[kMaxSymbols + 1];
    int fresh_next = 0;
    int block_split = 0;  // columns/slots < block_split form their own block
    std::uint64_t free_slots[2];
    std::uint64_t free_cols[2];
    std::uint64_t used_rows = 0;

    // Rows/columns all of whose filled symbols occur once in the grid are
    // interchangeable: any two produce identical relabelled images. The scan
    // visits one representative and scales tie counts by the factorials.
    std::uint64_t floating_rows = 0, floating_cols = 0;

    int block_of(int x) const { return x < block_split ? 0 : 1; }

    void bind(int slot, int col) {
        slot_col[slot] = col;
        col_slot[col] = slot;
        free_slots[block_of(slot)] &= ~(std::uint64_t(1) << slot);
        free_cols[block_of(col)] &= ~(std::uint64_t(1) << col);
        int w = g->at(sigma0, col);
        label[w] = slot;
    }
    void unbind(int slot) {
        int col = slot_col[slot];
        int w = g->at(sigma0, col);
        label[w] = -1;
        free_slots[block_of(slot)] |= std::uint64_t(1) << slot;
        free_cols[block_of(col)] |= std::uint64_t(1) << col;
        slot_col[slot] = -1;
        col_slot[col] = -1;
    }

    void setup_floating() {
        int counts[kMaxSymbols + 1] = {0};
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (g->at(i, j) != kEmpty) ++counts[g->at(i, j)];
        floating_rows = floating_cols = 0;
        for (int i = 0; i < r; ++i) {
            bool all_once = true;
            bool any = false;
            for (int j = 0; j < c; ++j) {
                int s = g->at(i, j);
                if (s == kEmpty) continue;
                any = true;
                if (counts[s] != 1) all_once = false;
            }
            if (any && all_once) floating_rows |= std::uint64_t(1) << i;
        }
        for (int j = 0; j < c; ++j) {
            bool all_once = true;
            bool any = false;
            for (int i = 0; i < r; ++i) {
                int s = g->at(i, j);
                if (s == kEmpty) continue;
                any = true;
                if (counts[s] != 1) all_once = false;
            }
            if (any && all_once) floating_cols |= std::uint64_t(1) << j;
        }
    }

    void run() {
        setup_floating();
        int pool = whole_group ? r : full_rows;
        bool float_row_taken = false;
        for (int s0 = 0; s0 < pool && !done(); ++s0) {
            if ((floating_rows >> s0) & 1) {
                if (float_row_taken) continue;
                float_row_taken = true;
            }
            sigma0 = s0;
            std::fill(sym_col, sym_col + v, -1);
            for (int j = 0; j < c; ++j) sym_col[g->at(s0, j)] = j;
            std::fill(slot_col, slot_col + c, -1);
            std::fill(col_slot, col_slot + c, -1);
            std::fill(label, label + v, -1);
            fresh_next = c;
            free_slots[0] = sym_range(block_split);
            free_slots[1] = sym_range(c) & ~sym_range(block_split);
            free_cols[0] = free_slots[0];
            free_cols[1] = free_slots[1];
            used_rows = std::uint64_t(1) << s0;
            scan_row(1);
        }
    }

    bool done() const { return smaller && !count_ties; }

    int phi_row_limit() const { return full_rows + (tail_width > 0 ? 1 : 0); }

    // interchangeable rows/columns contribute a factorial of assignments each
    std::int64_t tie_multiplier() const {
        __int128 mult = 1;
        for (int k = 2; k <= sym_count(floating_rows); ++k) mult *= k;
        for (int k = 2; k <= sym_count(floating_cols & sym_range(block_split)); ++k) mult *= k;
        for (int k = 2; k <= sym_count(floating_cols & ~sym_range(block_split)); ++k) mult *= k;
        if (mult > __int128(INT64_MAX))
            throw std::overflow_error("autotopism group order exceeds 2^63");
        return std::int64_t(mult);
    }

    void scan_row(int t) {
        if (t == phi_row_limit()) {
            if (count_ties) ties += tie_multiplier();
            return;
        }
        if (t == full_rows) {
            // fixed partial row, compared on the leading tail_width slots
            scan_cells(t, full_rows, 0, tail_width);
            return;
        }
        int pool = whole_group ? r : full_rows;
        bool float_row_taken = false;
        for (int sigma = 0; sigma < pool && !done(); ++sigma) {
            if (used_rows & (std::uint64_t(1) << sigma)) continue;
            if ((floating_rows >> sigma) & 1) {
                if (float_row_taken) continue;
                float_row_taken = true;
            }
            used_rows |= std::uint64_t(1) << sigma;
            scan_cells(t, sigma, 0, c);
            used_rows &= ~(std::uint64_t(1) << sigma);
        }
    }

    void scan_cells(int t, int sigma, int y, int width) {
        if (done()) return;
        if (y == width) {
            scan_row(t + 1);
            return;
        }
        int tv = target[size_t(t) * c + y];
        if (slot_col[y] >= 0) {
            resolve(t, sigma, y, slot_col[y], width, tv);
        } else {
            std::uint64_t cand = free_cols[block_of(y)];
            // one representative among the interchangeable columns
            std::uint64_t floats = cand & floating_cols;
            if (floats) cand = (cand & ~floating_cols) | (floats & -floats);
            while (cand && !done()) {
                int x = sym_min(cand);
                cand &= cand - 1;
                bind(y, x);
                resolve(t, sigma, y, x, width, tv);
                unbind(y);
            }
        }
    }

    void resolve(int t, int sigma, int y, int x, int width, int tv) {
        int u = g->at(sigma, x);
        if (label[u] >= 0) {
            int val = label[u];
            if (val < tv) {
                smaller = true;
                return;
            }
            if (val == tv) scan_cells(t, sigma, y + 1, width);
            return;
        }
        int k = sym_col[u];
        if (k >= 0) {
            // u lives in phi-row 0 at column k; its label is k's future slot.
            std::uint64_t free_k = free_slots[block_of(k)];
            if (!count_ties && free_k && sym_min(free_k) < tv) {
                smaller = true;
                return;
            }
            if (tv < c && (free_k >> tv) & 1) {
                bind(tv, k);
                scan_cells(t, sigma, y + 1, width);
                unbind(tv);
            }
            return;
        }
        // fresh symbol: next unseen label
        int val = fresh_next;
        if (val < tv) {
            smaller = true;
            return;
        }
        if (val == tv) {
            label[u] = val;
            ++fresh_next;
            scan_cells(t, sigma, y + 1, width);
            --fresh_next;
            label[u] = -1;
        }
    }
};

std::vector<std::int8_t> relabel_sequence(const Grid& g) {
    std::vector<std::int8_t> out(g.cell.size(), kEmpty);
    int map[kMaxSymbols + 1];
    std::fill(map, map + g.num_symbols, -1);
    int next = 0;
    for (size_t p = 0; p < g.cell.size(); ++p) {
        int s = g.cell[p];
        if (s == kEmpty) continue;
        if (map[s] < 0) map[s] = next++;
        out[p] = std::int8_t(map[s]);
    }
    return out;
}

}  // namespace

bool is_canonical(const Grid& g, bool partial) {
    const int r = g.rows, c = g.cols;
    if (partial) {
        // filled cells must be a row-major prefix
        for (int p = 0; p < g.filled; ++p)
            if (g.cell[p] == kEmpty)
                throw std::invalid_argument("is_canonical: filled cells are not a prefix");
    }
    int filled = partial ? g.filled : r * c;
    if (!partial && !g.complete())
        throw std::invalid_argument("is_canonical: grid is not complete");
    if (filled == 0) return true;

    int q = filled / c;
    int s = filled % c;

    if (q == 0) {
        // only a prefix of the first row: canonical iff it reads 0,1,...,s-1
        for (int j = 0; j < s; ++j)
            if (g.at(0, j) != j) return false;
        return true;
    }
    // first compared row is full; its image always relabels to 0..c-1
    for (int j = 0; j < c; ++j)
        if (g.at(0, j) != j) return false;

    CanonScan scan;
    scan.g = &g;
    scan.r = r;
    scan.c = c;
    scan.v = g.num_symbols;
    scan.whole_group = !partial || (q == r && s == 0);
    scan.full_rows = scan.whole_group ? r : q;
    scan.tail_width = scan.whole_group ? 0 : s;
    scan.block_split = (scan.tail_width > 0) ? s : c;
    scan.target = g.cell.data();
    scan.count_ties = false;
    scan.run();
    return !scan.smaller;
}

std::int64_t autotopism_count(const Grid& g) {
    if (!g.complete()) throw std::invalid_argument("autotopism_count: grid is not complete");
    std::vector<std::int8_t> target = relabel_sequence(g);

    CanonScan scan;
    scan.g = &g;
    scan.r = g.rows;
    scan.c = g.cols;
    scan.v = g.num_symbols;
    scan.whole_group = true;
    scan.full_rows = g.rows;
    scan.tail_width = 0;
    scan.block_split = g.cols;
    scan.target = target.data();
    scan.count_ties = true;
    scan.run();
    return scan.ties;
}

}  // namespace rcd
