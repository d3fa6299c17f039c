#include "rcdesign/construct.hpp"

#include "rcdesign/params.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace rcd {

namespace {

ClassReport require_nta(const Grid& g, const char* what) {
    ClassReport rep = classify(g);
    if (!rep.nta) throw ConstructError(std::string(what) + ": input is not a near triple array");
    return rep;
}

void validate_nta_output(const Grid& g, const char* what) {
    ClassReport rep = classify(g);
    if (!rep.nta)
        throw std::logic_error(std::string(what) +
                               ": construction produced a non-NTA array (internal error)");
}

// v >= rc - c*min(r, c-1)/2, checked in integers
bool small_lambda_regime(int r, int c, int v) {
    return 2L * v >= 2L * r * c - long(c) * std::min(r, c - 1);
}

}  // namespace

Grid replace_repeats(const Grid& g, int iters) {
    const int r = g.rows, c = g.cols;
    if (!small_lambda_regime(r, c, g.num_symbols))
        throw ConstructError("replace_repeats: requires v >= rc - c*min(r,c-1)/2");
    if (iters <= 0 || iters > r * c - g.num_symbols)
        throw ConstructError("replace_repeats: need 0 < i <= rc - v");
    require_nta(g, "replace_repeats");

    Grid out = g;
    for (int step = 0; step < iters; ++step) {
        int v = out.num_symbols;
        Params p = derive(r, c, v);

        std::vector<symset> rows(r, 0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) rows[i] |= sym_bit(out.at(i, j));

        // lexicographically first pair of rows meeting in lambda_rr^+ symbols
        int pi = -1, pj = -1;
        for (int i = 0; i < r && pi < 0; ++i)
            for (int j = i + 1; j < r; ++j)
                if (sym_count(rows[i] & rows[j]) == p.lrr_hi) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0)
            throw ConstructError("replace_repeats: no row pair attains lambda_rr^+");
        symset common = rows[pi] & rows[pj];
        if (!common) throw ConstructError("replace_repeats: chosen rows share no symbol");
        int sym = sym_min(common);

        // replace the occurrence in the later row with a fresh symbol
        Grid next(r, c, v + 1);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) next.set(i, j, out.at(i, j));
        for (int j = 0; j < c; ++j)
            if (next.at(pj, j) == sym) next.set(pj, j, v);
        out = next;
    }
    validate_nta_output(out, "replace_repeats");
    return out;
}

Grid add_fresh_column(const Grid& g) {
    const int r = g.rows, c = g.cols, v = g.num_symbols;
    if (!small_lambda_regime(r, c, v))
        throw ConstructError("add_fresh_column: requires v >= rc - c*min(r,c-1)/2");
    require_nta(g, "add_fresh_column");

    Grid out(r, c + 1, v + r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) out.set(i, j, g.at(i, j));
    for (int i = 0; i < r; ++i) out.set(i, c, v + i);
    validate_nta_output(out, "add_fresh_column");
    return out;
}

Grid tail_construction(int r, int c, int v) {
    if (!params_in_domain(r, c, v))
        throw ConstructError("tail_construction: parameters out of domain");
    int t = r * c - v;
    if (2 * t > c) throw ConstructError("tail_construction: requires v >= rc - c/2");

    Grid out(r, c, v);
    // pairs of rows in lexicographic order, cycled
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) pairs.emplace_back(i, j);
    for (int i = 0; i < t; ++i) {
        auto [j1, j2] = pairs[i % pairs.size()];
        out.set(j1, 2 * i, i);
        out.set(j2, 2 * i + 1, i);
    }
    int fresh = t;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (out.at(i, j) == kEmpty) out.set(i, j, fresh++);
    validate_nta_output(out, "tail_construction");
    return out;
}

Grid concatenate(const Grid& g1, const Grid& g2) {
    if (g1.rows != g2.rows) throw ConstructError("concatenate: row counts differ");
    const int r = g1.rows;
    require_nta(g1, "concatenate");
    require_nta(g2, "concatenate");
    Params p1 = derive(r, g1.cols, g1.num_symbols);
    Params p2 = derive(r, g2.cols, g2.num_symbols);
    if (std::max(p1.e_hi, p2.e_hi) - std::min(p1.e_lo, p2.e_lo) > 1)
        throw ConstructError("concatenate: replication ranges span more than two values");
    if (!p1.lambda_rr.is_integer() && !p2.lambda_rr.is_integer())
        throw ConstructError("concatenate: neither input has integer lambda_rr");
    if (p1.lambda_cc > Rational(1) || p2.lambda_cc > Rational(1))
        throw ConstructError("concatenate: requires lambda_cc <= 1 for both inputs");

    Grid out(r, g1.cols + g2.cols, g1.num_symbols + g2.num_symbols);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < g1.cols; ++j) out.set(i, j, g1.at(i, j));
        for (int j = 0; j < g2.cols; ++j)
            out.set(i, g1.cols + j, g2.at(i, j) + g1.num_symbols);
    }
    validate_nta_output(out, "concatenate");
    return out;
}

Grid delete_column(const Grid& g, int j) {
    if (g.cols != g.num_symbols)
        throw ConstructError("delete_column: input is not an (r x n, n) array");
    if (j < 0 || j >= g.cols) throw ConstructError("delete_column: column index out of range");
    require_nta(g, "delete_column");

    Grid out(g.rows, g.cols - 1, g.num_symbols);
    for (int i = 0; i < g.rows; ++i) {
        int jj = 0;
        for (int j2 = 0; j2 < g.cols; ++j2) {
            if (j2 == j) continue;
            out.set(i, jj++, g.at(i, j2));
        }
    }
    validate_nta_output(out, "delete_column");
    return out;
}

Grid cyclic_latin(int n) {
    if (n < 1 || n > kMaxSymbols) throw ConstructError("cyclic_latin: n out of range");
    Grid out(n, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.set(i, j, (i + j) % n);
    return out;
}

Grid drop_last_rows(const Grid& g, int k) {
    if (k < 0 || k > 2) throw ConstructError("drop_last_rows: only k <= 2 is supported");
    if (g.rows - k < 1) throw ConstructError("drop_last_rows: too few rows");
    Grid out(g.rows - k, g.cols, g.num_symbols);
    for (int i = 0; i < out.rows; ++i)
        for (int j = 0; j < out.cols; ++j) out.set(i, j, g.at(i, j));
    return out;
}

Grid complement_in_latin(const Grid& g) {
    const int k = g.rows, n = g.cols;
    if (g.num_symbols != n) throw ConstructError("complement_in_latin: need v = c = n");
    if (k >= n) throw ConstructError("complement_in_latin: need fewer rows than columns");
    require_nta(g, "complement_in_latin");

    // column -> symbols still missing from it
    std::vector<symset> missing(n);
    for (int j = 0; j < n; ++j) {
        symset used = 0;
        for (int i = 0; i < k; ++i) used |= sym_bit(g.at(i, j));
        missing[j] = sym_range(n) & ~used;
    }

    Grid comp(n - k, n, n);
    std::vector<int> match_col(n);  // symbol -> column in the current row
    std::vector<bool> visited(n);

    // Kuhn's augmenting path on the column/symbol availability graph.
    auto augment = [&](auto&& self, int col, const std::vector<symset>& avail) -> bool {
        for (int s = 0; s < n; ++s) {
            if (!sym_in(avail[col], s) || visited[s]) continue;
            visited[s] = true;
            if (match_col[s] < 0 || self(self, match_col[s], avail)) {
                match_col[s] = col;
                return true;
            }
        }
        return false;
    };
    auto has_perfect_matching = [&](const std::vector<symset>& avail) {
        std::fill(match_col.begin(), match_col.end(), -1);
        for (int col = 0; col < n; ++col) {
            std::fill(visited.begin(), visited.end(), false);
            if (!augment(augment, col, avail)) return false;
        }
        return true;
    };

    for (int row = 0; row < n - k; ++row) {
        // lexicographically smallest completion of this row
        std::vector<symset> avail = missing;
        std::vector<int> chosen(n, -1);
        for (int col = 0; col < n; ++col) {
            symset options = avail[col];
            bool placed = false;
            for (symset rest = options; rest;) {
                int s = sym_min(rest);
                rest &= rest - 1;
                std::vector<symset> trial = avail;
                trial[col] = sym_bit(s);
                for (int col2 = col + 1; col2 < n; ++col2) trial[col2] &= ~sym_bit(s);
                if (has_perfect_matching(trial)) {
                    chosen[col] = s;
                    avail = trial;
                    placed = true;
                    break;
                }
            }
            if (!placed)
                throw std::logic_error("complement_in_latin: completion failed (internal error)");
        }
        for (int col = 0; col < n; ++col) {
            comp.set(row, col, chosen[col]);
            missing[col] &= ~sym_bit(chosen[col]);
        }
    }
    validate_nta_output(comp, "complement_in_latin");
    return comp;
}

FixtureStore::FixtureStore() {
    const char* env = std::getenv("RCDESIGN_DATA");
    if (env && *env) {
        dir_ = env;
    } else {
#ifdef RCDESIGN_DEFAULT_DATA_DIR
        dir_ = RCDESIGN_DEFAULT_DATA_DIR;
#else
        dir_ = "data";
#endif
    }
}

FixtureStore::FixtureStore(std::string dir) : dir_(std::move(dir)) {}

Grid FixtureStore::base_3xc(int c, int v) const {
    std::ostringstream path;
    path << dir_ << "/3xc/3x" << (c < 10 ? "0" : "") << c << "_v" << (v < 10 ? "0" : "") << v
         << ".txt";
    std::vector<Grid> gs = read_grids_from_file(path.str());
    if (gs.size() != 1)
        throw ConstructError("fixture " + path.str() + " must contain exactly one array");
    return gs[0];
}

Grid build_3xc(int c, int v, const FixtureStore& store) {
    if (c < 6 || v < c || v > 3 * c)
        throw ConstructError("build_3xc: requires c >= 6 and c <= v <= 3c");
    if (c <= 13) {
        Grid g = store.base_3xc(c, v);
        validate_nta_output(g, "build_3xc base");
        return g;
    }
    if (2 * v >= 5 * c)  // v >= 3c - c/2
        return tail_construction(3, c, v);
    if (v >= c + 4) {
        // The (3x6,9) block works whenever the remainder stays in range;
        // near the top of the concatenation range it does not, and the
        // (3x6,10) block takes over.
        if (v - 9 <= 3 * (c - 6)) return concatenate(store.base_3xc(6, 9), build_3xc(c - 6, v - 9, store));
        return concatenate(store.base_3xc(6, 10), build_3xc(c - 6, v - 10, store));
    }
    return concatenate(store.base_3xc(7, 7), build_3xc(c - 7, v - 7, store));
}

Grid build_3xc(int c, int v) { return build_3xc(c, v, FixtureStore()); }

Grid three_row_explicit(int k, bool odd) {
    if (k < 3) throw ConstructError("three_row_explicit: requires k >= 3");
    Grid even(3, 2 * k, 3 * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < 3; ++b) {
            int sym = 3 * a + b;
            even.set(b, a, sym);
            even.set((b + 1) % 3, k + (a + b) % k, sym);
        }
    if (!odd) {
        validate_nta_output(even, "three_row_explicit");
        return even;
    }
    Grid out(3, 2 * k + 1, 3 * k + 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2 * k; ++j) out.set(i, j, even.at(i, j));
    out.set(0, 0, 3 * k);
    out.set(0, 2 * k, 0);
    out.set(1, 2 * k, 3 * k);
    out.set(2, 2 * k, 3 * k + 1);
    validate_nta_output(out, "three_row_explicit");
    return out;
}

}  // namespace rcd
