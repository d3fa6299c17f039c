#include "rcdesign/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rcd {

namespace {

double group_size(int r, int c) {
    double g = 1;
    for (int i = 2; i <= r; ++i) g *= i;
    for (int i = 2; i <= c; ++i) g *= i;
    return g;
}

// Relabelled image of g under the given row/column permutations, written as
// a row-major symbol sequence.
void permuted_relabel(const Grid& g, const std::vector<int>& row_perm,
                      const std::vector<int>& col_perm, std::vector<std::int8_t>& out) {
    int map[kMaxSymbols + 1];
    std::fill(map, map + g.num_symbols, -1);
    int next = 0;
    size_t p = 0;
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j, ++p) {
            int s = g.at(row_perm[i], col_perm[j]);
            if (map[s] < 0) map[s] = next++;
            out[p] = std::int8_t(map[s]);
        }
}

// -1 / 0 / +1: best image strictly smaller than the grid itself, equal
// count returned through ties. Used both to test minimality and to count
// autotopisms in one sweep.
bool self_minimal(const Grid& g, std::int64_t* ties_out) {
    std::vector<std::int8_t> target = g.cell;
    {
        // minimality is only possible when symbols already appear in order
        int map[kMaxSymbols + 1];
        std::fill(map, map + g.num_symbols, -1);
        int next = 0;
        for (size_t p = 0; p < g.cell.size(); ++p) {
            int s = g.cell[p];
            if (map[s] < 0) map[s] = next++;
            if (map[s] != s) {
                if (ties_out) *ties_out = 0;
                return false;
            }
        }
    }
    std::vector<int> rows(g.rows), cols(g.cols);
    std::vector<std::int8_t> image(g.cell.size());
    std::int64_t ties = 0;
    std::iota(rows.begin(), rows.end(), 0);
    do {
        std::iota(cols.begin(), cols.end(), 0);
        do {
            permuted_relabel(g, rows, cols, image);
            int cmp = std::lexicographical_compare_three_way(
                          image.begin(), image.end(), target.begin(), target.end()) < 0
                          ? -1
                          : (image == target ? 0 : 1);
            if (cmp < 0) {
                if (ties_out) *ties_out = 0;
                return false;
            }
            if (cmp == 0) ++ties;
        } while (std::next_permutation(cols.begin(), cols.end()));
    } while (std::next_permutation(rows.begin(), rows.end()));
    if (ties_out) *ties_out = ties;
    return true;
}

struct NaiveSearch {
    const Params* params;
    const ConstraintProfile* profile;
    Grid grid;
    int cap = 0;  // occurrence cap e_hi
    int counts[kMaxSymbols + 1] = {0};
    int max_used = -1;
    EnumerationReport* rep;

    void dfs(int k) {
        ++rep->nodes;
        const int rc = grid.rows * grid.cols;
        if (k == rc) {
            leaf();
            return;
        }
        int i = k / grid.cols, j = k % grid.cols;
        symset row = 0, col = 0;
        for (int j2 = 0; j2 < grid.cols; ++j2)
            if (grid.at(i, j2) != kEmpty) row |= sym_bit(grid.at(i, j2));
        for (int i2 = 0; i2 < grid.rows; ++i2)
            if (grid.at(i2, j) != kEmpty) col |= sym_bit(grid.at(i2, j));

        int top = std::min(grid.num_symbols - 1, max_used + 1);
        for (int s = 0; s <= top; ++s) {
            if (counts[s] >= cap || sym_in(row | col, s)) continue;
            grid.set(i, j, s);
            ++counts[s];
            int saved_max = max_used;
            max_used = std::max(max_used, s);
            dfs(k + 1);
            max_used = saved_max;
            --counts[s];
            grid.set(i, j, kEmpty);
        }
    }

    void leaf() {
        if (max_used != grid.num_symbols - 1) return;
        ClassReport cls = classify(grid);
        if (!profile_matches(*profile, cls)) return;
        // cheap necessary conditions for minimality before the full sweep
        for (int j = 0; j < grid.cols; ++j)
            if (grid.at(0, j) != j) return;
        int expected = grid.num_symbols < grid.rows * grid.cols ? 1 : grid.cols;
        if (grid.at(1, 0) != expected) return;
        std::int64_t ties = 0;
        if (!self_minimal(grid, &ties)) return;
        ++rep->total;
        ++rep->by_aut[ties];
        rep->arrays.push_back(grid);
    }
};

}  // namespace

EnumerationReport naive_enumerate(int r, int c, int v, const ConstraintProfile& profile,
                                  bool override_guard) {
    auto t0 = std::chrono::steady_clock::now();
    if (!params_in_domain(r, c, v)) throw std::domain_error("parameters out of domain");
    if (!override_guard && (r * c > 20 || v > 8))
        throw std::domain_error("naive_enumerate guard: rc <= 20 and v <= 8 required "
                                "(dedup cost ~" +
                                std::to_string(group_size(r, c)) +
                                " permutations per array); pass override to force");
    Params params = derive(r, c, v);
    if (auto issue = profile_admissibility_issue(profile, params))
        throw AdmissibilityError("parameters not admissible for profile " + profile.name +
                                 ": " + *issue);

    EnumerationReport rep;
    rep.r = r;
    rep.c = c;
    rep.v = v;
    rep.profile = profile.name + (profile.proper ? " proper" : "") + " (oracle)";

    NaiveSearch ns;
    ns.params = &params;
    ns.profile = &profile;
    ns.grid = Grid(r, c, v);
    ns.cap = params.e_hi;
    ns.rep = &rep;
    ns.dfs(0);

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

Grid min_over_group(const Grid& g) {
    if (!g.complete()) throw std::invalid_argument("min_over_group: grid is not complete");
    if (group_size(g.rows, g.cols) > 1e8)
        throw std::domain_error("min_over_group guard: group too large for brute force");

    std::vector<int> rows(g.rows), cols(g.cols);
    std::vector<std::int8_t> image(g.cell.size());
    std::vector<std::int8_t> best;
    std::iota(rows.begin(), rows.end(), 0);
    do {
        std::iota(cols.begin(), cols.end(), 0);
        do {
            permuted_relabel(g, rows, cols, image);
            if (best.empty() || image < best) best = image;
        } while (std::next_permutation(cols.begin(), cols.end()));
    } while (std::next_permutation(rows.begin(), rows.end()));

    Grid out(g.rows, g.cols, g.num_symbols);
    for (size_t p = 0; p < best.size(); ++p)
        out.set(int(p) / g.cols, int(p) % g.cols, best[p]);
    return out;
}

}  // namespace rcd
