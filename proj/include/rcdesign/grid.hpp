#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcd {

// Subsets of {0, ..., v-1}, v <= 63, as one machine word.
using symset = std::uint64_t;

inline symset sym_bit(int s) { return symset(1) << s; }
inline bool sym_in(symset set, int s) { return (set >> s) & 1; }
inline int sym_count(symset set) { return __builtin_popcountll(set); }
inline symset sym_range(int v) { return v >= 64 ? ~symset(0) : (symset(1) << v) - 1; }
inline int sym_min(symset set) { return __builtin_ctzll(set); }

constexpr int kMaxSymbols = 63;
constexpr std::int8_t kEmpty = -1;

// An r x c array of cells, each empty or holding a symbol in 0..v-1.
// During search the filled cells always form a prefix of the row-major
// order; grids loaded from files are complete.
struct Grid {
    int rows = 0, cols = 0, num_symbols = 0;
    std::vector<std::int8_t> cell;
    int filled = 0;

    Grid() = default;
    Grid(int r, int c, int v)
        : rows(r), cols(c), num_symbols(v), cell(size_t(r) * c, kEmpty) {}

    std::int8_t at(int i, int j) const { return cell[size_t(i) * cols + j]; }
    void set(int i, int j, int s) {
        std::int8_t& ref = cell[size_t(i) * cols + j];
        if (ref == kEmpty && s != kEmpty) ++filled;
        if (ref != kEmpty && s == kEmpty) --filled;
        ref = std::int8_t(s);
    }
    bool complete() const { return filled == rows * cols; }
    bool operator==(const Grid& o) const = default;
};

Grid transpose(const Grid& g);

// Everything classify() decides about a complete grid. Intersection
// multisets are stored as value -> multiplicity histograms.
struct ClassReport {
    bool binary = false;
    bool equireplicate = false;
    bool near_equireplicate = false;  // two consecutive replication values, e not integer

    bool nta = false;
    bool ta = false;
    bool latin = false;
    bool youden = false;
    bool near_youden = false;
    bool balanced_grid = false;
    bool near_balanced_grid = false;

    bool double_array = false;
    bool sesqui = false;
    bool mono_transposed = false;
    bool ao = false;
    bool proper_double = false;
    bool proper_sesqui = false;
    bool proper_mono_transposed = false;
    bool proper_ao = false;

    // Minimal window widths for which the grid is a generalized triple
    // array (valid when binary and (near) equireplicate).
    bool gta = false;
    int omega_rc = 0, omega_rr = 0, omega_cc = 0;

    std::map<int, int> replication_hist;
    std::map<int, int> rc_hist, rr_hist, cc_hist;
    std::map<int, int> covering_columns_hist;       // pairs of symbols vs columns
    std::map<int, int> covering_rows_columns_hist;  // pairs vs rows + columns
};

ClassReport classify(const Grid& g);

enum class CoverScope { ColumnsOnly, RowsAndColumns };

// Count, for each unordered pair of symbols {a,b}, the lines in scope that
// contain both. Indexed by pair_index(a, b, v).
std::vector<int> covering_numbers(const Grid& g, CoverScope scope);

inline int pair_index(int a, int b, int /*v*/) {
    if (a > b) std::swap(a, b);
    return b * (b - 1) / 2 + a;
}

struct GridParseError : std::runtime_error {
    int line;
    GridParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// File format: "r c v" header, then r lines of c symbols; '#' starts a
// comment line; blank lines separate arrays. With strict = true a grid whose
// symbol set is not exactly {0..v-1} is rejected.
std::vector<Grid> read_grids(std::istream& in, bool strict = true);
std::vector<Grid> read_grids_from_string(const std::string& text, bool strict = true);
std::vector<Grid> read_grids_from_file(const std::string& path, bool strict = true);
Grid read_grid_from_string(const std::string& text, bool strict = true);

std::string write_grid(const Grid& g);
void write_grids_to_file(const std::string& path, const std::vector<Grid>& gs);

}  // namespace rcd
