#include "rcdesign/grid.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace rcd {

Grid transpose(const Grid& g) {
    Grid t(g.cols, g.rows, g.num_symbols);
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j)
            if (g.at(i, j) != kEmpty) t.set(j, i, g.at(i, j));
    return t;
}

std::vector<int> covering_numbers(const Grid& g, CoverScope scope) {
    const int v = g.num_symbols;
    std::vector<int> counts(size_t(v) * (v - 1) / 2, 0);
    auto add_line = [&](symset content) {
        for (symset rest = content; rest;) {
            int a = sym_min(rest);
            rest &= rest - 1;
            for (symset rest2 = rest; rest2;) {
                int b = sym_min(rest2);
                rest2 &= rest2 - 1;
                ++counts[pair_index(a, b, v)];
            }
        }
    };
    for (int j = 0; j < g.cols; ++j) {
        symset col = 0;
        for (int i = 0; i < g.rows; ++i)
            if (g.at(i, j) != kEmpty) col |= sym_bit(g.at(i, j));
        add_line(col);
    }
    if (scope == CoverScope::RowsAndColumns) {
        for (int i = 0; i < g.rows; ++i) {
            symset row = 0;
            for (int j = 0; j < g.cols; ++j)
                if (g.at(i, j) != kEmpty) row |= sym_bit(g.at(i, j));
            add_line(row);
        }
    }
    return counts;
}

namespace {

// values all equal, or exactly two consecutive values
bool two_consecutive(const std::map<int, int>& hist, bool& constant) {
    constant = hist.size() == 1;
    if (hist.size() == 1) return true;
    if (hist.size() != 2) return false;
    auto it = hist.begin();
    int lo = it->first;
    int hi = std::next(it)->first;
    return hi == lo + 1;
}

std::map<int, int> to_hist(const std::vector<int>& values) {
    std::map<int, int> h;
    for (int x : values) ++h[x];
    return h;
}

}  // namespace

ClassReport classify(const Grid& g) {
    ClassReport rep;
    const int r = g.rows, c = g.cols, v = g.num_symbols;

    rep.binary = true;
    std::vector<symset> row_set(r, 0), col_set(c, 0);
    for (int i = 0; i < r && rep.binary; ++i)
        for (int j = 0; j < c; ++j) {
            int s = g.at(i, j);
            if (s == kEmpty) continue;
            if (sym_in(row_set[i], s) || sym_in(col_set[j], s)) {
                rep.binary = false;
                break;
            }
            row_set[i] |= sym_bit(s);
            col_set[j] |= sym_bit(s);
        }

    std::vector<int> repl(v, 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (g.at(i, j) != kEmpty) ++repl[g.at(i, j)];
    for (int s = 0; s < v; ++s) ++rep.replication_hist[repl[s]];

    if (!rep.binary || !g.complete()) return rep;

    bool repl_const = false;
    bool repl_two = two_consecutive(rep.replication_hist, repl_const);
    rep.equireplicate = repl_const;
    rep.near_equireplicate = repl_two && !repl_const;
    bool near_equi = repl_two;  // equireplicate or near equireplicate

    std::vector<int> rc_vals, rr_vals, cc_vals;
    rc_vals.reserve(size_t(r) * c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) rc_vals.push_back(sym_count(row_set[i] & col_set[j]));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) rr_vals.push_back(sym_count(row_set[i] & row_set[j]));
    for (int i = 0; i < c; ++i)
        for (int j = i + 1; j < c; ++j) cc_vals.push_back(sym_count(col_set[i] & col_set[j]));

    rep.rc_hist = to_hist(rc_vals);
    rep.rr_hist = to_hist(rr_vals);
    rep.cc_hist = to_hist(cc_vals);

    auto spread_plus_one = [](const std::map<int, int>& h) {
        if (h.empty()) return 1;
        return h.rbegin()->first - h.begin()->first + 1;
    };
    rep.omega_rc = spread_plus_one(rep.rc_hist);
    rep.omega_rr = spread_plus_one(rep.rr_hist);
    rep.omega_cc = spread_plus_one(rep.cc_hist);
    rep.gta = near_equi;

    bool rc_const = false, rr_const = false, cc_const = false;
    bool rc_two = two_consecutive(rep.rc_hist, rc_const);
    bool rr_two = two_consecutive(rep.rr_hist, rr_const);
    bool cc_two = two_consecutive(rep.cc_hist, cc_const);

    rep.nta = near_equi && rc_two && rr_two && cc_two;
    rep.ta = rep.equireplicate && rc_const && rr_const && cc_const;
    rep.latin = r == c && v == r;
    rep.near_youden = c == v && rep.nta;
    rep.youden = c == v && rep.ta;

    rep.double_array = rep.equireplicate && rr_const && cc_const;
    rep.sesqui = rep.equireplicate && rc_const && rr_const;
    rep.mono_transposed = rep.equireplicate && rr_const;
    rep.ao = rep.equireplicate && rc_const;
    rep.proper_double = rep.double_array && !rc_const;
    rep.proper_sesqui = rep.sesqui && !cc_const;
    rep.proper_mono_transposed = rep.mono_transposed && !rc_const && !cc_const;
    rep.proper_ao = rep.ao && !rr_const && !cc_const;

    rep.covering_columns_hist = to_hist(covering_numbers(g, CoverScope::ColumnsOnly));
    std::vector<int> cover_all = covering_numbers(g, CoverScope::RowsAndColumns);
    rep.covering_rows_columns_hist = to_hist(cover_all);

    bool cover_const = false;
    bool cover_two = two_consecutive(rep.covering_rows_columns_hist, cover_const);
    rep.balanced_grid = cover_const;
    rep.near_balanced_grid = near_equi && cover_two;

    return rep;
}

namespace {

struct Reader {
    std::istream& in;
    int line_no = 0;
    bool getline(std::string& out) {
        while (std::getline(in, out)) {
            ++line_no;
            if (!out.empty() && out.back() == '\r') out.pop_back();
            return true;
        }
        return false;
    }
};

bool blank_or_comment(const std::string& s) {
    for (char ch : s) {
        if (ch == '#') return true;
        if (!isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

std::vector<long> parse_ints(const std::string& s, int line_no) {
    std::vector<long> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) {
        try {
            size_t pos = 0;
            long val = std::stol(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(val);
        } catch (const std::exception&) {
            throw GridParseError(line_no, "expected integer, got '" + tok + "'");
        }
    }
    return out;
}

}  // namespace

std::vector<Grid> read_grids(std::istream& in, bool strict) {
    std::vector<Grid> grids;
    Reader rd{in};
    std::string ln;
    bool have_line = rd.getline(ln);
    while (have_line) {
        while (have_line && blank_or_comment(ln)) have_line = rd.getline(ln);
        if (!have_line) break;

        int header_line = rd.line_no;
        std::vector<long> hdr = parse_ints(ln, header_line);
        if (hdr.size() != 3)
            throw GridParseError(header_line, "expected header 'r c v'");
        long r = hdr[0], c = hdr[1], v = hdr[2];
        if (r < 1 || c < 1 || v < 1 || v > kMaxSymbols)
            throw GridParseError(header_line, "bad dimensions (need 1 <= r,c and 1 <= v <= 63)");

        Grid g{int(r), int(c), int(v)};
        for (int i = 0; i < r; ++i) {
            if (!rd.getline(ln) || blank_or_comment(ln))
                throw GridParseError(rd.line_no, "expected " + std::to_string(r) +
                                                     " rows, got " + std::to_string(i));
            std::vector<long> row = parse_ints(ln, rd.line_no);
            if (long(row.size()) != c)
                throw GridParseError(rd.line_no, "expected " + std::to_string(c) +
                                                     " symbols in row, got " +
                                                     std::to_string(row.size()));
            for (int j = 0; j < c; ++j) {
                if (row[j] < 0 || row[j] >= v)
                    throw GridParseError(rd.line_no, "symbol " + std::to_string(row[j]) +
                                                         " out of range [0, " +
                                                         std::to_string(v - 1) + "]");
                g.set(i, j, int(row[j]));
            }
        }
        if (strict) {
            symset used = 0;
            for (auto s : g.cell)
                if (s != kEmpty) used |= sym_bit(s);
            if (used != sym_range(int(v)))
                throw GridParseError(header_line,
                                     "grid does not use exactly the symbols 0.." +
                                         std::to_string(v - 1) +
                                         " (use permissive mode to allow)");
        }
        grids.push_back(std::move(g));
        have_line = rd.getline(ln);
    }
    return grids;
}

std::vector<Grid> read_grids_from_string(const std::string& text, bool strict) {
    std::istringstream iss(text);
    return read_grids(iss, strict);
}

std::vector<Grid> read_grids_from_file(const std::string& path, bool strict) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_grids(f, strict);
}

Grid read_grid_from_string(const std::string& text, bool strict) {
    std::vector<Grid> gs = read_grids_from_string(text, strict);
    if (gs.size() != 1) throw GridParseError(1, "expected exactly one array");
    return gs[0];
}

std::string write_grid(const Grid& g) {
    std::ostringstream out;
    out << g.rows << ' ' << g.cols << ' ' << g.num_symbols << '\n';
    for (int i = 0; i < g.rows; ++i) {
        for (int j = 0; j < g.cols; ++j) {
            if (j) out << ' ';
            if (g.at(i, j) == kEmpty)
                out << '.';
            else
                out << int(g.at(i, j));
        }
        out << '\n';
    }
    return out.str();
}

void write_grids_to_file(const std::string& path, const std::vector<Grid>& gs) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    for (size_t k = 0; k < gs.size(); ++k) {
        if (k) f << '\n';
        f << write_grid(gs[k]);
    }
}

}  // namespace rcd
