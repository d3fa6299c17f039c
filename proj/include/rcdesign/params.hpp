#pragma once

#include "rcdesign/rational.hpp"

#include <string>
#include <vector>

namespace rcd {

// Derived quantities of a binary (near) equireplicate r x c design on v
// symbols. Everything is exact; the *_lo / *_hi fields are the integer
// floor/ceil pairs used by the search core, which works in machine integers.
struct Params {
    int r = 0, c = 0, v = 0;

    Rational e;           // rc / v, average replication
    Rational lambda_rc;   // average row-column intersection
    Rational lambda_rr;   // average row-row intersection
    Rational lambda_cc;   // average column-column intersection
    Rational mu_c;        // average pair coverage by columns
    Rational mu;          // average pair coverage by rows and columns

    int e_lo = 0, e_hi = 0;
    int lrc_lo = 0, lrc_hi = 0;
    int lrr_lo = 0, lrr_hi = 0;
    int lcc_lo = 0, lcc_hi = 0;
    int mu_c_lo = 0, mu_c_hi = 0;
    int mu_lo = 0, mu_hi = 0;

    // Symbols occurring e_lo resp. e_hi times. In the equireplicate case the
    // convention v_minus = 0, v_plus = v keeps a single code path downstream.
    int v_minus = 0, v_plus = 0;
};

// Rejects anything outside 3 <= r, 3 <= c, max(r,c) <= v <= rc.
Params derive(int r, int c, int v);

bool params_in_domain(int r, int c, int v);

// n * C(m,2) + n(m - floor m)(ceil m - m)/2 -- the minimum of sum C(a_i, 2)
// over multisets of n non-negative integers with mean m.
Rational s_value(const bigint& n, const Rational& m);

enum class ColumnDuality { Violated, Tight, Slack };
enum class GridDuality { NoNTA, NoNBG, Equivalent };

struct ColumnDualityResult {
    ColumnDuality verdict;
    Rational s_cc;    // S(C(c,2), lambda_cc)
    Rational s_mu_c;  // S(C(v,2), mu_c)
};

struct GridDualityResult {
    GridDuality verdict;
    Rational s_nta;  // S(C(c,2),lcc) + S(C(r,2),lrr) + S(rc,lrc)
    Rational s_nbg;  // S(C(v,2), mu)
};

ColumnDualityResult check_column_duality(const Params& p);
GridDualityResult check_grid_duality(const Params& p);

// mu integer, e not integer, S_NTA == S_NBG: every NTA would be a balanced
// grid, which must be equireplicate -- so none exists.
bool check_bg_forces_equireplicate(const Params& p);

// r >= 4, c = r(r-1)-1, v = r(r-1)+1.
bool check_column_family(int r, int c, int v);

bool admissible_for_triple(const Params& p);

struct PredicateResult {
    std::string name;
    std::string verdict;   // e.g. "violated", "no-nta", "fires", "passes"
    bool excludes_nta;     // true when this predicate proves non-existence
    std::vector<std::pair<std::string, Rational>> evidence;
};

struct NonexistenceReport {
    Params params;
    std::vector<PredicateResult> predicates;
    bool any_fires = false;
};

NonexistenceReport nonexistence_report(int r, int c, int v);

}  // namespace rcd
