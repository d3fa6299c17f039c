#include "rcdesign/propagate.hpp"

#include <algorithm>
#include <cassert>

namespace rcd {

namespace {

struct PairView {
    symset *Aa, *Ba, *Ab, *Bb;
    int cap_a, cap_b;
};

PairView pair_view(EstimateState& st, PairKind kind, int a, int b) {
    switch (kind) {
        case PairKind::RR:
            return {&st.A_R[a], &st.B_R[a], &st.A_R[b], &st.B_R[b], st.c, st.c};
        case PairKind::CC:
            return {&st.A_C[a], &st.B_C[a], &st.A_C[b], &st.B_C[b], st.r, st.r};
        case PairKind::RC:
            return {&st.A_R[a], &st.B_R[a], &st.A_C[b], &st.B_C[b], st.c, st.r};
    }
    __builtin_unreachable();
}

const DimBounds& pair_bounds(const EstimateState& st, PairKind kind) {
    switch (kind) {
        case PairKind::RR: return st.rr;
        case PairKind::CC: return st.cc;
        case PairKind::RC: return st.rc;
    }
    __builtin_unreachable();
}

void mark_pair_dirty(EstimateState& st, PairKind kind, int a, int b) {
    switch (kind) {
        case PairKind::RR:
            st.dirty_rows |= (std::uint64_t(1) << a) | (std::uint64_t(1) << b);
            break;
        case PairKind::CC:
            st.dirty_cols |= (std::uint64_t(1) << a) | (std::uint64_t(1) << b);
            break;
        case PairKind::RC:
            st.dirty_rows |= std::uint64_t(1) << a;
            st.dirty_cols |= std::uint64_t(1) << b;
            break;
    }
}

DimBounds make_bounds(const DimConstraint& dc, int lo_exact, int hi_exact, int cap,
                      const std::vector<int>& observed, bool& spread_contradiction) {
    DimBounds b;
    switch (dc.mode) {
        case DimMode::Exact:
        case DimMode::TwoValued:
            b.active = true;
            b.lo = lo_exact;
            b.hi = hi_exact;
            break;
        case DimMode::Unconstrained:
            b.active = false;
            break;
        case DimMode::Window: {
            b.active = true;
            if (observed.empty()) {
                b.lo = 0;
                b.hi = cap;
            } else {
                auto [mn, mx] = std::minmax_element(observed.begin(), observed.end());
                if (*mx - *mn > dc.omega - 1) spread_contradiction = true;
                b.lo = std::max(0, *mx - (dc.omega - 1));
                b.hi = *mn + (dc.omega - 1);
            }
            break;
        }
    }
    return b;
}

}  // namespace

void init_estimates_into(EstimateState& st, const Grid& g, const Params& p,
                         const ConstraintProfile& profile, CellRef next) {
    st.r = g.rows;
    st.c = g.cols;
    st.v = g.num_symbols;
    st.cells = g.cell;
    st.row_content.assign(st.r, 0);
    st.col_content.assign(st.c, 0);

    int counts[kMaxSymbols + 1] = {0};
    int v_max = -1;
    for (int i = 0; i < st.r; ++i)
        for (int j = 0; j < st.c; ++j) {
            int s = g.at(i, j);
            if (s == kEmpty) continue;
            st.row_content[i] |= sym_bit(s);
            st.col_content[j] |= sym_bit(s);
            ++counts[s];
            v_max = std::max(v_max, s);
        }

    // V_may per the replication bookkeeping; the near-equireplicate branch
    // caps the number of symbols reaching e_hi occurrences at v_plus.
    bool near_equi = profile.replication == ReplicationMode::TwoValued && !p.e.is_integer();
    st.V_may = 0;
    if (near_equi) {
        int at_hi = 0;
        for (int s = 0; s < st.v; ++s)
            if (counts[s] == p.e_hi) ++at_hi;
        int limit = at_hi < p.v_plus ? p.e_lo : p.e_lo - 1;
        for (int s = 0; s < st.v; ++s)
            if (counts[s] <= limit) st.V_may |= sym_bit(s);
    } else {
        for (int s = 0; s < st.v; ++s)
            if (counts[s] < p.e_lo) st.V_may |= sym_bit(s);
    }

    st.V_next = st.V_may & sym_range(std::min(st.v, v_max + 2));

    st.A_R.assign(st.r, 0);
    st.B_R.assign(st.r, 0);
    st.A_C.assign(st.c, 0);
    st.B_C.assign(st.c, 0);
    for (int i = 0; i < st.r; ++i) {
        st.A_R[i] = st.row_content[i];
        bool has_empty = sym_count(st.row_content[i]) < st.c;
        st.B_R[i] = has_empty ? (st.row_content[i] | st.V_may) : st.row_content[i];
    }
    for (int j = 0; j < st.c; ++j) {
        st.A_C[j] = st.col_content[j];
        bool has_empty = sym_count(st.col_content[j]) < st.r;
        st.B_C[j] = has_empty ? (st.col_content[j] | st.V_may) : st.col_content[j];
    }

    st.next_index = next.valid() ? next.i * st.c + next.j : -1;
    st.B_cell.assign(size_t(st.r) * st.c, 0);
    for (int i = 0; i < st.r; ++i)
        for (int j = 0; j < st.c; ++j) {
            int s = g.at(i, j);
            symset& bc = st.bcell(i, j);
            if (s != kEmpty) {
                bc = sym_bit(s);
            } else if (i * st.c + j == st.next_index) {
                bc = st.V_next & ~st.row_content[i] & ~st.col_content[j];
            } else {
                bc = st.V_may & ~st.row_content[i] & ~st.col_content[j];
            }
        }

    // Bounds per dimension. Window bounds derive from intersections that are
    // already fully determined, i.e. both lines complete.
    bool spread_bad = false;
    std::vector<int> obs;
    std::vector<bool> row_full(st.r), col_full(st.c);
    for (int i = 0; i < st.r; ++i) row_full[i] = sym_count(st.row_content[i]) == st.c;
    for (int j = 0; j < st.c; ++j) col_full[j] = sym_count(st.col_content[j]) == st.r;

    if (profile.rr.mode == DimMode::Window) {
        for (int i = 0; i < st.r; ++i)
            for (int j = i + 1; j < st.r; ++j)
                if (row_full[i] && row_full[j])
                    obs.push_back(sym_count(st.row_content[i] & st.row_content[j]));
    }
    st.rr = make_bounds(profile.rr, p.lrr_lo, p.lrr_hi, st.c, obs, spread_bad);

    obs.clear();
    if (profile.cc.mode == DimMode::Window) {
        for (int i = 0; i < st.c; ++i)
            for (int j = i + 1; j < st.c; ++j)
                if (col_full[i] && col_full[j])
                    obs.push_back(sym_count(st.col_content[i] & st.col_content[j]));
    }
    st.cc = make_bounds(profile.cc, p.lcc_lo, p.lcc_hi, st.r, obs, spread_bad);

    obs.clear();
    if (profile.rc.mode == DimMode::Window) {
        for (int i = 0; i < st.r; ++i)
            for (int j = 0; j < st.c; ++j)
                if (row_full[i] && col_full[j])
                    obs.push_back(sym_count(st.row_content[i] & st.col_content[j]));
    }
    st.rc = make_bounds(profile.rc, p.lrc_lo, p.lrc_hi, std::min(st.r, st.c), obs, spread_bad);

    st.contradiction_at_init = spread_bad;
    st.dirty_rows = st.dirty_cols = ~std::uint64_t(0);
}

EstimateState init_estimates(const Grid& g, const Params& p, const ConstraintProfile& profile,
                             CellRef next) {
    EstimateState st;
    init_estimates_into(st, g, p, profile, next);
    return st;
}

RuleResult rule_full_content(EstimateState& st, PairKind line_kind, int index) {
    assert(line_kind != PairKind::RC);
    symset& A = line_kind == PairKind::RR ? st.A_R[index] : st.A_C[index];
    symset& B = line_kind == PairKind::RR ? st.B_R[index] : st.B_C[index];
    int cap = line_kind == PairKind::RR ? st.c : st.r;

    if (A & ~B) return RuleResult::Contradiction;
    int na = sym_count(A), nb = sym_count(B);
    if (na > cap || nb < cap) return RuleResult::Contradiction;
    RuleResult res = RuleResult::Unchanged;
    if (na == cap && B != A) {
        B = A;
        res = RuleResult::Changed;
    }
    if (nb == cap && A != B) {
        A = B;
        res = RuleResult::Changed;
    }
    if (res == RuleResult::Changed) {
        if (line_kind == PairKind::RR)
            st.dirty_rows |= std::uint64_t(1) << index;
        else
            st.dirty_cols |= std::uint64_t(1) << index;
    }
    return res;
}

RuleResult rule_cells(EstimateState& st) {
    RuleResult res = RuleResult::Unchanged;
    for (int i = 0; i < st.r; ++i)
        for (int j = 0; j < st.c; ++j) {
            if (!st.cell_empty(i, j)) continue;
            symset& bc = st.bcell(i, j);
            symset nb = bc & (st.B_R[i] & ~st.row_content[i]) & (st.B_C[j] & ~st.col_content[j]);
            if (nb != bc) {
                bc = nb;
                res = RuleResult::Changed;
            }
            if (!bc) return RuleResult::Contradiction;
        }
    for (int i = 0; i < st.r; ++i) {
        symset uni = 0;
        for (int j = 0; j < st.c; ++j) uni |= st.bcell(i, j);
        symset nb = st.B_R[i] & uni;
        if (nb != st.B_R[i]) {
            st.B_R[i] = nb;
            st.dirty_rows |= std::uint64_t(1) << i;
            res = RuleResult::Changed;
        }
        if (st.A_R[i] & ~st.B_R[i]) return RuleResult::Contradiction;
    }
    for (int j = 0; j < st.c; ++j) {
        symset uni = 0;
        for (int i = 0; i < st.r; ++i) uni |= st.bcell(i, j);
        symset nb = st.B_C[j] & uni;
        if (nb != st.B_C[j]) {
            st.B_C[j] = nb;
            st.dirty_cols |= std::uint64_t(1) << j;
            res = RuleResult::Changed;
        }
        if (st.A_C[j] & ~st.B_C[j]) return RuleResult::Contradiction;
    }
    return res;
}

RuleResult rule_rc_empty(EstimateState& st, int i, int j) {
    assert(st.cell_empty(i, j));
    if (!st.rc.active) return RuleResult::Unchanged;
    RuleResult res = RuleResult::Unchanged;

    int cur = sym_count(st.row_content[i] & st.col_content[j]);
    if (cur + 1 > st.rc.hi) return RuleResult::Contradiction;
    if (cur + 1 == st.rc.hi) {
        // The cell (i,j) carries the only further common symbol, so symbols
        // certain to land in the crossing line are barred from siblings.
        for (int j2 = 0; j2 < st.c; ++j2) {
            if (j2 == j || !st.cell_empty(i, j2)) continue;
            symset nb = st.bcell(i, j2) & ~st.A_C[j];
            if (nb != st.bcell(i, j2)) {
                st.bcell(i, j2) = nb;
                res = RuleResult::Changed;
                if (!nb) return RuleResult::Contradiction;
            }
        }
        for (int i2 = 0; i2 < st.r; ++i2) {
            if (i2 == i || !st.cell_empty(i2, j)) continue;
            symset nb = st.bcell(i2, j) & ~st.A_R[i];
            if (nb != st.bcell(i2, j)) {
                st.bcell(i2, j) = nb;
                res = RuleResult::Changed;
                if (!nb) return RuleResult::Contradiction;
            }
        }
    }

    int l_max = cur + (st.c - sym_count(st.row_content[i])) + (st.r - sym_count(st.col_content[j])) - 1;
    if (l_max < st.rc.lo) return RuleResult::Contradiction;
    if (l_max == st.rc.lo) {
        for (int j2 = 0; j2 < st.c; ++j2) {
            if (j2 == j || !st.cell_empty(i, j2)) continue;
            symset nb = st.bcell(i, j2) & st.col_content[j];
            if (nb != st.bcell(i, j2)) {
                st.bcell(i, j2) = nb;
                res = RuleResult::Changed;
                if (!nb) return RuleResult::Contradiction;
            }
        }
        for (int i2 = 0; i2 < st.r; ++i2) {
            if (i2 == i || !st.cell_empty(i2, j)) continue;
            symset nb = st.bcell(i2, j) & st.row_content[i];
            if (nb != st.bcell(i2, j)) {
                st.bcell(i2, j) = nb;
                res = RuleResult::Changed;
                if (!nb) return RuleResult::Contradiction;
            }
        }
    }
    return res;
}

namespace {

// Rules 6 and 7 share all the partition sets, so the fixpoint loop runs
// them as one pass. The update-only masks are left uncomputed unless one of
// the bounds turns out tight, which is rare.
RuleResult pair_rules(EstimateState& st, PairKind kind, int a, int b, bool run_lower,
                      bool run_upper) {
    const DimBounds& bounds = pair_bounds(st, kind);
    if (!bounds.active) return RuleResult::Unchanged;
    PairView pv = pair_view(st, kind, a, b);
    symset Aa = *pv.Aa, Ba = *pv.Ba, Ab = *pv.Ab, Bb = *pv.Bb;

    // both lines settled: the intersection is final, only bound checks remain
    if (Aa == Ba && Ab == Bb) {
        int inter = sym_count(Aa & Ab);
        if (run_lower && inter > bounds.hi) return RuleResult::Contradiction;
        if (run_upper && inter < bounds.lo) return RuleResult::Contradiction;
        return RuleResult::Unchanged;
    }

    symset Xa = (Ba & ~Aa) & Ab;
    symset Xb = (Bb & ~Ab) & Aa;
    symset Y = (Ba & ~Aa & ~Ab) & Bb;
    symset Za = Ba & ~Aa & ~Ab & ~Bb;
    symset Zb = Bb & ~Ab & ~Aa & ~Ba;

    int inter_aa = sym_count(Aa & Ab);
    int capfree_a = pv.cap_a - sym_count(Aa);
    int capfree_b = pv.cap_b - sym_count(Ab);
    int nxa = sym_count(Xa), nxb = sym_count(Xb);
    int ny = sym_count(Y);

    symset nAa = Aa, nBa = Ba, nAb = Ab, nBb = Bb;

    if (run_lower) {
        int fa = std::max(0, capfree_a - sym_count(Za));
        int fb = std::max(0, capfree_b - sym_count(Zb));
        int l_min = inter_aa + std::max(0, fa + fb - ny);
        if (l_min > bounds.hi) return RuleResult::Contradiction;
        if (l_min == bounds.hi) {
            if (ny > fa + fb || (fa == 0 && fb == 0)) {
                nBa &= ~Xa;
                nBb &= ~Xb;
            } else if (fa > 0 && fb == 0) {
                nAa |= Y | Za;
                nBb &= ~(Xb | Y);
            } else if (fb > 0 && fa == 0) {
                nAb |= Y | Zb;
                nBa &= ~(Xa | Y);
            } else {
                nAa |= Za;
                nAb |= Zb;
                if (ny == fa + fb) {
                    nBa &= ~Xa;
                    nBb &= ~Xb;
                }
            }
        }
    }

    if (run_upper) {
        int sa = std::max(0, capfree_a - nxa);
        int sb = std::max(0, capfree_b - nxb);
        int m2 = std::min({ny, sa, sb});
        int l_max = inter_aa + std::min(capfree_a, nxa) + std::min(capfree_b, nxb) + m2;
        if (l_max < bounds.lo) return RuleResult::Contradiction;
        if (l_max == bounds.lo) {
            // Tightness forcings. Writing the intersection as
            // |A_a n A_b| + x_a + x_b + w:
            //  - if m2 = |Y|, the slack w - m2 is non-positive, so both X
            //    terms sit at their maxima and w = |Y|, putting Y inside
            //    both lines;
            //  - if m2 = s_a < |Y|, capacity of line a absorbs the slack,
            //    which forces the opposite X term to its maximum and
            //    empties Z'_a; symmetrically for m2 = s_b.
            // An X term at its maximum means all of X enters the line when
            // the free capacity allows it, and otherwise that the line is
            // filled by A and X alone and sheds Y and Z.
            auto force_x_a = [&]() {
                if (capfree_a >= nxa) nAa |= Xa;
                if (capfree_a <= nxa) nBa &= ~(Y | Za);
            };
            auto force_x_b = [&]() {
                if (capfree_b >= nxb) nAb |= Xb;
                if (capfree_b <= nxb) nBb &= ~(Y | Zb);
            };
            if (m2 == ny) {
                force_x_a();
                force_x_b();
                nAa |= Y;
                nAb |= Y;
            }
            if (m2 == sa && sa < ny) {
                force_x_b();
                nBa &= ~Za;
            }
            if (m2 == sb && sb < ny) {
                force_x_a();
                nBb &= ~Zb;
            }
        }
    }

    if ((nAa & ~nBa) || (nAb & ~nBb)) return RuleResult::Contradiction;
    if (nAa == Aa && nBa == Ba && nAb == Ab && nBb == Bb) return RuleResult::Unchanged;
    *pv.Aa = nAa;
    *pv.Ba = nBa;
    *pv.Ab = nAb;
    *pv.Bb = nBb;
    mark_pair_dirty(st, kind, a, b);
    return RuleResult::Changed;
}

}  // namespace

RuleResult rule_pair_lower(EstimateState& st, PairKind kind, int a, int b) {
    return pair_rules(st, kind, a, b, true, false);
}

RuleResult rule_pair_upper(EstimateState& st, PairKind kind, int a, int b) {
    return pair_rules(st, kind, a, b, false, true);
}

PropagateResult propagate_fixpoint(const Grid& g, const Params& p,
                                   const ConstraintProfile& profile, CellRef next,
                                   EstimateState* scratch) {
    EstimateState local;
    EstimateState& st = scratch ? *scratch : local;
    init_estimates_into(st, g, p, profile, next);
    if (st.contradiction_at_init) return {false, 0};

    bool changed = true;
    while (changed) {
        changed = false;
        // lines whose A/B sets changed during the previous sweep
        std::uint64_t drow = st.dirty_rows, dcol = st.dirty_cols;
        st.dirty_rows = st.dirty_cols = 0;
        auto row_dirty = [&](int i) { return (drow >> i) & 1; };
        auto col_dirty = [&](int j) { return (dcol >> j) & 1; };
        auto feed = [&](RuleResult rr) {
            if (rr == RuleResult::Changed) changed = true;
            return rr == RuleResult::Contradiction;
        };

        for (int i = 0; i < st.r; ++i)
            if (row_dirty(i))
                if (feed(rule_full_content(st, PairKind::RR, i))) return {false, 0};
        for (int j = 0; j < st.c; ++j)
            if (col_dirty(j))
                if (feed(rule_full_content(st, PairKind::CC, j))) return {false, 0};

        if (st.rc.active)
            for (int i = 0; i < st.r; ++i)
                for (int j = 0; j < st.c; ++j)
                    if ((row_dirty(i) || col_dirty(j)) && st.cell_empty(i, j))
                        if (feed(rule_rc_empty(st, i, j))) return {false, 0};

        if (st.rr.active)
            for (int i = 0; i < st.r; ++i)
                for (int j = i + 1; j < st.r; ++j) {
                    if (!row_dirty(i) && !row_dirty(j)) continue;
                    if (feed(pair_rules(st, PairKind::RR, i, j, true, true))) return {false, 0};
                }
        if (st.cc.active)
            for (int i = 0; i < st.c; ++i)
                for (int j = i + 1; j < st.c; ++j) {
                    if (!col_dirty(i) && !col_dirty(j)) continue;
                    if (feed(pair_rules(st, PairKind::CC, i, j, true, true))) return {false, 0};
                }
        if (st.rc.active)
            for (int i = 0; i < st.r; ++i)
                for (int j = 0; j < st.c; ++j) {
                    if (!row_dirty(i) && !col_dirty(j)) continue;
                    if (feed(pair_rules(st, PairKind::RC, i, j, true, true))) return {false, 0};
                }

        if (feed(rule_cells(st))) return {false, 0};
    }

    PropagateResult res;
    res.completable = true;
    if (st.next_index >= 0) res.candidates = st.B_cell[st.next_index];
    return res;
}

}  // namespace rcd
