#include "rcdesign/params.hpp"

#include <algorithm>
#include <stdexcept>

namespace rcd {

bool params_in_domain(int r, int c, int v) {
    return r >= 3 && c >= 3 && v >= std::max(r, c) && v <= r * c;
}

Params derive(int r, int c, int v) {
    if (!params_in_domain(r, c, v))
        throw std::domain_error("parameters out of domain: need 3 <= r, 3 <= c, max(r,c) <= v <= rc");

    Params p;
    p.r = r;
    p.c = c;
    p.v = v;

    p.e = Rational(long(r) * c, v);
    p.e_lo = int(p.e.floor());
    p.e_hi = int(p.e.ceil());

    if (p.e.is_integer()) {
        p.v_minus = 0;
        p.v_plus = v;
        p.lambda_rc = p.e;
    } else {
        p.v_minus = int((Rational(v) * (Rational(p.e_hi) - p.e)).num());
        p.v_plus = int((Rational(v) * (p.e - Rational(p.e_lo))).num());
        p.lambda_rc =
            Rational(p.e_lo) + Rational(p.e_hi) - Rational(long(p.e_lo) * p.e_hi) / p.e;
    }
    p.lrc_lo = int(p.lambda_rc.floor());
    p.lrc_hi = int(p.lambda_rc.ceil());

    p.lambda_rr = Rational(c) * (p.lambda_rc - Rational(1)) / Rational(r - 1);
    p.lambda_cc = Rational(r) * (p.lambda_rc - Rational(1)) / Rational(c - 1);
    p.lrr_lo = int(p.lambda_rr.floor());
    p.lrr_hi = int(p.lambda_rr.ceil());
    p.lcc_lo = int(p.lambda_cc.floor());
    p.lcc_hi = int(p.lambda_cc.ceil());

    p.mu_c = p.e * Rational(r - 1) / Rational(v - 1);
    p.mu = p.e * Rational(r + c - 2) / Rational(v - 1);
    p.mu_c_lo = int(p.mu_c.floor());
    p.mu_c_hi = int(p.mu_c.ceil());
    p.mu_lo = int(p.mu.floor());
    p.mu_hi = int(p.mu.ceil());

    return p;
}

Rational s_value(const bigint& n, const Rational& m) {
    Rational nn(n);
    Rational frac_lo = m - Rational(m.floor());
    Rational frac_hi = Rational(m.ceil()) - m;
    Rational half(1, 2);
    return nn * m * (m - Rational(1)) * half + nn * frac_lo * frac_hi * half;
}

static bigint choose2(long n) { return bigint(n) * (n - 1) / 2; }

ColumnDualityResult check_column_duality(const Params& p) {
    ColumnDualityResult res;
    res.s_cc = s_value(choose2(p.c), p.lambda_cc);
    res.s_mu_c = s_value(choose2(p.v), p.mu_c);
    if (res.s_cc < res.s_mu_c)
        res.verdict = ColumnDuality::Violated;
    else if (res.s_cc == res.s_mu_c)
        res.verdict = ColumnDuality::Tight;
    else
        res.verdict = ColumnDuality::Slack;
    return res;
}

GridDualityResult check_grid_duality(const Params& p) {
    GridDualityResult res;
    res.s_nta = s_value(choose2(p.c), p.lambda_cc) + s_value(choose2(p.r), p.lambda_rr) +
                s_value(bigint(long(p.r) * p.c), p.lambda_rc);
    res.s_nbg = s_value(choose2(p.v), p.mu);
    if (res.s_nta < res.s_nbg)
        res.verdict = GridDuality::NoNTA;
    else if (res.s_nta > res.s_nbg)
        res.verdict = GridDuality::NoNBG;
    else
        res.verdict = GridDuality::Equivalent;
    return res;
}

bool check_bg_forces_equireplicate(const Params& p) {
    if (!p.mu.is_integer() || p.e.is_integer()) return false;
    return check_grid_duality(p).verdict == GridDuality::Equivalent;
}

bool check_column_family(int r, int c, int v) {
    return r >= 4 && c == r * (r - 1) - 1 && v == r * (r - 1) + 1;
}

bool admissible_for_triple(const Params& p) {
    return p.e.is_integer() && p.lambda_rc.is_integer() && p.lambda_rr.is_integer() &&
           p.lambda_cc.is_integer();
}

NonexistenceReport nonexistence_report(int r, int c, int v) {
    NonexistenceReport rep;
    rep.params = derive(r, c, v);
    const Params& p = rep.params;

    {
        ColumnDualityResult cd = check_column_duality(p);
        PredicateResult pr;
        pr.name = "column-duality";
        pr.excludes_nta = cd.verdict == ColumnDuality::Violated;
        pr.verdict = cd.verdict == ColumnDuality::Violated ? "violated"
                     : cd.verdict == ColumnDuality::Tight  ? "tight"
                                                           : "slack";
        pr.evidence = {{"S_cc", cd.s_cc}, {"S_mu_c", cd.s_mu_c}};
        rep.predicates.push_back(std::move(pr));
    }
    {
        GridDualityResult gd = check_grid_duality(p);
        PredicateResult pr;
        pr.name = "grid-duality";
        pr.excludes_nta = gd.verdict == GridDuality::NoNTA;
        pr.verdict = gd.verdict == GridDuality::NoNTA   ? "no-nta"
                     : gd.verdict == GridDuality::NoNBG ? "no-nbg"
                                                        : "equivalent";
        pr.evidence = {{"S_NTA", gd.s_nta}, {"S_NBG", gd.s_nbg}};
        rep.predicates.push_back(std::move(pr));
    }
    {
        bool fires = check_bg_forces_equireplicate(p);
        PredicateResult pr;
        pr.name = "bg-forces-equireplicate";
        pr.excludes_nta = fires;
        pr.verdict = fires ? "fires" : "passes";
        pr.evidence = {{"mu", p.mu}, {"e", p.e}};
        rep.predicates.push_back(std::move(pr));
    }
    {
        bool fires = check_column_family(r, c, v);
        PredicateResult pr;
        pr.name = "column-family";
        pr.excludes_nta = fires;
        pr.verdict = fires ? "fires" : "passes";
        rep.predicates.push_back(std::move(pr));
    }

    for (const auto& pr : rep.predicates) rep.any_fires = rep.any_fires || pr.excludes_nta;
    return rep;
}

}  // namespace rcd
