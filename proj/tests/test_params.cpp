#include "rcdesign/params.hpp"

#include <doctest.h>

#include <random>

using namespace rcd;

TEST_CASE("rational arithmetic stays reduced and exact") {
    Rational a(6, 4);
    CHECK(a.num() == bigint(3));
    CHECK(a.den() == bigint(2));
    CHECK(a + Rational(1, 2) == Rational(2));
    CHECK(Rational(1, 3) * Rational(3) == Rational(1));
    CHECK(Rational(7, 2).floor() == bigint(3));
    CHECK(Rational(7, 2).ceil() == bigint(4));
    CHECK(Rational(-7, 2).floor() == bigint(-4));
    CHECK(Rational(-7, 2).ceil() == bigint(-3));
    CHECK(Rational(5, 3) > Rational(3, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK(Rational(2, -4).str() == "-1/2");
}

TEST_CASE("derive reproduces the worked parameter sets") {
    Params p = derive(4, 6, 9);
    CHECK(p.e == Rational(8, 3));
    CHECK(p.e_lo == 2);
    CHECK(p.e_hi == 3);
    CHECK(p.lambda_rc == Rational(11, 4));
    CHECK(p.lambda_rr == Rational(7, 2));
    CHECK(p.lambda_cc == Rational(7, 5));
    CHECK(p.lrr_lo == 3);
    CHECK(p.lrr_hi == 4);
    CHECK(p.lcc_lo == 1);
    CHECK(p.lcc_hi == 2);

    Params q = derive(4, 9, 12);
    CHECK(q.e == Rational(3));
    CHECK(q.lambda_rc == Rational(3));
    CHECK(q.lambda_rr == Rational(6));
    CHECK(q.lambda_cc == Rational(1));
    CHECK(q.v_minus == 0);
    CHECK(q.v_plus == 12);

    Params s = derive(5, 9, 11);
    CHECK(s.e == Rational(45, 11));
    CHECK(s.lambda_rc == Rational(37, 9));
    CHECK(s.lambda_cc == Rational(35, 18));
    CHECK(s.mu_c == Rational(18, 11));
}

TEST_CASE("derive rejects out-of-domain parameters") {
    CHECK_THROWS_AS(derive(2, 5, 5), std::domain_error);
    CHECK_THROWS_AS(derive(3, 5, 4), std::domain_error);
    CHECK_THROWS_AS(derive(3, 5, 16), std::domain_error);
}

TEST_CASE("near-equireplicate counts solve the occupancy system") {
    Params p = derive(3, 5, 7);
    CHECK(p.e_lo == 2);
    CHECK(p.e_hi == 3);
    CHECK(p.v_minus == 6);
    CHECK(p.v_plus == 1);
    CHECK(p.v_minus + p.v_plus == p.v);
    CHECK(p.v_minus * p.e_lo + p.v_plus * p.e_hi == p.r * p.c);
}

TEST_CASE("derive transpose symmetry") {
    for (auto [r, c, v] : {std::tuple{4, 6, 9}, {5, 9, 11}, {3, 7, 12}}) {
        Params p = derive(r, c, v);
        Params t = derive(c, r, v);
        CHECK(p.e == t.e);
        CHECK(p.lambda_rc == t.lambda_rc);
        CHECK(p.lambda_rr == t.lambda_cc);
        CHECK(p.lambda_cc == t.lambda_rr);
        CHECK(p.mu == t.mu);
    }
}

TEST_CASE("lambda_rc >= e with equality iff v divides rc") {
    for (int r = 3; r <= 8; ++r)
        for (int c = 3; c <= 8; ++c)
            for (int v = std::max(r, c); v <= r * c; ++v) {
                Params p = derive(r, c, v);
                CHECK(p.lambda_rc >= p.e);
                CHECK((p.lambda_rc == p.e) == ((r * c) % v == 0));
                CHECK(p.e_lo <= p.lrc_lo);
                CHECK(p.lrc_hi <= p.e_hi);
            }
}

TEST_CASE("s_value on the worked examples") {
    CHECK(s_value(bigint(10), Rational(2)) == Rational(10));
    CHECK(s_value(bigint(36), Rational(35, 18)) == Rational(34));
    CHECK(s_value(bigint(55), Rational(18, 11)) == Rational(35));
}

TEST_CASE("s_value is the minimum of sum C(a_i,2) over integer multisets") {
    // oracle: direct summation over random multisets with the same mean
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 1 + int(rng() % 12);
        std::vector<int> a(n);
        long total = 0;
        for (int& x : a) {
            x = int(rng() % 7);
            total += x;
        }
        Rational m(total, n);
        Rational direct(0);
        for (int x : a) direct = direct + Rational(long(x) * (x - 1) / 2);
        Rational bound = s_value(bigint(n), m);
        CHECK(direct >= bound);
        bool balanced = true;
        for (int x : a)
            if (Rational(x) < Rational(m.floor()) || Rational(x) > Rational(m.ceil()))
                balanced = false;
        CHECK((direct == bound) == balanced);
    }
}

TEST_CASE("column duality verdicts") {
    auto r1 = check_column_duality(derive(5, 9, 11));
    CHECK(r1.verdict == ColumnDuality::Violated);
    CHECK(r1.s_cc == Rational(34));
    CHECK(r1.s_mu_c == Rational(35));

    auto r2 = check_column_duality(derive(7, 13, 15));
    CHECK(r2.verdict == ColumnDuality::Violated);
    CHECK(r2.s_cc == Rational(228));
    CHECK(r2.s_mu_c == Rational(231));

    auto r3 = check_column_duality(derive(4, 9, 12));
    CHECK(r3.verdict != ColumnDuality::Violated);
}

TEST_CASE("grid duality verdicts") {
    auto r1 = check_grid_duality(derive(4, 5, 10));
    CHECK(r1.verdict == GridDuality::NoNTA);
    CHECK(r1.s_nta == Rational(24));
    CHECK(r1.s_nbg == Rational(25));

    auto r2 = check_grid_duality(derive(6, 6, 9));
    CHECK(r2.verdict == GridDuality::Equivalent);
    CHECK(r2.s_nta == Rational(360));

    auto r3 = check_grid_duality(derive(6, 8, 12));
    CHECK(r3.verdict == GridDuality::NoNTA);
    CHECK(r3.s_nta == Rational(486));
    CHECK(r3.s_nbg == Rational(492));

    auto r4 = check_grid_duality(derive(6, 7, 14));
    CHECK(r4.verdict == GridDuality::NoNTA);
    CHECK(r4.s_nta == Rational(186));
    CHECK(r4.s_nbg == Rational(189));
}

TEST_CASE("balanced grids force equireplication on the listed sets") {
    CHECK(check_bg_forces_equireplicate(derive(40, 40, 65)));
    CHECK(check_bg_forces_equireplicate(derive(27, 66, 78)));
    CHECK(check_bg_forces_equireplicate(derive(42, 56, 64)));
    CHECK(check_bg_forces_equireplicate(derive(45, 45, 55)));
    CHECK_FALSE(check_bg_forces_equireplicate(derive(4, 9, 12)));  // e integer
    CHECK_FALSE(check_bg_forces_equireplicate(derive(3, 5, 7)));
}

TEST_CASE("column family predicate") {
    CHECK(check_column_family(4, 11, 13));
    CHECK(check_column_family(5, 19, 21));
    CHECK_FALSE(check_column_family(3, 5, 7));
    CHECK_FALSE(check_column_family(4, 11, 14));
}

TEST_CASE("triple-array admissibility") {
    CHECK(admissible_for_triple(derive(5, 6, 10)));
    CHECK(admissible_for_triple(derive(3, 4, 6)));
    CHECK_FALSE(admissible_for_triple(derive(4, 6, 9)));
}

TEST_CASE("nonexistence report aggregates the predicates deterministically") {
    auto rep = nonexistence_report(5, 9, 11);
    REQUIRE(rep.predicates.size() == 4);
    CHECK(rep.predicates[0].name == "column-duality");
    CHECK(rep.predicates[0].verdict == "violated");
    CHECK(rep.any_fires);

    auto rep2 = nonexistence_report(6, 7, 14);
    CHECK(rep2.predicates[1].name == "grid-duality");
    CHECK(rep2.predicates[1].verdict == "no-nta");
    CHECK(rep2.any_fires);

    auto rep3 = nonexistence_report(7, 8, 14);
    CHECK_FALSE(rep3.any_fires);
}
