#include "rcdesign/search.hpp"

#include "rcdesign/canon.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace rcd;

TEST_CASE("small NTA counts from the tables") {
    ConstraintProfile prof = ConstraintProfile::nta();
    struct Case {
        int r, c, v;
        std::uint64_t expected;
    };
    for (auto [r, c, v, expected] :
         {Case{3, 3, 3, 1}, {3, 3, 4, 2}, {3, 3, 5, 1}, {3, 3, 6, 0}, {3, 3, 7, 1},
          {3, 3, 8, 1}, {3, 3, 9, 1}, {3, 5, 7, 2}, {3, 6, 9, 1}, {3, 7, 7, 1},
          {4, 4, 4, 2}, {4, 4, 8, 1}, {4, 5, 9, 15}, {4, 5, 10, 0}, {5, 5, 5, 2}})
        CHECK(enumerate(r, c, v, prof).total == expected);
}

TEST_CASE("triple array enumeration with autotopism histogram") {
    auto rep = enumerate(4, 9, 12, ConstraintProfile::ta());
    CHECK(rep.total == 1);
    CHECK(rep.by_aut == std::map<std::int64_t, std::uint64_t>{{3, 1}});
}

TEST_CASE("total equals the sum of the histogram") {
    auto rep = enumerate(4, 5, 9, ConstraintProfile::nta());
    std::uint64_t sum = 0;
    for (auto& [order, count] : rep.by_aut) sum += count;
    CHECK(rep.total == sum);
}

TEST_CASE("emitted arrays verify and arrive in lexicographic order") {
    EnumerateOptions opts;
    opts.emit = true;
    auto rep = enumerate(4, 5, 9, ConstraintProfile::nta(), opts);
    REQUIRE(rep.arrays.size() == 15);
    for (size_t k = 0; k < rep.arrays.size(); ++k) {
        CHECK(classify(rep.arrays[k]).nta);
        CHECK(is_canonical(rep.arrays[k], false));
        if (k) CHECK(rep.arrays[k - 1].cell < rep.arrays[k].cell);
    }
}

TEST_CASE("near-youden profile is the v = c case") {
    auto rep = enumerate(3, 7, 7, ConstraintProfile::near_youden());
    CHECK(rep.total == 1);
    CHECK_THROWS_AS(enumerate(3, 7, 8, ConstraintProfile::near_youden()), AdmissibilityError);
}

TEST_CASE("profile admissibility errors name the offending quantity") {
    try {
        enumerate(4, 6, 9, ConstraintProfile::ta());
        FAIL("expected admissibility error");
    } catch (const AdmissibilityError& e) {
        CHECK(std::string(e.what()).find("e = 8/3") != std::string::npos);
    }
    CHECK_THROWS_AS(enumerate(3, 5, 65, ConstraintProfile::nta()), std::domain_error);
}

TEST_CASE("jobs at a depth partition the search") {
    ConstraintProfile prof = ConstraintProfile::nta();
    CHECK(jobs_at_depth(3, 5, 7, prof, 0).size() == 1);
    CHECK(jobs_at_depth(3, 5, 7, prof, 1).size() == 1);  // cell (1,1) = 0 forced

    auto jobs = jobs_at_depth(3, 5, 7, prof, 5);
    std::uint64_t sum = 0;
    for (std::int64_t idx = 0; idx < std::int64_t(jobs.size()); ++idx) {
        EnumerateOptions opts;
        opts.split.depth = 5;
        opts.split.job_index = idx;
        sum += enumerate(3, 5, 7, prof, opts).total;
    }
    CHECK(sum == 2);
}

TEST_CASE("split determinism across depths") {
    ConstraintProfile prof = ConstraintProfile::nta();
    for (auto [r, c, v] : {std::tuple{3, 6, 9}, {4, 5, 7}}) {
        EnumerationReport base = enumerate(r, c, v, prof);
        for (int depth : {3, 6, 9}) {
            EnumerateOptions opts;
            opts.split.depth = depth;
            EnumerationReport rep = enumerate(r, c, v, prof, opts);
            CHECK(rep.total == base.total);
            CHECK(rep.by_aut == base.by_aut);
        }
    }
}

TEST_CASE("thread count does not change the report") {
    ConstraintProfile prof = ConstraintProfile::nta();
    EnumerateOptions opts1, opts4;
    opts1.emit = opts4.emit = true;
    opts1.threads = 1;
    opts4.threads = 4;
    auto rep1 = enumerate(4, 5, 9, prof, opts1);
    auto rep4 = enumerate(4, 5, 9, prof, opts4);
    CHECK(rep1.total == rep4.total);
    CHECK(rep1.by_aut == rep4.by_aut);
    CHECK(rep1.arrays == rep4.arrays);
}

TEST_CASE("first-only stops at one array") {
    EnumerateOptions opts;
    opts.first_only = true;
    auto rep = enumerate(4, 6, 9, ConstraintProfile::nta(), opts);
    CHECK(rep.total == 1);
    REQUIRE(rep.arrays.size() == 1);
    CHECK(classify(rep.arrays[0]).nta);
}

TEST_CASE("proper design counts of the admissible (3,6,9) set") {
    auto sesqui = enumerate_proper(3, 6, 9, ConstraintProfile::sesqui());
    CHECK(sesqui.total == 5);
    auto mono = enumerate_proper(3, 6, 9, ConstraintProfile::mono_transposed());
    CHECK(mono.total == 104);
}

TEST_CASE("gta profile relaxes a single window") {
    // no (4x6,8) NTA exists, but (2,2,3)-generalized triple arrays do
    auto nta = enumerate(4, 6, 8, ConstraintProfile::nta());
    CHECK(nta.total == 0);
    EnumerateOptions opts;
    opts.first_only = true;
    auto gta = enumerate(4, 6, 8, ConstraintProfile::gta(2, 2, 3), opts);
    CHECK(gta.total == 1);
    const ClassReport rep = classify(gta.arrays.at(0));
    CHECK(rep.omega_rc <= 2);
    CHECK(rep.omega_rr <= 2);
    CHECK(rep.omega_cc <= 3);
}

TEST_CASE("report format is the documented line protocol") {
    auto rep = enumerate(3, 5, 7, ConstraintProfile::nta());
    std::string text = rep.format();
    CHECK(text.find("params 3 5 7\n") == 0);
    CHECK(text.find("profile nta\n") != std::string::npos);
    CHECK(text.find("total 2\n") != std::string::npos);
    CHECK(text.find("nodes ") != std::string::npos);
}

TEST_CASE("nonexistence predicates agree with empty enumerations") {
    for (auto [r, c, v] : {std::tuple{4, 5, 10}, {4, 6, 8}, {3, 4, 6}}) {
        auto pred = nonexistence_report(r, c, v);
        auto rep = enumerate(r, c, v, ConstraintProfile::nta());
        if (pred.any_fires) CHECK(rep.total == 0);
    }
}
