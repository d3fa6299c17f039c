#pragma once

#include "rcdesign/grid.hpp"
#include "rcdesign/params.hpp"
#include "rcdesign/profile.hpp"

#include <atomic>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rcd {

// Work splitting: fix the first `depth` cells per job. Jobs at a given depth
// are exactly the canonical, propagation-surviving prefixes of that length,
// so the union of per-job results is the full result and jobs are disjoint.
struct SplitSpec {
    int depth = 0;
    std::int64_t job_index = -1;  // -1 = run all jobs
    std::int64_t job_count = 0;   // informational, from "i/N"
};

struct EnumerationReport {
    int r = 0, c = 0, v = 0;
    std::string profile;
    std::uint64_t total = 0;
    std::map<std::int64_t, std::uint64_t> by_aut;
    std::uint64_t nodes = 0;
    double seconds = 0.0;
    std::vector<Grid> arrays;            // when emitting
    std::int64_t jobs_total = 0;         // split mode
    std::vector<std::int64_t> jobs_done; // split mode, ascending
    bool interrupted = false;

    std::string format() const;  // line-oriented report text
};

struct EnumerateOptions {
    bool emit = false;        // collect canonical arrays in the report
    bool first_only = false;  // stop after the first design found
    bool use_propagation = true;
    int threads = 1;
    SplitSpec split;
    const std::atomic<bool>* interrupt = nullptr;      // checked between jobs
    const std::vector<std::int64_t>* skip_jobs = nullptr;  // already-completed jobs (resume)
};

struct AdmissibilityError : std::domain_error {
    using std::domain_error::domain_error;
};

EnumerationReport enumerate(int r, int c, int v, const ConstraintProfile& profile,
                            const EnumerateOptions& opts = {});

// Enumerates the class profile and keeps only proper designs (those failing
// every intersection condition excluded by the class definition).
EnumerationReport enumerate_proper(int r, int c, int v, const ConstraintProfile& base_profile,
                                   const EnumerateOptions& opts = {});

std::vector<Grid> jobs_at_depth(int r, int c, int v, const ConstraintProfile& profile,
                                int depth);

}  // namespace rcd
