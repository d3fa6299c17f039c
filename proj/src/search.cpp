#include "rcdesign/search.hpp"

#include "rcdesign/canon.hpp"
#include "rcdesign/propagate.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rcd {

std::string EnumerationReport::format() const {
    std::ostringstream out;
    out << "params " << r << ' ' << c << ' ' << v << '\n';
    out << "profile " << profile << '\n';
    out << "total " << total << '\n';
    for (const auto& [order, count] : by_aut) out << "aut " << order << ' ' << count << '\n';
    out << "nodes " << nodes << '\n';
    return out.str();
}

namespace {

struct StopSearch {};

// One depth-first worker. Owns its grid and scratch estimate state; no
// state is shared between workers.
struct Walker {
    const Params* params;
    const ConstraintProfile* profile;
    bool use_propagation = true;
    bool first_only = false;
    bool emit = false;

    Grid grid;
    EstimateState scratch;
    std::uint64_t nodes = 0;
    std::uint64_t total = 0;
    std::map<std::int64_t, std::uint64_t> by_aut;
    std::vector<Grid> arrays;

    // collect mode: stop descending at this depth and stash prefixes
    int collect_depth = -1;
    std::vector<Grid>* collect_sink = nullptr;

    void reset_counts() {
        nodes = 0;
        total = 0;
        by_aut.clear();
        arrays.clear();
    }

    void run_from(const Grid& start) {
        grid = start;
        try {
            dfs(grid.filled);
        } catch (const StopSearch&) {
        }
    }

    void dfs(int k) {
        ++nodes;
        const int rc = grid.rows * grid.cols;
        if (k == rc) {
            bool accepted = leaf();
            if (accepted && collect_depth == rc) collect_sink->push_back(grid);
            return;
        }

        CellRef next{k / grid.cols, k % grid.cols};
        symset candidates;
        if (use_propagation) {
            PropagateResult pr =
                propagate_fixpoint(grid, *params, *profile, next, &scratch);
            if (!pr.completable) return;
            candidates = pr.candidates;
        } else {
            candidates = basic_candidates(next);
            if (!basic_consistent()) return;
        }
        if (k > 0 && !is_canonical(grid, true)) return;
        if (collect_depth >= 0 && k == collect_depth) {
            collect_sink->push_back(grid);
            return;
        }

        for (symset rest = candidates; rest;) {
            int s = sym_min(rest);
            rest &= rest - 1;
            grid.set(next.i, next.j, s);
            dfs(k + 1);
            grid.set(next.i, next.j, kEmpty);
        }
    }

    // Candidate set used when propagation is disabled: binary constraint,
    // replication caps and the canonical next-symbol rule only.
    symset basic_candidates(CellRef next) const {
        int counts[kMaxSymbols + 1] = {0};
        symset row = 0, col = 0;
        int v_max = -1;
        for (int i = 0; i < grid.rows; ++i)
            for (int j = 0; j < grid.cols; ++j) {
                int s = grid.at(i, j);
                if (s == kEmpty) continue;
                ++counts[s];
                v_max = std::max(v_max, s);
                if (i == next.i) row |= sym_bit(s);
                if (j == next.j) col |= sym_bit(s);
            }
        bool near_equi =
            profile->replication == ReplicationMode::TwoValued && !params->e.is_integer();
        symset may = 0;
        if (near_equi) {
            int at_hi = 0;
            for (int s = 0; s < grid.num_symbols; ++s)
                if (counts[s] == params->e_hi) ++at_hi;
            int limit = at_hi < params->v_plus ? params->e_lo : params->e_lo - 1;
            for (int s = 0; s < grid.num_symbols; ++s)
                if (counts[s] <= limit) may |= sym_bit(s);
        } else {
            for (int s = 0; s < grid.num_symbols; ++s)
                if (counts[s] < params->e_lo) may |= sym_bit(s);
        }
        symset next_set = may & sym_range(std::min(grid.num_symbols, v_max + 2));
        return next_set & ~row & ~col;
    }

    // Naive bound: no pair of lines may already exceed its upper
    // intersection bound, and completed pairs must reach the lower one.
    bool basic_consistent() const {
        const int r = grid.rows, c = grid.cols;
        std::vector<symset> rows(r, 0), cols(c, 0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (grid.at(i, j) != kEmpty) {
                    rows[i] |= sym_bit(grid.at(i, j));
                    cols[j] |= sym_bit(grid.at(i, j));
                }
        auto full = [](symset s, int cap) { return sym_count(s) == cap; };
        auto check = [&](const DimConstraint& dc, int lo, int hi, symset a, symset b,
                         bool both_full) {
            if (dc.mode == DimMode::Unconstrained || dc.mode == DimMode::Window) return true;
            int inter = sym_count(a & b);
            if (inter > hi) return false;
            if (both_full && inter < lo) return false;
            return true;
        };
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                if (!check(profile->rr, params->lrr_lo, params->lrr_hi, rows[i], rows[j],
                           full(rows[i], c) && full(rows[j], c)))
                    return false;
        for (int i = 0; i < c; ++i)
            for (int j = i + 1; j < c; ++j)
                if (!check(profile->cc, params->lcc_lo, params->lcc_hi, cols[i], cols[j],
                           full(cols[i], r) && full(cols[j], r)))
                    return false;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (!check(profile->rc, params->lrc_lo, params->lrc_hi, rows[i], cols[j],
                           full(rows[i], c) && full(cols[j], r)))
                    return false;
        return true;
    }

    bool leaf() {
        ClassReport rep = classify(grid);
        if (!profile_matches(*profile, rep)) return false;
        if (!is_canonical(grid, false)) return false;
        std::int64_t aut = autotopism_count(grid);
        ++total;
        ++by_aut[aut];
        if (emit || first_only) arrays.push_back(grid);
        if (first_only) throw StopSearch{};
        return true;
    }
};

void validate_inputs(int r, int c, int v, const ConstraintProfile& profile, Params& params) {
    if (!params_in_domain(r, c, v))
        throw std::domain_error("parameters out of domain: need 3 <= r, 3 <= c, max(r,c) <= v <= rc");
    if (v > kMaxSymbols) throw std::domain_error("v must be < 64");
    params = derive(r, c, v);
    if (auto issue = profile_admissibility_issue(profile, params))
        throw AdmissibilityError("parameters not admissible for profile " + profile.name +
                                 ": " + *issue);
}

std::vector<Grid> collect_jobs(const Params& params, const ConstraintProfile& profile,
                               int depth, bool use_propagation) {
    Walker w;
    w.params = &params;
    w.profile = &profile;
    w.use_propagation = use_propagation;
    std::vector<Grid> jobs;
    w.collect_depth = depth;
    w.collect_sink = &jobs;
    w.run_from(Grid(params.r, params.c, params.v));
    return jobs;
}

}  // namespace

std::vector<Grid> jobs_at_depth(int r, int c, int v, const ConstraintProfile& profile,
                                int depth) {
    Params params;
    validate_inputs(r, c, v, profile, params);
    if (depth < 0 || depth > r * c) throw std::domain_error("split depth out of range");
    return collect_jobs(params, profile, depth, true);
}

EnumerationReport enumerate(int r, int c, int v, const ConstraintProfile& profile,
                            const EnumerateOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    Params params;
    validate_inputs(r, c, v, profile, params);

    EnumerationReport rep;
    rep.r = r;
    rep.c = c;
    rep.v = v;
    rep.profile = profile.name + (profile.proper ? " proper" : "");

    int depth = opts.split.depth;
    bool split_mode =
        (depth > 0 || opts.threads > 1 || opts.split.job_index >= 0) && !opts.first_only;
    if (split_mode && depth == 0) depth = std::min(r * c, 2 * c);

    auto interrupted = [&]() { return opts.interrupt && opts.interrupt->load(); };

    if (!split_mode) {
        Walker w;
        w.params = &params;
        w.profile = &profile;
        w.use_propagation = opts.use_propagation;
        w.first_only = opts.first_only;
        w.emit = opts.emit;
        w.run_from(Grid(r, c, v));
        rep.total = w.total;
        rep.by_aut = std::move(w.by_aut);
        rep.nodes = w.nodes;
        rep.arrays = std::move(w.arrays);
    } else {
        std::vector<Grid> jobs = collect_jobs(params, profile, depth, opts.use_propagation);
        rep.jobs_total = std::int64_t(jobs.size());

        std::vector<std::int64_t> selected;
        for (std::int64_t idx = 0; idx < std::int64_t(jobs.size()); ++idx) {
            if (opts.split.job_index >= 0 && opts.split.job_index != idx) continue;
            if (opts.skip_jobs && std::binary_search(opts.skip_jobs->begin(),
                                                     opts.skip_jobs->end(), idx))
                continue;
            selected.push_back(idx);
        }

        struct JobResult {
            bool done = false;
            std::uint64_t total = 0, nodes = 0;
            std::map<std::int64_t, std::uint64_t> by_aut;
            std::vector<Grid> arrays;
        };
        std::vector<JobResult> results(jobs.size());
        std::atomic<size_t> cursor{0};

        auto work = [&]() {
            Walker w;
            w.params = &params;
            w.profile = &profile;
            w.use_propagation = opts.use_propagation;
            w.emit = opts.emit;
            while (true) {
                if (interrupted()) break;
                size_t pos = cursor.fetch_add(1);
                if (pos >= selected.size()) break;
                std::int64_t idx = selected[pos];
                w.reset_counts();
                w.run_from(jobs[idx]);
                JobResult& jr = results[idx];
                jr.done = true;
                jr.total = w.total;
                jr.nodes = w.nodes;
                jr.by_aut = w.by_aut;
                jr.arrays = w.arrays;
            }
        };

        int nthreads = std::max(1, opts.threads);
        if (nthreads == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }

        for (std::int64_t idx = 0; idx < std::int64_t(jobs.size()); ++idx) {
            const JobResult& jr = results[idx];
            if (!jr.done) continue;
            rep.jobs_done.push_back(idx);
            rep.total += jr.total;
            rep.nodes += jr.nodes;
            for (const auto& [k, n] : jr.by_aut) rep.by_aut[k] += n;
            rep.arrays.insert(rep.arrays.end(), jr.arrays.begin(), jr.arrays.end());
        }
        rep.interrupted = interrupted() && rep.jobs_done.size() < selected.size();
    }

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

EnumerationReport enumerate_proper(int r, int c, int v, const ConstraintProfile& base_profile,
                                   const EnumerateOptions& opts) {
    ConstraintProfile pr = base_profile;
    pr.proper = true;
    return enumerate(r, c, v, pr, opts);
}

}  // namespace rcd
