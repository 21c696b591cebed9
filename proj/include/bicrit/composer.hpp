#pragma once

#include <functional>
#include <vector>

#include "bicrit/core.hpp"

namespace bicrit {

// Exact optima of an instance, computed once and shared across a sweep.
struct Baselines {
    Rat opt_makespan;     // L
    Rat opt_avg;          // optimal weighted completion sum
    Schedule avg_witness;  // realizes opt_avg

    static Baselines compute(const Instance& inst);
};

// Schedules the given job subset; used for the appended makespan tail.
using TailScheduler = std::function<Schedule(const Instance&, const std::vector<long>&)>;

TailScheduler exact_tail();

struct CompositionReport {
    Rat t;      // breakpoint time
    Rat alpha;  // t / L
    Schedule schedule;
    BicriteriaPoint point;  // measured against the exact optima
    Rat per_job_max_stretch;
    std::vector<long> tail_jobs;
};

// Truncates s_avg at t, reschedules the removed jobs with the tail scheduler,
// and appends. Prefix jobs keep their completion times; every tail job
// finishes by makespan(prefix) + tail makespan <= t + tail makespan.
CompositionReport breakpoint_compose(const Instance& inst, const Schedule& s_avg, const Rat& t,
                                     const TailScheduler& tail, const Baselines& base);

// The breakpoint-at-L composition: optimal-average prefix truncated at the
// optimal makespan, exact tail. Always a (2,2)-schedule, exactly.
CompositionReport two_two(const Instance& inst);
CompositionReport two_two(const Instance& inst, const Baselines& base);

// Evaluates every useful breakpoint: both criteria depend only on the
// truncated job set, which changes only at completion times, so
// {0} + {completions <= rho*L} + {rho*L} covers all distinct compositions.
std::vector<CompositionReport> sweep(const Instance& inst, const Schedule& s_avg, const Rat& rho,
                                     const TailScheduler& tail, const Baselines& base);

// Best sweep report with makespan_ratio <= 1 + rho: minimal avg_ratio, then
// minimal makespan_ratio, then minimal t. Exact prefix and tail oracles.
CompositionReport best_for_rho(const Instance& inst, const Rat& rho, const Baselines& base);
CompositionReport best_for_rho(const Instance& inst, const Rat& rho);
// Real-valued rho is pinned to a rational from below at denominator 10^12.
CompositionReport best_for_rho(const Instance& inst, double rho);

struct FrontierRow {
    Rat alpha;
    Rat makespan_ratio;
    Rat avg_ratio;
};

// Full breakpoint sweep of the exact-average witness with candidates at every
// completion time plus 0 and L; rows sorted by alpha, exact duplicates merged.
std::vector<FrontierRow> pareto_frontier(const Instance& inst);

// max_j C_j(composed) / C_j(reference), jobs with reference completion 0 excluded.
Rat per_job_stretch(const Schedule& composed, const Schedule& reference, const Instance& inst);

// Sum of w_j * C_j^k (k >= 1).
Rat generalized_minsum(const Schedule& s, const Instance& inst, int k);

}  // namespace bicrit
