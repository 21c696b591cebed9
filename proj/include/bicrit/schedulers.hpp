#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bicrit/core.hpp"

namespace bicrit {

enum class SchedulerName { SPT, WSPT_KK, HORN, LPT, LIST, EXACT_MAKESPAN, EXACT_AVG };

// A named scheduler together with its claimed approximation factor (rational
// upper bound, if one is claimed at all). The factors multiply the composed
// guarantee pair when approximate prefixes/tails replace the exact oracles.
struct SchedulerSpec {
    SchedulerName name;
    std::optional<Rat> claimed_ratio;

    static SchedulerSpec by_name(SchedulerName name);
};

// Shortest processing time first, list-scheduled to the earliest available
// machine (ties to the lowest machine index). Model P. Optimal for the
// unweighted completion sum.
Schedule spt(const Instance& inst);

// Global Smith order, list-scheduled. Model P. Kawaguchi-Kyan: within
// (sqrt(2)+1)/2 of the optimal weighted completion sum.
Schedule wspt_kk(const Instance& inst);

// Exact minimum completion sum on unrelated machines, unit weights only:
// min-cost matching of jobs to (machine, position-from-end) slots with slot
// cost k * p_ij, realized back-to-back per machine.
Schedule horn_unrelated(const Instance& inst);

// Longest processing time first / explicit-order list scheduling. Model P.
Schedule lpt(const Instance& inst);
Schedule list_schedule(const Instance& inst, const std::vector<long>& order);

// Builds a complete-instance scheduler / a subset (tail) scheduler from a
// name. EXACT_* dispatch to the brute-force oracles.
std::function<Schedule(const Instance&)> make_avg_scheduler(SchedulerName name);
std::function<Schedule(const Instance&, const std::vector<long>&)> make_tail_scheduler(
    SchedulerName name);

std::optional<SchedulerName> scheduler_from_string(const std::string& s);
std::string scheduler_to_string(SchedulerName name);

}  // namespace bicrit
