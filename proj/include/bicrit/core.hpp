#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bicrit/rational.hpp"

namespace bicrit {

// Machine environments: P = identical parallel machines (one processing time
// per job), R = unrelated machines (one processing time per job per machine).
enum class Model { P, R };

struct Job {
    long id = 0;
    Rat weight;
    // Size 1 for model P, size m for model R.
    std::vector<Rat> processing;
};

struct Instance {
    Model model = Model::P;
    int machines = 1;
    std::vector<Job> jobs;  // sorted by id, ids contiguous from 0

    // Validates all invariants (m >= 1, ids contiguous from 0, non-negative
    // weights/processing, processing vector lengths) and normalizes job order.
    static Instance make(Model model, int machines, std::vector<Job> jobs);

    int njobs() const { return static_cast<int>(jobs.size()); }
    const Job& job(long id) const { return jobs[static_cast<std::size_t>(id)]; }
    const Rat& processing(long job_id, int machine) const {
        const Job& j = job(job_id);
        return model == Model::P ? j.processing[0] : j.processing[static_cast<std::size_t>(machine)];
    }
    std::vector<long> all_job_ids() const;
};

struct Placement {
    long job = 0;
    Rat start;
    Rat completion;
};

// Per-machine timed job sequences. Idle gaps are permitted; truncation relies
// on them. A schedule may cover any subset of the instance's jobs.
struct Schedule {
    std::vector<std::vector<Placement>> machines;

    static Schedule empty(int machine_count) {
        Schedule s;
        s.machines.resize(static_cast<std::size_t>(machine_count));
        return s;
    }

    Rat makespan() const;
    std::size_t scheduled_jobs() const;
    // Completion time per job id, or nullopt if the job is not scheduled.
    std::vector<std::optional<Rat>> completions(int njobs) const;
};

struct Violation {
    enum class Code {
        MachineCountMismatch,
        UnknownJob,
        DuplicateJob,
        NegativeStart,
        LengthMismatch,
        NotSorted,
        Overlap,
    };
    Code code;
    int machine = -1;
    long job = -1;
    std::string detail;
};

struct ValidationResult {
    bool ok = true;
    std::vector<Violation> violations;
    explicit operator bool() const { return ok; }
};

// True iff every schedule invariant holds against the instance: known jobs,
// each at most once, interval length equal to the processing time on the
// assigned machine, starts >= 0, per-machine intervals sorted and disjoint.
ValidationResult validate(const Schedule& s, const Instance& inst);

// Keeps exactly the jobs completing at or before t, times unchanged.
Schedule truncate(const Schedule& s, const Rat& t);

// Appends s2 to the end of s1: jobs of s1 keep their times, jobs of s2 not in
// s1 shift by makespan(s1), keeping s2's machine assignment and relative
// order. Duplicates are dropped from s2.
Schedule compose(const Schedule& s1, const Schedule& s2);

struct ScheduleMetrics {
    Rat cmax;
    Rat weighted_sum;
};

// Exact makespan and weighted completion sum. Requires a valid schedule
// covering all jobs of the instance.
ScheduleMetrics metrics(const Schedule& s, const Instance& inst);

// Same sums over whatever subset the schedule covers (no coverage check).
ScheduleMetrics partial_metrics(const Schedule& s, const Instance& inst);

// Measured quality of a schedule against the exact optima of its instance.
struct BicriteriaPoint {
    Rat makespan_ratio;
    Rat avg_ratio;
    Rat breakpoint;
};

}  // namespace bicrit
