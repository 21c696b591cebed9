#include "bicrit/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace bicrit {

Instance Instance::make(Model model, int machines, std::vector<Job> jobs) {
    if (machines < 1) throw std::invalid_argument("machine count must be >= 1");
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job& j = jobs[i];
        if (j.id != static_cast<long>(i))
            throw std::invalid_argument("job ids must be unique and contiguous from 0");
        if (j.weight < 0) throw std::invalid_argument("job weight must be non-negative");
        const std::size_t want = model == Model::P ? 1 : static_cast<std::size_t>(machines);
        if (j.processing.size() != want)
            throw std::invalid_argument("processing vector length mismatch for job " +
                                        std::to_string(j.id));
        for (const Rat& p : j.processing)
            if (p < 0) throw std::invalid_argument("processing times must be non-negative");
    }
    Instance inst;
    inst.model = model;
    inst.machines = machines;
    inst.jobs = std::move(jobs);
    return inst;
}

std::vector<long> Instance::all_job_ids() const {
    std::vector<long> ids(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) ids[i] = static_cast<long>(i);
    return ids;
}

Rat Schedule::makespan() const {
    Rat best = 0;
    for (const auto& mach : machines)
        for (const Placement& p : mach)
            if (p.completion > best) best = p.completion;
    return best;
}

std::size_t Schedule::scheduled_jobs() const {
    std::size_t n = 0;
    for (const auto& mach : machines) n += mach.size();
    return n;
}

std::vector<std::optional<Rat>> Schedule::completions(int njobs) const {
    std::vector<std::optional<Rat>> out(static_cast<std::size_t>(njobs));
    for (const auto& mach : machines)
        for (const Placement& p : mach)
            if (p.job >= 0 && p.job < njobs) out[static_cast<std::size_t>(p.job)] = p.completion;
    return out;
}

ValidationResult validate(const Schedule& s, const Instance& inst) {
    ValidationResult res;
    auto flag = [&res](Violation v) {
        res.ok = false;
        res.violations.push_back(std::move(v));
    };

    if (s.machines.size() != static_cast<std::size_t>(inst.machines)) {
        flag({Violation::Code::MachineCountMismatch, static_cast<int>(s.machines.size()), -1,
              "schedule has " + std::to_string(s.machines.size()) + " machines, instance has " +
                  std::to_string(inst.machines)});
        return res;
    }

    std::vector<char> seen(static_cast<std::size_t>(inst.njobs()), 0);
    for (int m = 0; m < inst.machines; ++m) {
        const auto& mach = s.machines[static_cast<std::size_t>(m)];
        for (std::size_t k = 0; k < mach.size(); ++k) {
            const Placement& p = mach[k];
            if (p.job < 0 || p.job >= inst.njobs()) {
                flag({Violation::Code::UnknownJob, m, p.job, "job id out of range"});
                continue;
            }
            if (seen[static_cast<std::size_t>(p.job)]++)
                flag({Violation::Code::DuplicateJob, m, p.job, "job scheduled more than once"});
            if (p.start < 0)
                flag({Violation::Code::NegativeStart, m, p.job, "start before time 0"});
            if (p.completion - p.start != inst.processing(p.job, m))
                flag({Violation::Code::LengthMismatch, m, p.job,
                      "interval length differs from processing time on machine " +
                          std::to_string(m)});
            if (k > 0) {
                const Placement& prev = mach[k - 1];
                if (p.start < prev.start)
                    flag({Violation::Code::NotSorted, m, p.job, "placements not sorted by start"});
                else if (p.start < prev.completion)
                    flag({Violation::Code::Overlap, m, p.job,
                          "interval overlaps the previous job on the machine"});
            }
        }
    }
    return res;
}

Schedule truncate(const Schedule& s, const Rat& t) {
    if (t < 0) throw std::domain_error("truncation time must be non-negative");
    Schedule out = Schedule::empty(static_cast<int>(s.machines.size()));
    for (std::size_t m = 0; m < s.machines.size(); ++m)
        for (const Placement& p : s.machines[m])
            if (p.completion <= t) out.machines[m].push_back(p);
    return out;
}

Schedule compose(const Schedule& s1, const Schedule& s2) {
    const Rat offset = s1.makespan();
    Schedule out = s1;
    if (s2.machines.size() > out.machines.size()) out.machines.resize(s2.machines.size());

    long max_id = -1;
    for (const auto& mach : s1.machines)
        for (const Placement& p : mach) max_id = std::max(max_id, p.job);
    for (const auto& mach : s2.machines)
        for (const Placement& p : mach) max_id = std::max(max_id, p.job);
    std::vector<char> in_s1(static_cast<std::size_t>(max_id + 1), 0);
    for (const auto& mach : s1.machines)
        for (const Placement& p : mach) in_s1[static_cast<std::size_t>(p.job)] = 1;

    for (std::size_t m = 0; m < s2.machines.size(); ++m)
        for (const Placement& p : s2.machines[m]) {
            if (in_s1[static_cast<std::size_t>(p.job)]) continue;
            out.machines[m].push_back({p.job, p.start + offset, p.completion + offset});
        }
    return out;
}

ScheduleMetrics partial_metrics(const Schedule& s, const Instance& inst) {
    ScheduleMetrics m{0, 0};
    for (const auto& mach : s.machines)
        for (const Placement& p : mach) {
            if (p.completion > m.cmax) m.cmax = p.completion;
            m.weighted_sum += inst.job(p.job).weight * p.completion;
        }
    return m;
}

ScheduleMetrics metrics(const Schedule& s, const Instance& inst) {
    ValidationResult v = validate(s, inst);
    if (!v.ok) throw std::invalid_argument("metrics on invalid schedule: " + v.violations.front().detail);
    if (s.scheduled_jobs() != static_cast<std::size_t>(inst.njobs()))
        throw std::invalid_argument("metrics requires a schedule covering every job");
    return partial_metrics(s, inst);
}

}  // namespace bicrit
