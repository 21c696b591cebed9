#include "bicrit/composer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bicrit/errors.hpp"
#include "bicrit/oracles.hpp"

namespace bicrit {

namespace {

constexpr long long kRhoDenominator = 1000000000000LL;  // 10^12

void require_positive_baselines(const Baselines& base) {
    if (base.opt_makespan == 0)
        throw DegenerateInstanceError("optimal makespan is zero; ratios are undefined");
    if (base.opt_avg == 0)
        throw DegenerateInstanceError("optimal weighted completion sum is zero; ratios are undefined");
}

}  // namespace

Baselines Baselines::compute(const Instance& inst) {
    Baselines b;
    b.opt_makespan = bicrit::opt_makespan(inst).value;
    OracleResult avg = opt_weighted_completion(inst);
    b.opt_avg = avg.value;
    b.avg_witness = std::move(avg.witness);
    return b;
}

TailScheduler exact_tail() {
    return [](const Instance& inst, const std::vector<long>& ids) {
        return opt_makespan(inst, ids).witness;
    };
}

CompositionReport breakpoint_compose(const Instance& inst, const Schedule& s_avg, const Rat& t,
                                     const TailScheduler& tail, const Baselines& base) {
    require_positive_baselines(base);
    if (t < 0) throw std::domain_error("breakpoint must be non-negative");

    const Schedule prefix = truncate(s_avg, t);
    std::vector<long> tail_jobs;
    for (const auto& mach : s_avg.machines)
        for (const Placement& p : mach)
            if (p.completion > t) tail_jobs.push_back(p.job);
    std::sort(tail_jobs.begin(), tail_jobs.end());

    const Schedule composed =
        tail_jobs.empty() ? prefix : compose(prefix, tail(inst, tail_jobs));
    const ScheduleMetrics m = metrics(composed, inst);

    CompositionReport rep;
    rep.t = t;
    rep.alpha = t / base.opt_makespan;
    rep.point = {m.cmax / base.opt_makespan, m.weighted_sum / base.opt_avg, t};
    rep.per_job_max_stretch = per_job_stretch(composed, s_avg, inst);
    rep.tail_jobs = std::move(tail_jobs);
    rep.schedule = composed;
    return rep;
}

CompositionReport two_two(const Instance& inst) { return two_two(inst, Baselines::compute(inst)); }

CompositionReport two_two(const Instance& inst, const Baselines& base) {
    return breakpoint_compose(inst, base.avg_witness, base.opt_makespan, exact_tail(), base);
}

std::vector<CompositionReport> sweep(const Instance& inst, const Schedule& s_avg, const Rat& rho,
                                     const TailScheduler& tail, const Baselines& base) {
    require_positive_baselines(base);
    if (rho < 0) throw std::domain_error("rho must be non-negative");

    const Rat limit = rho * base.opt_makespan;
    std::set<Rat> candidates{Rat(0), limit};
    for (const auto& mach : s_avg.machines)
        for (const Placement& p : mach)
            if (p.completion <= limit) candidates.insert(p.completion);

    // Identical tail sets recur across breakpoints; schedule each set once.
    std::map<std::vector<long>, Schedule> cache;
    TailScheduler cached = [&](const Instance& i, const std::vector<long>& ids) {
        auto it = cache.find(ids);
        if (it == cache.end()) it = cache.emplace(ids, tail(i, ids)).first;
        return it->second;
    };

    std::vector<CompositionReport> reports;
    reports.reserve(candidates.size());
    for (const Rat& t : candidates)
        reports.push_back(breakpoint_compose(inst, s_avg, t, cached, base));
    return reports;
}

CompositionReport best_for_rho(const Instance& inst, const Rat& rho, const Baselines& base) {
    const auto reports = sweep(inst, base.avg_witness, rho, exact_tail(), base);
    const Rat makespan_cap = 1 + rho;
    const CompositionReport* best = nullptr;
    for (const auto& r : reports) {
        if (r.point.makespan_ratio > makespan_cap) continue;
        if (best == nullptr || r.point.avg_ratio < best->point.avg_ratio ||
            (r.point.avg_ratio == best->point.avg_ratio &&
             (r.point.makespan_ratio < best->point.makespan_ratio ||
              (r.point.makespan_ratio == best->point.makespan_ratio && r.t < best->t))))
            best = &r;
    }
    // The t = 0 candidate is a pure optimal-makespan schedule, so a feasible
    // report always exists.
    return *best;
}

CompositionReport best_for_rho(const Instance& inst, const Rat& rho) {
    return best_for_rho(inst, rho, Baselines::compute(inst));
}

CompositionReport best_for_rho(const Instance& inst, double rho) {
    if (!(rho >= 0)) throw std::domain_error("rho must be non-negative");
    return best_for_rho(inst, floor_to_denominator(rho, kRhoDenominator));
}

std::vector<FrontierRow> pareto_frontier(const Instance& inst) {
    const Baselines base = Baselines::compute(inst);
    require_positive_baselines(base);

    std::set<Rat> candidates{Rat(0), base.opt_makespan};
    for (const auto& mach : base.avg_witness.machines)
        for (const Placement& p : mach) candidates.insert(p.completion);

    std::map<std::vector<long>, Schedule> cache;
    TailScheduler cached = [&](const Instance& i, const std::vector<long>& ids) {
        auto it = cache.find(ids);
        if (it == cache.end()) it = cache.emplace(ids, exact_tail()(i, ids)).first;
        return it->second;
    };

    std::vector<FrontierRow> rows;
    for (const Rat& t : candidates) {
        const CompositionReport rep = breakpoint_compose(inst, base.avg_witness, t, cached, base);
        FrontierRow row{rep.alpha, rep.point.makespan_ratio, rep.point.avg_ratio};
        if (!rows.empty() && rows.back().alpha == row.alpha &&
            rows.back().makespan_ratio == row.makespan_ratio &&
            rows.back().avg_ratio == row.avg_ratio)
            continue;
        rows.push_back(std::move(row));
    }
    return rows;
}

Rat per_job_stretch(const Schedule& composed, const Schedule& reference, const Instance& inst) {
    const auto ref = reference.completions(inst.njobs());
    const auto cur = composed.completions(inst.njobs());
    Rat worst = 0;
    bool any = false;
    for (int j = 0; j < inst.njobs(); ++j) {
        const auto& r = ref[static_cast<std::size_t>(j)];
        const auto& c = cur[static_cast<std::size_t>(j)];
        if (!r || !c || *r == 0) continue;
        const Rat stretch = *c / *r;
        if (!any || stretch > worst) worst = stretch;
        any = true;
    }
    return any ? worst : Rat(1);
}

Rat generalized_minsum(const Schedule& s, const Instance& inst, int k) {
    if (k < 1) throw std::domain_error("minsum exponent must be >= 1");
    Rat total = 0;
    for (const auto& mach : s.machines)
        for (const Placement& p : mach) {
            Rat pw = 1;
            for (int i = 0; i < k; ++i) pw *= p.completion;
            total += inst.job(p.job).weight * pw;
        }
    return total;
}

}  // namespace bicrit
