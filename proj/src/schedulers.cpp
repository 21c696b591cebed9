#include "bicrit/schedulers.hpp"

#include <algorithm>

#include "bicrit/errors.hpp"
#include "bicrit/oracles.hpp"

namespace bicrit {

namespace {

void require_model(const Instance& inst, Model want, const char* who) {
    if (inst.model != want)
        throw UnsupportedModelError(std::string(who) + " requires the " +
                                    (want == Model::P ? "identical" : "unrelated") +
                                    "-machines model");
}

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// Hungarian algorithm with potentials. Exact rational arithmetic keeps the
// matching deterministic; ties resolve to the lowest column index.
std::vector<int> hungarian(const std::vector<std::vector<Rat>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    const int s = static_cast<int>(cost[0].size());

    Rat big = 1;
    for (const auto& row : cost)
        for (const Rat& c : row) big += c < 0 ? -c : c;

    std::vector<Rat> u(static_cast<std::size_t>(n + 1), Rat(0));
    std::vector<Rat> v(static_cast<std::size_t>(s + 1), Rat(0));
    std::vector<int> match(static_cast<std::size_t>(s + 1), 0);  // column -> row (1-based)
    std::vector<int> way(static_cast<std::size_t>(s + 1), 0);

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<Rat> minv(static_cast<std::size_t>(s + 1), big);
        std::vector<char> used(static_cast<std::size_t>(s + 1), 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = match[static_cast<std::size_t>(j0)];
            Rat delta = big;
            int j1 = -1;
            for (int j = 1; j <= s; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                Rat cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)] -
                          u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= s; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0);
    }

    std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= s; ++j)
        if (match[static_cast<std::size_t>(j)] != 0)
            row_to_col[static_cast<std::size_t>(match[static_cast<std::size_t>(j)] - 1)] = j - 1;
    return row_to_col;
}

}  // namespace

SchedulerSpec SchedulerSpec::by_name(SchedulerName name) {
    switch (name) {
        case SchedulerName::SPT:
            return {name, Rat(1)};  // unit weights on identical machines
        case SchedulerName::WSPT_KK:
            return {name, Rat(1207107, 1000000)};  // (sqrt(2)+1)/2, rounded up
        case SchedulerName::HORN:
            return {name, Rat(1)};
        case SchedulerName::LPT:
            return {name, Rat(4, 3)};  // not acceptance-gated, reporting only
        case SchedulerName::LIST:
            return {name, std::nullopt};
        case SchedulerName::EXACT_MAKESPAN:
        case SchedulerName::EXACT_AVG:
            return {name, Rat(1)};
    }
    return {name, std::nullopt};
}

Schedule list_schedule(const Instance& inst, const std::vector<long>& order) {
    require_model(inst, Model::P, "list_schedule");
    Schedule s = Schedule::empty(inst.machines);
    std::vector<Rat> load(static_cast<std::size_t>(inst.machines), Rat(0));
    for (long id : order) {
        int pick = 0;
        for (int i = 1; i < inst.machines; ++i)
            if (load[static_cast<std::size_t>(i)] < load[static_cast<std::size_t>(pick)]) pick = i;
        const Rat& p = inst.processing(id, pick);
        Rat& t = load[static_cast<std::size_t>(pick)];
        s.machines[static_cast<std::size_t>(pick)].push_back({id, t, t + p});
        t += p;
    }
    return s;
}

Schedule spt(const Instance& inst) {
    require_model(inst, Model::P, "spt");
    std::vector<long> order = inst.all_job_ids();
    std::sort(order.begin(), order.end(), [&](long a, long b) {
        const Rat& pa = inst.processing(a, 0);
        const Rat& pb = inst.processing(b, 0);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    return list_schedule(inst, order);
}

Schedule wspt_kk(const Instance& inst) {
    require_model(inst, Model::P, "wspt_kk");
    return list_schedule(inst, smith_order(inst, inst.all_job_ids(), 0));
}

Schedule lpt(const Instance& inst) {
    require_model(inst, Model::P, "lpt");
    std::vector<long> order = inst.all_job_ids();
    std::sort(order.begin(), order.end(), [&](long a, long b) {
        const Rat& pa = inst.processing(a, 0);
        const Rat& pb = inst.processing(b, 0);
        if (pa != pb) return pa > pb;
        return a < b;
    });
    return list_schedule(inst, order);
}

Schedule horn_unrelated(const Instance& inst) {
    require_model(inst, Model::R, "horn_unrelated");
    for (const Job& j : inst.jobs)
        if (j.weight != 1)
            throw UnsupportedModelError("horn_unrelated supports unit weights only (job " +
                                        std::to_string(j.id) + " has weight " +
                                        rat_to_string(j.weight) + ")");

    const int n = inst.njobs();
    const int m = inst.machines;
    if (n == 0) return Schedule::empty(m);

    // Slot (i, k): position k counted from the end of machine i's sequence;
    // a job there contributes k times its processing time to the sum.
    std::vector<std::vector<Rat>> cost(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        auto& row = cost[static_cast<std::size_t>(j)];
        row.reserve(static_cast<std::size_t>(n * m));
        for (int i = 0; i < m; ++i)
            for (int k = 1; k <= n; ++k) row.push_back(Rat(k) * inst.processing(j, i));
    }
    const std::vector<int> slot_of = hungarian(cost);

    std::vector<std::vector<std::pair<int, long>>> per_machine(static_cast<std::size_t>(m));
    for (int j = 0; j < n; ++j) {
        const int slot = slot_of[static_cast<std::size_t>(j)];
        const int machine = slot / n;
        const int k = slot % n + 1;
        per_machine[static_cast<std::size_t>(machine)].push_back({k, j});
    }

    Schedule s = Schedule::empty(m);
    for (int i = 0; i < m; ++i) {
        auto& slots = per_machine[static_cast<std::size_t>(i)];
        std::sort(slots.begin(), slots.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        Rat t = 0;
        for (const auto& [k, j] : slots) {
            const Rat& p = inst.processing(j, i);
            s.machines[static_cast<std::size_t>(i)].push_back({j, t, t + p});
            t += p;
        }
    }
    return s;
}

std::function<Schedule(const Instance&)> make_avg_scheduler(SchedulerName name) {
    switch (name) {
        case SchedulerName::SPT:
            return [](const Instance& i) { return spt(i); };
        case SchedulerName::WSPT_KK:
            return [](const Instance& i) { return wspt_kk(i); };
        case SchedulerName::HORN:
            return [](const Instance& i) { return horn_unrelated(i); };
        case SchedulerName::EXACT_AVG:
            return [](const Instance& i) { return opt_weighted_completion(i).witness; };
        default:
            throw std::invalid_argument("scheduler not usable as an average-completion prefix");
    }
}

std::function<Schedule(const Instance&, const std::vector<long>&)> make_tail_scheduler(
    SchedulerName name) {
    switch (name) {
        case SchedulerName::EXACT_MAKESPAN:
            return [](const Instance& i, const std::vector<long>& ids) {
                return opt_makespan(i, ids).witness;
            };
        case SchedulerName::LPT:
            return [](const Instance& i, const std::vector<long>& ids) {
                std::vector<long> order = ids;
                std::sort(order.begin(), order.end(), [&](long a, long b) {
                    const Rat& pa = i.processing(a, 0);
                    const Rat& pb = i.processing(b, 0);
                    if (pa != pb) return pa > pb;
                    return a < b;
                });
                return list_schedule(i, order);
            };
        default:
            throw std::invalid_argument("scheduler not usable as a makespan tail");
    }
}

std::optional<SchedulerName> scheduler_from_string(const std::string& s) {
    if (s == "spt") return SchedulerName::SPT;
    if (s == "wspt") return SchedulerName::WSPT_KK;
    if (s == "horn") return SchedulerName::HORN;
    if (s == "lpt") return SchedulerName::LPT;
    if (s == "list") return SchedulerName::LIST;
    if (s == "exact") return std::nullopt;  // caller picks EXACT_AVG or EXACT_MAKESPAN
    return std::nullopt;
}

std::string scheduler_to_string(SchedulerName name) {
    switch (name) {
        case SchedulerName::SPT: return "spt";
        case SchedulerName::WSPT_KK: return "wspt";
        case SchedulerName::HORN: return "horn";
        case SchedulerName::LPT: return "lpt";
        case SchedulerName::LIST: return "list";
        case SchedulerName::EXACT_MAKESPAN: return "exact-makespan";
        case SchedulerName::EXACT_AVG: return "exact-avg";
    }
    return "?";
}

}  // namespace bicrit
