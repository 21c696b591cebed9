#include "bicrit/oracles.hpp"

#include <algorithm>

#include "bicrit/errors.hpp"

namespace bicrit {

namespace {

void check_caps(const Instance& inst, const std::vector<long>& subset, const char* who) {
    if (static_cast<int>(subset.size()) > kOracleMaxJobs || inst.machines > kOracleMaxMachines)
        throw SizeCapError(std::string(who) + ": enumeration budget is n <= " +
                           std::to_string(kOracleMaxJobs) + ", m <= " +
                           std::to_string(kOracleMaxMachines) + " (got n=" +
                           std::to_string(subset.size()) + ", m=" + std::to_string(inst.machines) +
                           ")");
    std::vector<char> seen(static_cast<std::size_t>(inst.njobs()), 0);
    for (long id : subset) {
        if (id < 0 || id >= inst.njobs())
            throw std::invalid_argument(std::string(who) + ": unknown job id " + std::to_string(id));
        if (seen[static_cast<std::size_t>(id)]++)
            throw std::invalid_argument(std::string(who) + ": duplicate job id " + std::to_string(id));
    }
}

// True if a must precede b under Smith's rule on the given machine.
bool smith_before(const Instance& inst, long a, long b, int machine) {
    const Rat& pa = inst.processing(a, machine);
    const Rat& pb = inst.processing(b, machine);
    if (pa == 0 || pb == 0) {
        if (pa == 0 && pb == 0) return a < b;
        return pa == 0;
    }
    const Rat lhs = inst.job(a).weight * pb;
    const Rat rhs = inst.job(b).weight * pa;
    if (lhs != rhs) return lhs > rhs;
    return a < b;
}

Schedule realize_assignment(const Instance& inst,
                            const std::vector<std::vector<long>>& machine_order) {
    Schedule s = Schedule::empty(inst.machines);
    for (int m = 0; m < inst.machines; ++m) {
        Rat t = 0;
        for (long id : machine_order[static_cast<std::size_t>(m)]) {
            const Rat& p = inst.processing(id, m);
            s.machines[static_cast<std::size_t>(m)].push_back({id, t, t + p});
            t += p;
        }
    }
    return s;
}

}  // namespace

std::vector<long> smith_order(const Instance& inst, const std::vector<long>& ids, int machine) {
    std::vector<long> out = ids;
    std::sort(out.begin(), out.end(),
              [&](long a, long b) { return smith_before(inst, a, b, machine); });
    return out;
}

OracleResult opt_makespan(const Instance& inst, const std::vector<long>& subset) {
    check_caps(inst, subset, "opt_makespan");
    const int m = inst.machines;
    const int n = static_cast<int>(subset.size());
    if (n == 0) return {Rat(0), Schedule::empty(m), 1};

    // Longest first prunes earlier; ties broken by id for determinism.
    std::vector<long> order = subset;
    std::sort(order.begin(), order.end(), [&](long a, long b) {
        const Rat& pa = inst.processing(a, 0);
        const Rat& pb = inst.processing(b, 0);
        if (inst.model == Model::P && pa != pb) return pa > pb;
        return a < b;
    });

    std::vector<Rat> load(static_cast<std::size_t>(m), Rat(0));
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    bool have_best = false;
    Rat best;
    std::vector<int> best_assign;
    std::uint64_t leaves = 0;

    auto rec = [&](auto&& self, int k, const Rat& cur_max) -> void {
        if (k == n) {
            ++leaves;
            if (!have_best || cur_max < best) {
                best = cur_max;
                best_assign = assign;
                have_best = true;
            }
            return;
        }
        const long id = order[static_cast<std::size_t>(k)];
        // Identical machines are interchangeable: the first job may go to
        // machine 0 without losing any optimum.
        const int limit = (inst.model == Model::P && k == 0) ? 1 : m;
        for (int i = 0; i < limit; ++i) {
            const Rat& p = inst.processing(id, i);
            Rat& li = load[static_cast<std::size_t>(i)];
            li += p;
            const Rat next_max = std::max(cur_max, li);
            // a subtree whose partial maximum already reaches the incumbent
            // cannot improve it
            if (!have_best || next_max < best) {
                assign[static_cast<std::size_t>(k)] = i;
                self(self, k + 1, next_max);
            }
            li -= p;
        }
    };
    rec(rec, 0, Rat(0));

    std::vector<std::vector<long>> per_machine(static_cast<std::size_t>(m));
    for (int k = 0; k < n; ++k)
        per_machine[static_cast<std::size_t>(best_assign[static_cast<std::size_t>(k)])].push_back(
            order[static_cast<std::size_t>(k)]);
    for (auto& v : per_machine) std::sort(v.begin(), v.end());
    return {best, realize_assignment(inst, per_machine), leaves};
}

OracleResult opt_makespan(const Instance& inst) { return opt_makespan(inst, inst.all_job_ids()); }

OracleResult opt_weighted_completion(const Instance& inst, const std::vector<long>& subset) {
    check_caps(inst, subset, "opt_weighted_completion");
    const int m = inst.machines;
    const int n = static_cast<int>(subset.size());
    if (n == 0) return {Rat(0), Schedule::empty(m), 1};

    bool have_best = false;
    Rat best;
    std::uint64_t leaves = 0;
    std::vector<std::vector<long>> best_orders;

    if (inst.model == Model::P) {
        // On identical machines the Smith order is global, so assigning jobs
        // in that order builds every machine's sequence correctly and the
        // weighted sum grows incrementally.
        const std::vector<long> order = smith_order(inst, subset, 0);
        std::vector<Rat> load(static_cast<std::size_t>(m), Rat(0));
        std::vector<int> assign(static_cast<std::size_t>(n), 0);
        std::vector<int> best_assign;

        auto rec = [&](auto&& self, int k, const Rat& partial) -> void {
            if (k == n) {
                ++leaves;
                if (!have_best || partial < best) {
                    best = partial;
                    best_assign = assign;
                    have_best = true;
                }
                return;
            }
            const long id = order[static_cast<std::size_t>(k)];
            const Rat& p = inst.processing(id, 0);
            const Rat& w = inst.job(id).weight;
            const int limit = k == 0 ? 1 : m;
            for (int i = 0; i < limit; ++i) {
                Rat& li = load[static_cast<std::size_t>(i)];
                li += p;
                const Rat next = partial + w * li;
                // remaining contributions are non-negative
                if (!have_best || next < best) {
                    assign[static_cast<std::size_t>(k)] = i;
                    self(self, k + 1, next);
                }
                li -= p;
            }
        };
        rec(rec, 0, Rat(0));

        best_orders.assign(static_cast<std::size_t>(m), {});
        for (int k = 0; k < n; ++k)
            best_orders[static_cast<std::size_t>(best_assign[static_cast<std::size_t>(k)])]
                .push_back(order[static_cast<std::size_t>(k)]);
    } else {
        // Unrelated machines: per-machine Smith orders differ, so evaluate
        // each complete assignment with its machines sequenced independently.
        std::vector<int> assign(static_cast<std::size_t>(n), 0);
        std::vector<std::vector<long>> groups(static_cast<std::size_t>(m));

        auto eval = [&]() {
            ++leaves;
            for (auto& g : groups) g.clear();
            for (int k = 0; k < n; ++k)
                groups[static_cast<std::size_t>(assign[static_cast<std::size_t>(k)])].push_back(
                    subset[static_cast<std::size_t>(k)]);
            Rat total = 0;
            for (int i = 0; i < m; ++i) {
                std::vector<long>& g = groups[static_cast<std::size_t>(i)];
                std::sort(g.begin(), g.end(),
                          [&](long a, long b) { return smith_before(inst, a, b, i); });
                Rat t = 0;
                for (long id : g) {
                    t += inst.processing(id, i);
                    total += inst.job(id).weight * t;
                }
            }
            if (!have_best || total < best) {
                best = total;
                best_orders = groups;
                have_best = true;
            }
        };
        auto rec = [&](auto&& self, int k) -> void {
            if (k == n) {
                eval();
                return;
            }
            for (int i = 0; i < m; ++i) {
                assign[static_cast<std::size_t>(k)] = i;
                self(self, k + 1);
            }
        };
        rec(rec, 0);
    }

    return {best, realize_assignment(inst, best_orders), leaves};
}

OracleResult opt_weighted_completion(const Instance& inst) {
    return opt_weighted_completion(inst, inst.all_job_ids());
}

}  // namespace bicrit
