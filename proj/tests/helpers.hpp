#pragma once

// Shared test utilities: small instance builders, an order-enumerating
// reference oracle that is independent of the library's oracles, and random
// valid-schedule generation for the closure fuzz.

#include <algorithm>
#include <vector>

#include "bicrit/core.hpp"
#include "bicrit/io.hpp"

namespace testutil {

using namespace bicrit;

inline Instance make_p(int machines, const std::vector<std::pair<long, long>>& pw) {
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < pw.size(); ++i)
        jobs.push_back({static_cast<long>(i), Rat(pw[i].second), {Rat(pw[i].first)}});
    return Instance::make(Model::P, machines, std::move(jobs));
}

inline Instance make_p_unit(int machines, const std::vector<long>& ps) {
    std::vector<std::pair<long, long>> pw;
    for (long p : ps) pw.push_back({p, 1});
    return make_p(machines, pw);
}

inline Instance make_r(int machines, const std::vector<std::vector<long>>& p_by_machine,
                       const std::vector<long>& weights) {
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < p_by_machine.size(); ++i) {
        Job j;
        j.id = static_cast<long>(i);
        j.weight = Rat(weights[i]);
        for (long p : p_by_machine[i]) j.processing.push_back(Rat(p));
        jobs.push_back(std::move(j));
    }
    return Instance::make(Model::R, machines, std::move(jobs));
}

// Reference optimum by full enumeration of assignments *and* per-machine
// orders (no Smith shortcut). Only feasible for n <= 6.
inline Rat brute_weighted_completion(const Instance& inst) {
    const int n = inst.njobs();
    const int m = inst.machines;
    Rat best;
    bool have = false;
    std::vector<int> assign(static_cast<std::size_t>(n), 0);

    auto eval_orders = [&]() {
        std::vector<std::vector<long>> groups(static_cast<std::size_t>(m));
        for (int j = 0; j < n; ++j)
            groups[static_cast<std::size_t>(assign[static_cast<std::size_t>(j)])].push_back(j);
        auto perm_machine = [&](auto&& self, std::size_t mi, const Rat& acc) -> void {
            if (mi == groups.size()) {
                if (!have || acc < best) {
                    best = acc;
                    have = true;
                }
                return;
            }
            std::vector<long>& g = groups[mi];
            std::sort(g.begin(), g.end());
            std::vector<long> perm = g;
            do {
                Rat t = 0, sum = 0;
                for (long id : perm) {
                    t += inst.processing(id, static_cast<int>(mi));
                    sum += inst.job(id).weight * t;
                }
                self(self, mi + 1, acc + sum);
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
        perm_machine(perm_machine, 0, Rat(0));
    };

    auto rec = [&](auto&& self, int k) -> void {
        if (k == n) {
            eval_orders();
            return;
        }
        for (int i = 0; i < m; ++i) {
            assign[static_cast<std::size_t>(k)] = i;
            self(self, k + 1);
        }
    };
    if (n == 0) return Rat(0);
    rec(rec, 0);
    return best;
}

// Random valid schedule: random machine per job, random order, random integer
// idle gaps, optionally covering only a subset of the jobs.
inline Schedule random_schedule(const Instance& inst, SplitMix64& rng, bool full_coverage) {
    Schedule s = Schedule::empty(inst.machines);
    std::vector<long> ids = inst.all_job_ids();
    std::vector<long> chosen;
    for (long id : ids)
        if (full_coverage || rng.uniform(0, 3) > 0) chosen.push_back(id);
    // shuffle
    for (std::size_t i = chosen.size(); i > 1; --i)
        std::swap(chosen[i - 1], chosen[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(i) - 1))]);

    std::vector<Rat> clock(static_cast<std::size_t>(inst.machines), Rat(0));
    for (long id : chosen) {
        const int mi = static_cast<int>(rng.uniform(0, inst.machines - 1));
        Rat& t = clock[static_cast<std::size_t>(mi)];
        t += Rat(rng.uniform(0, 4));  // idle gap
        const Rat& p = inst.processing(id, mi);
        s.machines[static_cast<std::size_t>(mi)].push_back({id, t, t + p});
        t += p;
    }
    return s;
}

inline Instance random_instance(SplitMix64& rng, Model model, int n_max = 8, int m_max = 3) {
    SuiteConfig cfg;
    cfg.model = model;
    cfg.n_min = 1;
    cfg.n_max = n_max;
    cfg.m_min = 1;
    cfg.m_max = m_max;
    cfg.seed = rng.next();
    return generate_one(cfg, 0);
}

}  // namespace testutil
