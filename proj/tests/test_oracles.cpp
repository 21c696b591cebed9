#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bicrit/errors.hpp"
#include "bicrit/oracles.hpp"
#include "helpers.hpp"

using namespace bicrit;
using namespace testutil;

TEST_CASE("smith_order") {
    const Instance inst = make_p(1, {{2, 1}, {1, 2}});
    CHECK(smith_order(inst, {0, 1}, 0) == std::vector<long>{1, 0});  // 2/1 > 1/2

    const Instance ties = make_p(1, {{2, 2}, {1, 1}});  // equal ratios
    CHECK(smith_order(ties, {1, 0}, 0) == std::vector<long>{0, 1});

    const Instance single = make_p(1, {{5, 3}});
    CHECK(smith_order(single, {0}, 0) == std::vector<long>{0});

    // p = 0 goes first regardless of weight
    const Instance zero = make_p(1, {{0, 0}, {1, 9}});
    CHECK(smith_order(zero, {0, 1}, 0) == std::vector<long>{0, 1});
}

TEST_CASE("opt_makespan examples") {
    const Instance inst = make_p_unit(2, {3, 3, 4});
    const OracleResult r = opt_makespan(inst);
    CHECK(r.value == 6);
    CHECK(static_cast<bool>(validate(r.witness, inst)));
    CHECK(r.witness.makespan() == 6);

    const Instance m1 = make_p_unit(1, {2, 5, 9});
    CHECK(opt_makespan(m1).value == 16);

    const Instance n1 = make_p_unit(3, {7});
    CHECK(opt_makespan(n1).value == 7);

    const Instance none = make_p_unit(2, {});
    CHECK(opt_makespan(none).value == 0);
}

TEST_CASE("opt_weighted_completion examples") {
    const Instance weighted = make_p(1, {{2, 1}, {1, 2}});
    const OracleResult r = opt_weighted_completion(weighted);
    CHECK(r.value == 5);  // job1 first: 2*1 + 1*3
    CHECK(static_cast<bool>(validate(r.witness, weighted)));
    CHECK(partial_metrics(r.witness, weighted).weighted_sum == 5);

    const Instance inst = make_p_unit(2, {3, 3, 4});
    CHECK(opt_weighted_completion(inst).value == 13);

    const Instance r2 = make_r(2, {{1, 10}, {10, 1}}, {1, 1});
    CHECK(opt_weighted_completion(r2).value == 2);
}

TEST_CASE("oracle size caps") {
    SuiteConfig cfg;
    cfg.n_min = cfg.n_max = 11;
    cfg.m_min = cfg.m_max = 2;
    const Instance big = generate_one(cfg, 0);
    CHECK_THROWS_AS(opt_makespan(big), SizeCapError);
    CHECK_THROWS_AS(opt_weighted_completion(big), SizeCapError);

    std::vector<Job> jobs;
    for (long i = 0; i < 3; ++i) jobs.push_back({i, Rat(1), {Rat(2)}});
    const Instance wide = Instance::make(Model::P, 5, std::move(jobs));
    CHECK_THROWS_AS(opt_makespan(wide), SizeCapError);
}

TEST_CASE("witness achieves the reported value") {
    SplitMix64 rng(71);
    for (int iter = 0; iter < 40; ++iter) {
        const Instance inst = random_instance(rng, iter % 2 ? Model::P : Model::R, 7, 3);
        const OracleResult mk = opt_makespan(inst);
        CHECK(static_cast<bool>(validate(mk.witness, inst)));
        CHECK(mk.witness.scheduled_jobs() == static_cast<std::size_t>(inst.njobs()));
        CHECK(mk.witness.makespan() == mk.value);

        const OracleResult avg = opt_weighted_completion(inst);
        CHECK(static_cast<bool>(validate(avg.witness, inst)));
        CHECK(partial_metrics(avg.witness, inst).weighted_sum == avg.value);
    }
}

TEST_CASE("Smith-restricted enumeration matches full order enumeration (n <= 6)") {
    SplitMix64 rng(1234);
    for (int iter = 0; iter < 25; ++iter) {
        const Instance inst = random_instance(rng, iter % 2 ? Model::P : Model::R, 6, 3);
        if (inst.njobs() == 0) continue;
        CHECK(opt_weighted_completion(inst).value == brute_weighted_completion(inst));
    }
}

TEST_CASE("adjacent exchange: fixing a Smith violation never increases the sum") {
    SplitMix64 rng(99);
    for (int iter = 0; iter < 60; ++iter) {
        const Instance inst = random_instance(rng, Model::P, 7, 1);
        const int n = inst.njobs();
        if (n < 2) continue;
        std::vector<long> order = inst.all_job_ids();
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(i) - 1))]);

        auto seq_sum = [&](const std::vector<long>& seq) {
            Rat t = 0, sum = 0;
            for (long id : seq) {
                t += inst.processing(id, 0);
                sum += inst.job(id).weight * t;
            }
            return sum;
        };

        for (std::size_t k = 0; k + 1 < order.size(); ++k) {
            const long a = order[k], b = order[k + 1];
            const Rat wa = inst.job(a).weight, wb = inst.job(b).weight;
            const Rat pa = inst.processing(a, 0), pb = inst.processing(b, 0);
            // a -> b violates Smith's rule when w_a p_b < w_b p_a
            if (wa * pb < wb * pa) {
                std::vector<long> fixed = order;
                std::swap(fixed[k], fixed[k + 1]);
                CHECK(seq_sum(fixed) <= seq_sum(order));
            }
        }
    }
}

TEST_CASE("makespan monotone under job subsets") {
    SplitMix64 rng(4242);
    for (int iter = 0; iter < 40; ++iter) {
        const Instance inst = random_instance(rng, iter % 2 ? Model::P : Model::R, 7, 3);
        if (inst.njobs() == 0) continue;
        const Rat full = opt_makespan(inst).value;
        std::vector<long> subset;
        for (long id : inst.all_job_ids())
            if (rng.uniform(0, 1) == 0) subset.push_back(id);
        CHECK(opt_makespan(inst, subset).value <= full);
    }
}
