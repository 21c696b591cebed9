#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bicrit/core.hpp"
#include "bicrit/io.hpp"
#include "helpers.hpp"

using namespace bicrit;
using namespace testutil;

TEST_CASE("instance invariants") {
    CHECK_THROWS_AS(Instance::make(Model::P, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_p(1, {{3, -1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_p(1, {{-3, 1}}), std::invalid_argument);
    // duplicate / non-contiguous ids
    std::vector<Job> dup{{0, Rat(1), {Rat(1)}}, {0, Rat(1), {Rat(1)}}};
    CHECK_THROWS_AS(Instance::make(Model::P, 1, dup), std::invalid_argument);
    std::vector<Job> gap{{0, Rat(1), {Rat(1)}}, {2, Rat(1), {Rat(1)}}};
    CHECK_THROWS_AS(Instance::make(Model::P, 1, gap), std::invalid_argument);
    // model R processing vector length
    std::vector<Job> short_r{{0, Rat(1), {Rat(1)}}};
    CHECK_THROWS_AS(Instance::make(Model::R, 2, short_r), std::invalid_argument);
}

TEST_CASE("validate accepts a single placed job and flags the basic violations") {
    const Instance inst = make_p_unit(2, {5, 3});

    Schedule ok = Schedule::empty(2);
    ok.machines[0].push_back({0, Rat(0), Rat(5)});
    CHECK(static_cast<bool>(validate(ok, inst)));

    // overlap [0,3) vs [2,5): job1 has p=3 so place both on machine 0
    Schedule overlap = Schedule::empty(2);
    overlap.machines[0].push_back({1, Rat(0), Rat(3)});
    overlap.machines[0].push_back({0, Rat(2), Rat(7)});
    const auto v1 = validate(overlap, inst);
    CHECK_FALSE(v1.ok);
    CHECK(v1.violations[0].code == Violation::Code::Overlap);

    Schedule twice = Schedule::empty(2);
    twice.machines[0].push_back({0, Rat(0), Rat(5)});
    twice.machines[1].push_back({0, Rat(0), Rat(5)});
    const auto v2 = validate(twice, inst);
    CHECK_FALSE(v2.ok);
    CHECK(v2.violations[0].code == Violation::Code::DuplicateJob);

    Schedule wrong_len = Schedule::empty(2);
    wrong_len.machines[0].push_back({0, Rat(0), Rat(4)});
    CHECK(validate(wrong_len, inst).violations[0].code == Violation::Code::LengthMismatch);

    Schedule negative = Schedule::empty(2);
    negative.machines[0].push_back({0, Rat(-1), Rat(4)});
    CHECK_FALSE(validate(negative, inst).ok);

    Schedule unknown = Schedule::empty(2);
    unknown.machines[0].push_back({7, Rat(0), Rat(5)});
    CHECK(validate(unknown, inst).violations[0].code == Violation::Code::UnknownJob);
}

TEST_CASE("truncate keeps exactly the jobs finishing by t") {
    const Instance inst = make_p_unit(1, {2, 3, 2});
    Schedule s = Schedule::empty(1);
    s.machines[0].push_back({0, Rat(0), Rat(2)});
    s.machines[0].push_back({1, Rat(2), Rat(5)});
    s.machines[0].push_back({2, Rat(5), Rat(7)});

    const Schedule cut = truncate(s, Rat(5));
    REQUIRE(cut.machines[0].size() == 2);
    CHECK(cut.machines[0][0].completion == 2);
    CHECK(cut.machines[0][1].completion == 5);  // boundary job kept
    CHECK(static_cast<bool>(validate(cut, inst)));

    CHECK(truncate(s, Rat(0)).scheduled_jobs() == 0);
    const Schedule same = truncate(s, s.makespan());
    CHECK(same.scheduled_jobs() == 3);
    CHECK(same.makespan() == s.makespan());

    CHECK_THROWS_AS(truncate(s, Rat(-1)), std::domain_error);
}

TEST_CASE("compose shifts new jobs by the prefix makespan and drops duplicates") {
    const Instance inst = make_p_unit(2, {3, 3, 4, 3});

    Schedule s1 = Schedule::empty(2);
    s1.machines[0].push_back({0, Rat(0), Rat(3)});
    s1.machines[1].push_back({1, Rat(0), Rat(3)});

    Schedule s2 = Schedule::empty(2);
    s2.machines[0].push_back({2, Rat(0), Rat(4)});

    const Schedule c = compose(s1, s2);
    CHECK(static_cast<bool>(validate(c, inst)));
    CHECK(c.completions(4)[2].value() == 7);  // offset 3 + completion 4
    CHECK(c.makespan() == 7);

    // disjoint makespans add up
    Schedule s3 = Schedule::empty(2);
    s3.machines[0].push_back({2, Rat(0), Rat(4)});
    s3.machines[1].push_back({3, Rat(0), Rat(3)});
    Schedule base = Schedule::empty(2);
    base.machines[0].push_back({0, Rat(0), Rat(3)});
    base.machines[0].push_back({1, Rat(3), Rat(6)});
    Schedule c2 = compose(base, s3);
    CHECK(c2.makespan() == 6 + 4);

    // s2 subset of s1 by job set: result equals s1
    Schedule dup = Schedule::empty(2);
    dup.machines[1].push_back({0, Rat(0), Rat(3)});
    const Schedule c3 = compose(s1, dup);
    CHECK(c3.scheduled_jobs() == 2);
    CHECK(c3.completions(4)[0].value() == 3);

    // composing onto an empty schedule is the identity
    const Schedule c4 = compose(Schedule::empty(2), s1);
    CHECK(c4.scheduled_jobs() == 2);
    CHECK(c4.makespan() == s1.makespan());
}

TEST_CASE("metrics on the worked examples") {
    // single machine, SPT order of (p,w) = (1,1),(2,1)
    const Instance one = make_p(1, {{1, 1}, {2, 1}});
    Schedule s = Schedule::empty(1);
    s.machines[0].push_back({0, Rat(0), Rat(1)});
    s.machines[0].push_back({1, Rat(1), Rat(3)});
    const auto m = metrics(s, one);
    CHECK(m.cmax == 3);
    CHECK(m.weighted_sum == 4);

    // m=2, p={3,3,4}: 13 is optimal (confirmed by the order-enumerating oracle)
    const Instance inst = make_p_unit(2, {3, 3, 4});
    CHECK(brute_weighted_completion(inst) == 13);
    Schedule spt_like = Schedule::empty(2);
    spt_like.machines[0].push_back({0, Rat(0), Rat(3)});
    spt_like.machines[0].push_back({2, Rat(3), Rat(7)});
    spt_like.machines[1].push_back({1, Rat(0), Rat(3)});
    const auto m2 = metrics(spt_like, inst);
    CHECK(m2.cmax == 7);
    CHECK(m2.weighted_sum == 13);

    const Instance none = make_p_unit(2, {});
    const auto m3 = metrics(Schedule::empty(2), none);
    CHECK(m3.cmax == 0);
    CHECK(m3.weighted_sum == 0);

    // missing job
    Schedule partial = Schedule::empty(2);
    partial.machines[0].push_back({0, Rat(0), Rat(3)});
    CHECK_THROWS_AS(metrics(partial, inst), std::invalid_argument);
}

TEST_CASE("closure fuzz: truncation and composition preserve validity") {
    SplitMix64 rng(20240811);
    for (int iter = 0; iter < 300; ++iter) {
        const Instance inst = random_instance(rng, iter % 2 == 0 ? Model::P : Model::R);
        const Schedule s1 = random_schedule(inst, rng, false);
        const Schedule s2 = random_schedule(inst, rng, false);
        REQUIRE(static_cast<bool>(validate(s1, inst)));
        REQUIRE(static_cast<bool>(validate(s2, inst)));

        const Rat t = Rat(rng.uniform(0, 50)) / Rat(rng.uniform(1, 4));
        const Schedule cut = truncate(s1, t);
        REQUIRE(static_cast<bool>(validate(cut, inst)));
        for (const auto& mach : cut.machines)
            for (const Placement& p : mach) REQUIRE(p.completion <= t);

        const Schedule c = compose(s1, s2);
        REQUIRE(static_cast<bool>(validate(c, inst)));

        // completion identity, exact
        const Rat offset = s1.makespan();
        const auto c1 = s1.completions(inst.njobs());
        const auto c2 = s2.completions(inst.njobs());
        const auto cc = c.completions(inst.njobs());
        for (int j = 0; j < inst.njobs(); ++j) {
            const std::size_t ji = static_cast<std::size_t>(j);
            if (c1[ji]) {
                REQUIRE(cc[ji].has_value());
                REQUIRE(*cc[ji] == *c1[ji]);
            } else if (c2[ji]) {
                REQUIRE(cc[ji].has_value());
                REQUIRE(*cc[ji] == offset + *c2[ji]);
            } else {
                REQUIRE_FALSE(cc[ji].has_value());
            }
        }

        // identities
        const Schedule id1 = truncate(s1, s1.makespan());
        REQUIRE(id1.scheduled_jobs() == s1.scheduled_jobs());
        const Schedule id2 = compose(Schedule::empty(inst.machines), s1);
        REQUIRE(id2.scheduled_jobs() == s1.scheduled_jobs());
        REQUIRE(id2.makespan() == s1.makespan());
    }
}
