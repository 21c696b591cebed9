#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>

#include <nlohmann/json.hpp>

#include "bicrit/errors.hpp"
#include "bicrit/io.hpp"
#include "helpers.hpp"

using namespace bicrit;
using namespace testutil;
using nlohmann::json;

TEST_CASE("rational parsing and formatting") {
    CHECK(rat_to_string(Rat(7, 6)) == "7/6");
    CHECK(rat_to_string(Rat(14, 2)) == "7");
    CHECK(rat_parse("7/6") == Rat(7, 6));
    CHECK(rat_parse("-3/9") == Rat(-1, 3));
    CHECK(rat_parse("42") == 42);
    CHECK_THROWS_AS(rat_parse("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);

    CHECK(rat_from_double(0.5) == Rat(1, 2));
    CHECK(rat_from_double(0.1) != Rat(1, 10));  // binary expansion is exact, not decimal

    CHECK(floor_to_denominator(0.6931471805599453, 1000000) == Rat(693147, 1000000));
    CHECK(floor_to_denominator(1.0, 1000000) == 1);
    CHECK(floor_to_denominator(0.6931471805599453, 1000000) <= rat_from_double(0.6931471805599453));
}

TEST_CASE("instance json round trip") {
    const Instance p = make_p(2, {{3, 1}, {4, 5}});
    const Instance p2 = instance_from_json(instance_to_json(p));
    CHECK(p2.model == Model::P);
    CHECK(p2.machines == 2);
    CHECK(p2.njobs() == 2);
    CHECK(p2.processing(1, 0) == 4);
    CHECK(p2.job(1).weight == 5);

    const Instance r = make_r(2, {{1, 10}, {10, 1}}, {1, 1});
    const Instance r2 = instance_from_json(instance_to_json(r));
    CHECK(r2.model == Model::R);
    CHECK(r2.processing(0, 1) == 10);

    // rational fields as "num/den" strings
    const Instance frac = instance_from_json(json::parse(
        R"({"model":"P","machines":1,"jobs":[{"id":0,"weight":"1/3","p":"7/2"}]})"));
    CHECK(frac.job(0).weight == Rat(1, 3));
    CHECK(frac.processing(0, 0) == Rat(7, 2));

    CHECK_THROWS_AS(instance_from_json(json::parse(R"({"model":"X","machines":1,"jobs":[]})")),
                    ParseError);
    CHECK_THROWS_AS(instance_from_json(json::parse(R"({"model":"P","jobs":[]})")), ParseError);
    CHECK_THROWS_AS(
        instance_from_json(json::parse(
            R"({"model":"P","machines":1,"jobs":[{"id":0,"weight":1}]})")),
        ParseError);
}

TEST_CASE("schedule json round trip preserves exact times") {
    const Instance inst = make_p_unit(2, {3, 3, 4});
    SplitMix64 rng(11);
    const Schedule s = random_schedule(inst, rng, true);
    const Schedule s2 = schedule_from_json(schedule_to_json(s));
    REQUIRE(s2.machines.size() == s.machines.size());
    for (std::size_t m = 0; m < s.machines.size(); ++m) {
        REQUIRE(s2.machines[m].size() == s.machines[m].size());
        for (std::size_t k = 0; k < s.machines[m].size(); ++k) {
            CHECK(s2.machines[m][k].job == s.machines[m][k].job);
            CHECK(s2.machines[m][k].start == s.machines[m][k].start);
            CHECK(s2.machines[m][k].completion == s.machines[m][k].completion);
        }
    }
}

TEST_CASE("metric json") {
    const json j = json::parse(R"({"dist":[[0,2],[2,0]],"start":0,"weights":[1,3]})");
    const MetricInstance m = metric_from_json(j);
    CHECK(m.n == 2);
    CHECK(m.dist[0][1] == 2);
    CHECK(m.weights[1] == 3);

    const json pts = json::parse(R"({"points":[[0,0],[1,0],[0,1]],"start":0,"weights":[1,1,1]})");
    const MetricInstance me = metric_from_json(pts);
    CHECK(me.n == 3);
    CHECK(denominator(me.dist[0][1]) <= 1000000);
    CHECK(me.dist[0][1] == 1);  // exact unit distance rounds to itself
    CHECK(me.dist[1][2] >= rat_from_double(1.4142135));  // rounded up

    CHECK_THROWS_AS(metric_from_json(json::parse(R"({"start":0})")), ParseError);
    CHECK_THROWS_AS(metric_from_json(json::parse(R"({"dist":[[0,9],[9,1]],"start":0})")),
                    ParseError);
}

TEST_CASE("generator determinism and ranges") {
    SuiteConfig cfg;
    cfg.count = 10;
    cfg.seed = 7;
    const auto a = generate(cfg);
    const auto b = generate(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(instance_to_json(a[i]) == instance_to_json(b[i]));

    SuiteConfig fixed;
    fixed.count = 8;
    fixed.n_min = fixed.n_max = 3;
    for (const Instance& inst : generate(fixed)) CHECK(inst.njobs() == 3);

    SuiteConfig bad;
    bad.n_min = 5;
    bad.n_max = 4;
    CHECK_THROWS_AS(generate(bad), std::invalid_argument);
    SuiteConfig over;
    over.n_max = 99;
    CHECK_THROWS_AS(generate(over), SizeCapError);
}

TEST_CASE("suite run, csv shape, audit and reproducibility") {
    SuiteConfig cfg;
    cfg.count = 12;
    cfg.seed = 3;
    cfg.rhos = {1.0};
    const SuiteReport rep = run_suite(cfg);
    CHECK(rep.violations == 0);
    CHECK(rep.skipped == 0);
    REQUIRE(rep.rows.size() == 12);

    const std::string csv = suite_csv(rep);
    CHECK(csv.rfind("instance,rho,t,alpha,cmax_ratio,avg_ratio,stretch,pass\n", 0) == 0);
    const json j = suite_json(rep);
    CHECK(j.at("summary").at("violations") == 0);

    // audit: every CSV ratio re-derives from the dumped schedules
    CHECK_FALSE(audit_suite(j, csv).has_value());

    // tampering is caught
    json broken = j;
    broken["rows"][0]["avg_ratio"] = "999/1";
    CHECK(audit_suite(broken, csv).has_value());

    // byte-identical rerun
    const SuiteReport rep2 = run_suite(cfg);
    CHECK(suite_csv(rep2) == csv);
    CHECK(suite_json(rep2).dump() == j.dump());
}

TEST_CASE("frontier csv") {
    const Instance inst = make_p_unit(2, {3, 3, 4});
    const std::string csv = frontier_csv(pareto_frontier(inst));
    CHECK(csv.rfind("alpha,makespan_ratio,avg_ratio\n", 0) == 0);
    CHECK(csv.find("0.5,") != std::string::npos);
}

TEST_CASE("full-size generation is instant") {
    SuiteConfig cfg;  // 500 instances at the default ranges
    const auto t0 = std::chrono::steady_clock::now();
    const auto instances = generate(cfg);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(instances.size() == 500);
    CHECK(dt < 1.0);
}

TEST_CASE("euclidean generation satisfies the metric checks by construction") {
    for (int i = 0; i < 25; ++i) {
        const MetricInstance m = generate_euclidean(5150, i, 5, 8);
        CHECK(m.n >= 5);
        CHECK(m.n <= 8);
        for (const Rat& w : m.weights) CHECK(w == 1);
    }
}
