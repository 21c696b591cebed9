#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bicrit/composer.hpp"
#include "bicrit/core.hpp"
#include "bicrit/repairman.hpp"

namespace bicrit {

// splitmix64: tiny, fully specified generator so that identical (seed, index)
// pairs produce byte-identical suites on every platform.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    // Uniform in [lo, hi] via modulo reduction (documented, deterministic).
    long uniform(long lo, long hi);
};

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::string& path);

nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);

nlohmann::json metric_to_json(const MetricInstance& m);
MetricInstance metric_from_json(const nlohmann::json& j);
MetricInstance load_metric(const std::string& path);

nlohmann::json report_to_json(const CompositionReport& rep, const Instance& inst, const Baselines& base);

// Euclidean points rounded *up* to rationals with denominator 10^6; rounding
// up keeps the triangle inequality intact.
MetricInstance euclidean_metric(const std::vector<std::pair<double, double>>& points, int start,
                                std::vector<Rat> weights);

struct SuiteConfig {
    int count = 500;
    std::uint64_t seed = 1;
    Model model = Model::P;
    int n_min = 3, n_max = 9;
    int m_min = 2, m_max = 3;
    long p_min = 1, p_max = 20;
    long w_min = 1, w_max = 10;
    std::vector<double> rhos{0.6931471805599453, 0.8065, 1.0};
};

// Deterministic instances: generator seeded by mix(seed, index), draws in a
// fixed order (n, m, then per job p and w).
std::vector<Instance> generate(const SuiteConfig& cfg);
Instance generate_one(const SuiteConfig& cfg, int index);

// Seeded unit-square Euclidean metrics for the tour batteries.
MetricInstance generate_euclidean(std::uint64_t seed, int index, int n_min, int n_max);

struct SuiteRow {
    int instance = 0;
    double rho = 0;
    Rat t;
    Rat alpha;
    Rat cmax_ratio;
    Rat avg_ratio;
    Rat stretch;
    bool pass = true;
};

struct SuiteReport {
    SuiteConfig cfg;
    std::vector<SuiteRow> rows;  // ordered by (instance, rho index)
    std::vector<nlohmann::json> instance_details;
    int skipped = 0;
    int violations = 0;
    double max_cmax_ratio = 0;
    double max_avg_ratio = 0;
};

// Evaluates best_for_rho for every (instance, rho) and the breakpoint-at-L
// composition per instance, checking each against its guarantee pair.
// Parallelism is capped by the BICRIT_THREADS environment variable.
SuiteReport run_suite(const SuiteConfig& cfg);

std::string suite_csv(const SuiteReport& rep);
nlohmann::json suite_json(const SuiteReport& rep);
std::string frontier_csv(const std::vector<FrontierRow>& rows);

// Recomputes every CSV ratio from the schedules dumped in the JSON report
// (oracles re-run from the instances) and checks byte equality.
// Returns an error description, or nullopt when the audit passes.
std::optional<std::string> audit_suite(const nlohmann::json& report, const std::string& csv);

// Shortest round-trip decimal form, used everywhere a CSV needs a double.
std::string format_double(double v);

}  // namespace bicrit
