#include "bicrit/io.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "bicrit/analysis.hpp"
#include "bicrit/errors.hpp"
#include "bicrit/oracles.hpp"

namespace bicrit {

using nlohmann::json;

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

long SplitMix64::uniform(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

json rat_to_json(const Rat& r) {
    if (denominator(r) == 1 && numerator(r) >= std::numeric_limits<std::int64_t>::min() &&
        numerator(r) <= std::numeric_limits<std::int64_t>::max())
        return numerator(r).convert_to<std::int64_t>();
    return rat_to_string(r);
}

Rat rat_from_json(const json& j, const char* what) {
    if (j.is_number_integer()) return Rat(BigInt(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return Rat(BigInt(j.get<std::uint64_t>()));
    if (j.is_number_float()) return rat_from_double(j.get<double>());
    if (j.is_string()) return rat_parse(j.get<std::string>());
    throw ParseError(std::string(what) + ": expected a number or a \"num/den\" string");
}

std::uint64_t stream_seed(std::uint64_t seed, int index) {
    return seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
}

int thread_budget(std::size_t work_items) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("BICRIT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) n = static_cast<unsigned>(v);
    }
    return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(work_items, 1)));
}

}  // namespace

json instance_to_json(const Instance& inst) {
    json jobs = json::array();
    for (const Job& jb : inst.jobs) {
        json j{{"id", jb.id}, {"weight", rat_to_json(jb.weight)}};
        if (inst.model == Model::P) {
            j["p"] = rat_to_json(jb.processing[0]);
        } else {
            json ps = json::array();
            for (const Rat& p : jb.processing) ps.push_back(rat_to_json(p));
            j["p_by_machine"] = std::move(ps);
        }
        jobs.push_back(std::move(j));
    }
    return json{{"model", inst.model == Model::P ? "P" : "R"},
                {"machines", inst.machines},
                {"jobs", std::move(jobs)}};
}

Instance instance_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("instance: expected a JSON object");
    const std::string model_s = j.value("model", "");
    if (model_s != "P" && model_s != "R")
        throw ParseError("instance: \"model\" must be \"P\" or \"R\"");
    const Model model = model_s == "P" ? Model::P : Model::R;
    if (!j.contains("machines") || !j["machines"].is_number_integer())
        throw ParseError("instance: \"machines\" must be an integer");
    const int m = j["machines"].get<int>();
    if (!j.contains("jobs") || !j["jobs"].is_array())
        throw ParseError("instance: \"jobs\" must be an array");

    std::vector<Job> jobs;
    for (const json& je : j["jobs"]) {
        Job jb;
        if (!je.contains("id") || !je["id"].is_number_integer())
            throw ParseError("instance: every job needs an integer \"id\"");
        jb.id = je["id"].get<long>();
        jb.weight = rat_from_json(je.at("weight"), "job weight");
        if (model == Model::P) {
            if (!je.contains("p")) throw ParseError("instance: model P jobs need \"p\"");
            jb.processing.push_back(rat_from_json(je["p"], "job processing"));
        } else {
            if (!je.contains("p_by_machine") || !je["p_by_machine"].is_array())
                throw ParseError("instance: model R jobs need \"p_by_machine\"");
            for (const json& pe : je["p_by_machine"])
                jb.processing.push_back(rat_from_json(pe, "job processing"));
        }
        jobs.push_back(std::move(jb));
    }
    try {
        return Instance::make(model, m, std::move(jobs));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return instance_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

json schedule_to_json(const Schedule& s) {
    json machines = json::array();
    for (const auto& mach : s.machines) {
        json rows = json::array();
        for (const Placement& p : mach)
            rows.push_back(json::array({p.job, rat_to_json(p.start), rat_to_json(p.completion)}));
        machines.push_back(std::move(rows));
    }
    return json{{"machines", std::move(machines)}};
}

Schedule schedule_from_json(const json& j) {
    if (!j.is_object() || !j.contains("machines") || !j["machines"].is_array())
        throw ParseError("schedule: expected {\"machines\": [...]}");
    Schedule s;
    for (const json& mach : j["machines"]) {
        std::vector<Placement> rows;
        for (const json& row : mach) {
            if (!row.is_array() || row.size() != 3)
                throw ParseError("schedule: placements are [job, start, completion] triples");
            rows.push_back({row[0].get<long>(), rat_from_json(row[1], "start"),
                            rat_from_json(row[2], "completion")});
        }
        s.machines.push_back(std::move(rows));
    }
    return s;
}

MetricInstance euclidean_metric(const std::vector<std::pair<double, double>>& points, int start,
                                std::vector<Rat> weights) {
    const int n = static_cast<int>(points.size());
    std::vector<std::vector<Rat>> dist(static_cast<std::size_t>(n),
                                       std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) {
            const double dx = points[static_cast<std::size_t>(i)].first -
                              points[static_cast<std::size_t>(k)].first;
            const double dy = points[static_cast<std::size_t>(i)].second -
                              points[static_cast<std::size_t>(k)].second;
            const double e = std::sqrt(dx * dx + dy * dy);
            const Rat q(BigInt(static_cast<long long>(std::ceil(e * 1e6))), BigInt(1000000));
            dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = q;
            dist[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = q;
        }
    return MetricInstance::make(std::move(dist), start, std::move(weights));
}

json metric_to_json(const MetricInstance& m) {
    json dist = json::array();
    for (const auto& row : m.dist) {
        json r = json::array();
        for (const Rat& d : row) r.push_back(rat_to_json(d));
        dist.push_back(std::move(r));
    }
    json weights = json::array();
    for (const Rat& w : m.weights) weights.push_back(rat_to_json(w));
    return json{{"dist", std::move(dist)}, {"start", m.start}, {"weights", std::move(weights)}};
}

MetricInstance metric_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("metric: expected a JSON object");
    const int start = j.value("start", 0);
    std::vector<Rat> weights;
    if (j.contains("weights"))
        for (const json& w : j["weights"]) weights.push_back(rat_from_json(w, "vertex weight"));

    try {
        if (j.contains("points")) {
            std::vector<std::pair<double, double>> pts;
            for (const json& p : j["points"]) {
                if (!p.is_array() || p.size() != 2)
                    throw ParseError("metric: points are [x, y] pairs");
                pts.push_back({p[0].get<double>(), p[1].get<double>()});
            }
            if (weights.empty()) weights.assign(pts.size(), Rat(1));
            return euclidean_metric(pts, start, std::move(weights));
        }
        if (!j.contains("dist") || !j["dist"].is_array())
            throw ParseError("metric: need \"dist\" or \"points\"");
        std::vector<std::vector<Rat>> dist;
        for (const json& row : j["dist"]) {
            std::vector<Rat> r;
            for (const json& d : row) r.push_back(rat_from_json(d, "distance"));
            dist.push_back(std::move(r));
        }
        if (weights.empty()) weights.assign(dist.size(), Rat(1));
        return MetricInstance::make(std::move(dist), start, std::move(weights));
    } catch (const NonMetricError& e) {
        throw ParseError(std::string("metric: ") + e.what());
    }
}

MetricInstance load_metric(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return metric_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

json report_to_json(const CompositionReport& rep, const Instance& inst, const Baselines& base) {
    json tail = json::array();
    for (long id : rep.tail_jobs) tail.push_back(id);
    return json{{"breakpoint", rat_to_string(rep.t)},
                {"alpha", rat_to_string(rep.alpha)},
                {"alpha_float", to_double(rep.alpha)},
                {"makespan_ratio", rat_to_string(rep.point.makespan_ratio)},
                {"makespan_ratio_float", to_double(rep.point.makespan_ratio)},
                {"avg_ratio", rat_to_string(rep.point.avg_ratio)},
                {"avg_ratio_float", to_double(rep.point.avg_ratio)},
                {"per_job_max_stretch", rat_to_string(rep.per_job_max_stretch)},
                {"minsum_k2", rat_to_string(generalized_minsum(rep.schedule, inst, 2))},
                {"tail_jobs", std::move(tail)},
                {"opt_makespan", rat_to_string(base.opt_makespan)},
                {"opt_avg", rat_to_string(base.opt_avg)},
                {"schedule", schedule_to_json(rep.schedule)}};
}

Instance generate_one(const SuiteConfig& cfg, int index) {
    SplitMix64 g(stream_seed(cfg.seed, index));
    const int n = static_cast<int>(g.uniform(cfg.n_min, cfg.n_max));
    const int m = static_cast<int>(g.uniform(cfg.m_min, cfg.m_max));
    std::vector<Job> jobs;
    jobs.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Job jb;
        jb.id = j;
        const int pdraws = cfg.model == Model::P ? 1 : m;
        for (int i = 0; i < pdraws; ++i)
            jb.processing.push_back(Rat(g.uniform(cfg.p_min, cfg.p_max)));
        jb.weight = Rat(g.uniform(cfg.w_min, cfg.w_max));
        jobs.push_back(std::move(jb));
    }
    return Instance::make(cfg.model, m, std::move(jobs));
}

std::vector<Instance> generate(const SuiteConfig& cfg) {
    if (cfg.count < 0) throw std::invalid_argument("suite count must be non-negative");
    if (cfg.n_min > cfg.n_max || cfg.m_min > cfg.m_max || cfg.p_min > cfg.p_max ||
        cfg.w_min > cfg.w_max)
        throw std::invalid_argument("suite ranges must be non-empty");
    if (cfg.n_max > kOracleMaxJobs || cfg.m_max > kOracleMaxMachines)
        throw SizeCapError("suite ranges exceed the oracle budget (n <= " +
                           std::to_string(kOracleMaxJobs) + ", m <= " +
                           std::to_string(kOracleMaxMachines) + ")");
    if (cfg.p_min < 0 || cfg.w_min < 0)
        throw std::invalid_argument("processing and weight ranges must be non-negative");

    std::vector<Instance> out;
    out.reserve(static_cast<std::size_t>(cfg.count));
    for (int i = 0; i < cfg.count; ++i) out.push_back(generate_one(cfg, i));
    return out;
}

MetricInstance generate_euclidean(std::uint64_t seed, int index, int n_min, int n_max) {
    SplitMix64 g(stream_seed(seed, index));
    const int n = static_cast<int>(g.uniform(n_min, n_max));
    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(g.next() >> 11) * 0x1.0p-53;
        const double y = static_cast<double>(g.next() >> 11) * 0x1.0p-53;
        pts.push_back({x, y});
    }
    return euclidean_metric(pts, 0, std::vector<Rat>(static_cast<std::size_t>(n), Rat(1)));
}

SuiteReport run_suite(const SuiteConfig& cfg) {
    SuiteReport rep;
    rep.cfg = cfg;
    const std::vector<Instance> instances = generate(cfg);
    const std::size_t nrho = cfg.rhos.size();

    struct PerInstance {
        std::vector<SuiteRow> rows;
        json detail;
        bool skipped = false;
        int violations = 0;
    };
    std::vector<PerInstance> results(instances.size());

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = cursor.fetch_add(1);
            if (idx >= instances.size()) return;
            const Instance& inst = instances[idx];
            PerInstance& out = results[idx];
            try {
                const Baselines base = Baselines::compute(inst);
                json runs = json::array();
                for (std::size_t r = 0; r < nrho; ++r) {
                    const double rho = cfg.rhos[r];
                    const Rat rho_exact = floor_to_denominator(rho, 1000000000000LL);
                    const CompositionReport best = best_for_rho(inst, rho_exact, base);
                    SuiteRow row;
                    row.instance = static_cast<int>(idx);
                    row.rho = rho;
                    row.t = best.t;
                    row.alpha = best.alpha;
                    row.cmax_ratio = best.point.makespan_ratio;
                    row.avg_ratio = best.point.avg_ratio;
                    row.stretch = best.per_job_max_stretch;
                    const bool cmax_ok = best.point.makespan_ratio <= 1 + rho_exact;
                    const bool avg_ok =
                        to_double(best.point.avg_ratio) <= avg_ratio_bound(rho) + 1e-9;
                    row.pass = cmax_ok && avg_ok;
                    if (!row.pass) ++out.violations;
                    out.rows.push_back(std::move(row));

                    runs.push_back(json{{"rho", rho},
                                        {"rho_exact", rat_to_string(rho_exact)},
                                        {"report", report_to_json(best, inst, base)}});
                }
                const CompositionReport tt = two_two(inst, base);
                const bool tt_ok = tt.point.makespan_ratio <= 2 && tt.point.avg_ratio <= 2;
                if (!tt_ok) ++out.violations;
                out.detail = json{{"index", idx},
                                  {"instance", instance_to_json(inst)},
                                  {"opt_makespan", rat_to_string(base.opt_makespan)},
                                  {"opt_avg", rat_to_string(base.opt_avg)},
                                  {"runs", std::move(runs)},
                                  {"two_two", json{{"report", report_to_json(tt, inst, base)},
                                                   {"pass", tt_ok}}}};
            } catch (const SizeCapError& e) {
                out.skipped = true;
                out.detail = json{{"index", idx}, {"skipped", e.what()}};
            }
        }
    };

    const int nthreads = thread_budget(instances.size());
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads - 1));
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (PerInstance& pi : results) {
        if (pi.skipped) ++rep.skipped;
        rep.violations += pi.violations;
        for (SuiteRow& row : pi.rows) {
            rep.max_cmax_ratio = std::max(rep.max_cmax_ratio, to_double(row.cmax_ratio));
            rep.max_avg_ratio = std::max(rep.max_avg_ratio, to_double(row.avg_ratio));
            rep.rows.push_back(std::move(row));
        }
        rep.instance_details.push_back(std::move(pi.detail));
    }
    return rep;
}

std::string suite_csv(const SuiteReport& rep) {
    std::ostringstream os;
    os << "instance,rho,t,alpha,cmax_ratio,avg_ratio,stretch,pass\n";
    for (const SuiteRow& r : rep.rows) {
        os << r.instance << ',' << format_double(r.rho) << ',' << format_double(to_double(r.t))
           << ',' << format_double(to_double(r.alpha)) << ','
           << format_double(to_double(r.cmax_ratio)) << ','
           << format_double(to_double(r.avg_ratio)) << ','
           << format_double(to_double(r.stretch)) << ',' << (r.pass ? 1 : 0) << '\n';
    }
    return os.str();
}

json suite_json(const SuiteReport& rep) {
    json rows = json::array();
    for (const SuiteRow& r : rep.rows)
        rows.push_back(json{{"instance", r.instance},
                            {"rho", r.rho},
                            {"t", rat_to_string(r.t)},
                            {"alpha", rat_to_string(r.alpha)},
                            {"cmax_ratio", rat_to_string(r.cmax_ratio)},
                            {"avg_ratio", rat_to_string(r.avg_ratio)},
                            {"stretch", rat_to_string(r.stretch)},
                            {"pass", r.pass}});
    json rhos = json::array();
    for (double r : rep.cfg.rhos) rhos.push_back(r);
    return json{{"config", json{{"count", rep.cfg.count},
                                {"seed", rep.cfg.seed},
                                {"model", rep.cfg.model == Model::P ? "P" : "R"},
                                {"n", json::array({rep.cfg.n_min, rep.cfg.n_max})},
                                {"m", json::array({rep.cfg.m_min, rep.cfg.m_max})},
                                {"p", json::array({rep.cfg.p_min, rep.cfg.p_max})},
                                {"w", json::array({rep.cfg.w_min, rep.cfg.w_max})},
                                {"rhos", std::move(rhos)}}},
                {"rows", std::move(rows)},
                {"instances", rep.instance_details},
                {"summary", json{{"violations", rep.violations},
                                 {"skipped", rep.skipped},
                                 {"max_cmax_ratio", rep.max_cmax_ratio},
                                 {"max_avg_ratio", rep.max_avg_ratio}}}};
}

std::string frontier_csv(const std::vector<FrontierRow>& rows) {
    std::ostringstream os;
    os << "alpha,makespan_ratio,avg_ratio\n";
    for (const FrontierRow& r : rows)
        os << format_double(to_double(r.alpha)) << ',' << format_double(to_double(r.makespan_ratio))
           << ',' << format_double(to_double(r.avg_ratio)) << '\n';
    return os.str();
}

std::optional<std::string> audit_suite(const json& report, const std::string& csv) {
    std::ostringstream os;
    os << "instance,rho,t,alpha,cmax_ratio,avg_ratio,stretch,pass\n";
    try {
        auto row_it = report.at("rows").begin();
        const auto row_end = report.at("rows").end();
        for (const json& detail : report.at("instances")) {
            if (detail.contains("skipped")) continue;
            const Instance inst = instance_from_json(detail.at("instance"));
            const Baselines base = Baselines::compute(inst);
            if (rat_to_string(base.opt_makespan) != detail.at("opt_makespan").get<std::string>())
                return "instance " + detail.at("index").dump() + ": optimal makespan mismatch";
            if (rat_to_string(base.opt_avg) != detail.at("opt_avg").get<std::string>())
                return "instance " + detail.at("index").dump() + ": optimal average mismatch";
            for (const json& run : detail.at("runs")) {
                if (row_it == row_end) return "fewer CSV rows than dumped runs";
                const json& rj = *row_it++;
                const Schedule sched = schedule_from_json(run.at("report").at("schedule"));
                const ScheduleMetrics m = metrics(sched, inst);
                const Rat cmax_ratio = m.cmax / base.opt_makespan;
                const Rat avg_ratio = m.weighted_sum / base.opt_avg;
                if (rat_to_string(cmax_ratio) != rj.at("cmax_ratio").get<std::string>())
                    return "row for instance " + rj.at("instance").dump() +
                           ": cmax ratio does not reproduce from the dumped schedule";
                if (rat_to_string(avg_ratio) != rj.at("avg_ratio").get<std::string>())
                    return "row for instance " + rj.at("instance").dump() +
                           ": avg ratio does not reproduce from the dumped schedule";
                os << rj.at("instance").get<int>() << ',' << format_double(rj.at("rho").get<double>())
                   << ',' << format_double(to_double(rat_parse(rj.at("t").get<std::string>())))
                   << ',' << format_double(to_double(rat_parse(rj.at("alpha").get<std::string>())))
                   << ',' << format_double(to_double(cmax_ratio)) << ','
                   << format_double(to_double(avg_ratio)) << ','
                   << format_double(to_double(rat_parse(rj.at("stretch").get<std::string>())))
                   << ',' << (rj.at("pass").get<bool>() ? 1 : 0) << '\n';
            }
        }
        if (row_it != row_end) return "more CSV rows than dumped runs";
    } catch (const json::exception& e) {
        return std::string("malformed report: ") + e.what();
    }
    if (os.str() != csv) return "regenerated CSV differs from the emitted CSV";
    return std::nullopt;
}

}  // namespace bicrit
