// Command-line surface: oracle | schedule | frontier | analyze | game |
// equalizer | repairman | suite. Exit codes: 0 success, 1 bound violation,
// 2 usage or I/O error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bicrit/analysis.hpp"
#include "bicrit/composer.hpp"
#include "bicrit/errors.hpp"
#include "bicrit/io.hpp"
#include "bicrit/oracles.hpp"
#include "bicrit/repairman.hpp"
#include "bicrit/schedulers.hpp"

using namespace bicrit;
using nlohmann::json;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

double parse_rho(const std::string& s) {
    if (s == "ln2") return std::log(2.0);
    if (s == "balanced") return balanced_rho();
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--rho", "expected a number, 'ln2' or 'balanced'");
    }
}

int cmd_oracle(const std::string& input, const std::string& out) {
    const Instance inst = load_instance(input);
    const OracleResult mk = opt_makespan(inst);
    const OracleResult avg = opt_weighted_completion(inst);
    json j{{"opt_makespan", rat_to_string(mk.value)},
           {"opt_makespan_witness", schedule_to_json(mk.witness)},
           {"opt_avg", rat_to_string(avg.value)},
           {"opt_avg_witness", schedule_to_json(avg.witness)},
           {"assignments_examined",
            json{{"makespan", mk.enumerated}, {"avg", avg.enumerated}}}};
    emit(out, j.dump(2) + "\n");
    return 0;
}

int cmd_schedule(const std::string& input, const std::string& rho_s, const std::string& avg_name,
                 const std::string& tail_name, const std::string& out) {
    const Instance inst = load_instance(input);
    const double rho = parse_rho(rho_s);
    const Baselines base = Baselines::compute(inst);
    const Rat rho_exact = floor_to_denominator(rho, 1000000000000LL);

    Schedule s_avg = avg_name == "exact"
                         ? base.avg_witness
                         : make_avg_scheduler(*scheduler_from_string(avg_name))(inst);
    TailScheduler tail = tail_name == "exact"
                             ? exact_tail()
                             : make_tail_scheduler(*scheduler_from_string(tail_name));

    const auto reports = sweep(inst, s_avg, rho_exact, tail, base);
    const CompositionReport* best = nullptr;
    for (const auto& r : reports) {
        if (r.point.makespan_ratio > 1 + rho_exact) continue;
        if (best == nullptr || r.point.avg_ratio < best->point.avg_ratio) best = &r;
    }
    json j{{"rho", rho},
           {"rho_exact", rat_to_string(rho_exact)},
           {"avg_scheduler", avg_name},
           {"tail_scheduler", tail_name},
           {"sweep_size", reports.size()}};
    if (best != nullptr) {
        j["best"] = report_to_json(*best, inst, base);
    } else {
        j["best"] = nullptr;  // heuristic tails carry no makespan guarantee
    }
    emit(out, j.dump(2) + "\n");
    return 0;
}

int cmd_frontier(const std::string& input, const std::string& out) {
    const Instance inst = load_instance(input);
    emit(out, frontier_csv(pareto_frontier(inst)));
    return 0;
}

int cmd_analyze(const std::string& rho_s) {
    const double rho = parse_rho(rho_s);
    const double b = avg_ratio_bound(rho);
    std::cout << std::fixed << std::setprecision(6);
    std::cout << "beta = " << b << "\n";
    std::cout << "rho_for_beta(" << b << ") = " << rho_for_avg_bound(b) << "\n";
    std::cout << "rho_for_beta(2) = " << rho_for_avg_bound(2.0) << "\n";
    const double br = balanced_rho();
    std::cout << "balanced: rho = " << br << ", pair = (" << 1 + br << ", " << avg_ratio_bound(br)
              << ")\n";
    return 0;
}

int cmd_game(const std::string& rho_s, int grid, double eps, const std::string& out) {
    const double rho = parse_rho(rho_s);
    const GameSolution sol = solve_game(rho, grid, eps);
    json primal = json::array(), dual = json::array();
    for (const auto& [x, p] : sol.primal.masses) primal.push_back(json::array({x, p}));
    for (const auto& [a, p] : sol.dual.masses) dual.push_back(json::array({a, p}));
    json j{{"rho", sol.rho},
           {"grid", sol.grid},
           {"eps", eps},
           {"primal_value", sol.primal_value},
           {"dual_value", sol.dual_value},
           {"gap", sol.gap},
           {"closed_form_value", avg_ratio_bound(rho) - 1},
           {"primal", std::move(primal)},
           {"dual", std::move(dual)}};
    emit(out, j.dump(2) + "\n");
    std::cout << "value = " << sol.primal_value << " (closed form " << avg_ratio_bound(rho) - 1
              << "), gap = " << sol.gap << "\n";
    return 0;
}

int cmd_equalizer(const std::string& rho_s, int samples, const std::string& out) {
    const double rho = parse_rho(rho_s);
    const Pdf f = worst_case_density(rho);
    const double target = avg_ratio_bound(rho) - 1;
    std::ostringstream os;
    os << "alpha,payoff,target,abs_error\n";
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        const double alpha = samples == 1 ? 0.0 : rho * i / (samples - 1);
        const double v = adversary_payoff(alpha, f);
        worst = std::max(worst, std::abs(v - target));
        os << format_double(alpha) << ',' << format_double(v) << ',' << format_double(target)
           << ',' << format_double(std::abs(v - target)) << '\n';
    }
    emit(out, os.str());
    std::cout << "max |payoff - (beta-1)| = " << worst << " over " << samples << " samples\n";
    return 0;
}

int cmd_repairman(const std::string& input, const std::string& rho_s, const std::string& out) {
    const MetricInstance m = load_metric(input);
    const double rho = parse_rho(rho_s);
    const Rat rho_exact = floor_to_denominator(rho, 1000000000000LL);
    const TspResult tsp = tsp_opt(m);
    const RepairmanResult rep = repairman_opt(m);
    const TourReport best = best_tour_for_rho(m, rho_exact);
    json order = json::array();
    for (int v : best.order) order.push_back(v);
    json j{{"rho", rho},
           {"tsp_length", rat_to_string(tsp.length)},
           {"opt_latency", rat_to_string(rep.latency)},
           {"tour", std::move(order)},
           {"breakpoint", rat_to_string(best.point.t)},
           {"length_ratio", rat_to_string(best.point.length_ratio)},
           {"length_ratio_float", to_double(best.point.length_ratio)},
           {"latency_ratio", rat_to_string(best.point.latency_ratio)},
           {"latency_ratio_float", to_double(best.point.latency_ratio)}};
    emit(out, j.dump(2) + "\n");
    return 0;
}

int cmd_suite(const SuiteConfig& cfg, const std::string& out_csv, const std::string& out_json,
              bool audit) {
    const SuiteReport rep = run_suite(cfg);
    const std::string csv = suite_csv(rep);
    const json j = suite_json(rep);
    if (!out_csv.empty()) write_file(out_csv, csv);
    if (!out_json.empty()) write_file(out_json, j.dump(2) + "\n");

    std::cout << "instances = " << cfg.count << ", skipped = " << rep.skipped
              << ", violations = " << rep.violations << "\n";
    std::cout << "max cmax_ratio = " << rep.max_cmax_ratio
              << ", max avg_ratio = " << rep.max_avg_ratio << "\n";

    if (audit) {
        const auto err = audit_suite(j, csv);
        if (err) {
            std::cerr << "audit failed: " << *err << "\n";
            return 1;
        }
        std::cout << "audit: every CSV ratio reproduces from the dumped schedules\n";
    }
    return rep.violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bicriteria schedule composition toolkit"};
    app.require_subcommand(1);

    std::string input, out, rho_s = "1", avg_name = "exact", tail_name = "exact";
    int grid = 1000, samples = 200;
    double eps = 1e-3;

    auto* oracle = app.add_subcommand("oracle", "Exact makespan and weighted-completion optima");
    oracle->add_option("--input", input, "instance JSON file")->required();
    oracle->add_option("--out", out, "output JSON path (default stdout)");

    auto* sched = app.add_subcommand("schedule", "Breakpoint-composed schedule for a rho budget");
    sched->add_option("--input", input, "instance JSON file")->required();
    sched->add_option("--rho", rho_s, "makespan slack (number, 'ln2' or 'balanced')");
    sched->add_option("--avg", avg_name, "prefix scheduler: exact|spt|wspt|horn")
        ->check(CLI::IsMember({"exact", "spt", "wspt", "horn"}));
    sched->add_option("--tail", tail_name, "tail scheduler: exact|lpt")
        ->check(CLI::IsMember({"exact", "lpt"}));
    sched->add_option("--out", out, "output JSON path (default stdout)");

    auto* frontier = app.add_subcommand("frontier", "Breakpoint sweep as CSV");
    frontier->add_option("--input", input, "instance JSON file")->required();
    frontier->add_option("--out", out, "output CSV path (default stdout)");

    auto* analyze = app.add_subcommand("analyze", "Closed-form guarantee constants");
    analyze->add_option("--rho", rho_s, "makespan slack");

    auto* game = app.add_subcommand("game", "Solve the discretized breakpoint game");
    game->add_option("--rho", rho_s, "makespan slack");
    game->add_option("--grid", grid, "grid size N (>= 100)");
    game->add_option("--eps", eps, "duality gap certificate");
    game->add_option("--out", out, "output JSON path (default stdout)");

    auto* equalizer = app.add_subcommand("equalizer", "Payoff of the worst-case density");
    equalizer->add_option("--rho", rho_s, "makespan slack");
    equalizer->add_option("--samples", samples, "alpha sample count");
    equalizer->add_option("--out", out, "output CSV path (default stdout)");

    auto* repair = app.add_subcommand("repairman", "Simultaneous tour length/latency composition");
    repair->add_option("--input", input, "metric JSON file")->required();
    repair->add_option("--rho", rho_s, "length slack");
    repair->add_option("--out", out, "output JSON path (default stdout)");

    SuiteConfig cfg;
    std::string model_s = "P", rhos_s, out_csv, out_json;
    bool audit = false;
    auto* suite = app.add_subcommand("suite", "Seeded random battery with guarantee checks");
    suite->add_option("--count", cfg.count, "instance count");
    suite->add_option("--seed", cfg.seed, "suite seed");
    suite->add_option("--model", model_s, "machine model")->check(CLI::IsMember({"P", "R"}));
    suite->add_option("--n-min", cfg.n_min);
    suite->add_option("--n-max", cfg.n_max);
    suite->add_option("--m-min", cfg.m_min);
    suite->add_option("--m-max", cfg.m_max);
    suite->add_option("--p-min", cfg.p_min);
    suite->add_option("--p-max", cfg.p_max);
    suite->add_option("--w-min", cfg.w_min);
    suite->add_option("--w-max", cfg.w_max);
    suite->add_option("--rho", rhos_s, "comma-separated rho list (numbers, 'ln2', 'balanced')");
    suite->add_option("--out-csv", out_csv, "CSV report path");
    suite->add_option("--out-json", out_json, "JSON report path");
    suite->add_flag("--audit", audit, "re-derive every CSV ratio from the dumped schedules");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(oracle)) return cmd_oracle(input, out);
        if (app.got_subcommand(sched)) return cmd_schedule(input, rho_s, avg_name, tail_name, out);
        if (app.got_subcommand(frontier)) return cmd_frontier(input, out);
        if (app.got_subcommand(analyze)) return cmd_analyze(rho_s);
        if (app.got_subcommand(game)) return cmd_game(rho_s, grid, eps, out);
        if (app.got_subcommand(equalizer)) return cmd_equalizer(rho_s, samples, out);
        if (app.got_subcommand(repair)) return cmd_repairman(input, rho_s, out);
        if (app.got_subcommand(suite)) {
            cfg.model = model_s == "P" ? Model::P : Model::R;
            if (!rhos_s.empty()) {
                cfg.rhos.clear();
                std::stringstream ss(rhos_s);
                std::string tok;
                while (std::getline(ss, tok, ',')) cfg.rhos.push_back(parse_rho(tok));
            }
            return cmd_suite(cfg, out_csv, out_json, audit);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
