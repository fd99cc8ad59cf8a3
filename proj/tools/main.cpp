#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diffauct/scenario.hpp"

using namespace diffauct;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

std::vector<Money> parse_values(const std::string& csv, int precision) {
    std::vector<Money> values;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string token = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!token.empty()) values.push_back(Money::parse(token, precision));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (values.empty()) throw std::invalid_argument("empty value list");
    return values;
}

std::vector<Money> parse_grid(const std::string& csv, int precision) {
    std::vector<Money> grid = parse_values(csv, precision);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    for (Money m : parse_values(csv, 0)) out.push_back(static_cast<int>(m.units() / Money::kScale));
    return out;
}

TieBreak make_tie(const std::string& mode, std::uint64_t seed) {
    if (mode == "lowest") return TieBreak::lowest_id();
    if (mode == "seeded") return TieBreak::seeded(seed);
    throw std::invalid_argument("tie-break must be 'lowest' or 'seeded'");
}

void print_outcome_pretty(const ScenarioFile& scenario, MechanismKind kind, const Outcome& outcome) {
    std::cout << "mechanism: " << to_string(kind) << "\n";
    if (outcome.winner)
        std::cout << "winner:    " << scenario.label(*outcome.winner) << " (id " << *outcome.winner << ")\n";
    else
        std::cout << "winner:    none\n";
    std::cout << "revenue:   " << outcome.revenue << "\n";
    std::cout << "welfare:   " << outcome.welfare << "\n";
    std::cout << "buyers:\n";
    const SocialNetwork& net = scenario.net;
    for (AgentId id = 0; id < net.agent_count(); ++id) {
        if (id == net.seller()) continue;
        std::cout << "  " << scenario.label(id) << ": payment " << outcome.payments[static_cast<std::size_t>(id)]
                  << "  [" << to_string(outcome.status[static_cast<std::size_t>(id)]) << "]\n";
    }
}

ActionProfile effective_profile(const ScenarioFile& scenario, bool warn_forced) {
    if (!scenario.declared) return truthful_profile(scenario.net);
    ActionProfile transformed = feasibility_transform(scenario.net, *scenario.declared);
    if (warn_forced) {
        std::vector<AgentId> forced;
        for (AgentId id = 0; id < scenario.net.agent_count(); ++id)
            if (id != scenario.net.seller() && !scenario.declared->of(id).is_null() &&
                transformed.of(id).is_null())
                forced.push_back(id);
        if (!forced.empty()) {
            std::cerr << "warning: declared profile is infeasible; forced to null:";
            for (AgentId id : forced) std::cerr << " " << scenario.label(id);
            std::cerr << "\n";
        }
    }
    return transformed;
}

struct VerifyArgs {
    std::string suite;
    int n_max = 5;
    std::string grid_csv = "0,1,2,3";
    std::string mechanism = "";  // empty: suite default
    std::string scenario_path;
    int trials = 10000;
    std::uint64_t seed = 1;
    int threads = 0;
    double budget_seconds = 0;
    std::string out_path;
    int precision = Money::kScaleDigits;
};

void print_report_line(const VerificationReport& r, bool expected_to_hold) {
    std::cout << (r.passed() ? "  ok   " : (expected_to_hold ? "  FAIL " : "  info "))
              << r.property << " [" << r.mechanism << "]: " << r.instances_checked << " instances, "
              << r.deviations_checked << " checks, " << r.violations << " violations"
              << (r.partial ? " (partial)" : "") << "\n";
}

int run_verify(const VerifyArgs& args) {
    std::vector<Money> grid = parse_grid(args.grid_csv, args.precision);
    std::vector<std::pair<VerificationReport, bool>> results;  // report, expected to hold

    std::optional<ScenarioFile> scenario;
    if (!args.scenario_path.empty()) scenario = load_scenario(args.scenario_path, args.precision);

    auto mechanisms_for = [&](std::initializer_list<MechanismKind> defaults) {
        std::vector<MechanismKind> kinds;
        if (args.mechanism.empty()) {
            kinds.assign(defaults);
        } else {
            auto kind = mechanism_from_string(args.mechanism);
            if (!kind) throw std::invalid_argument("unknown mechanism: " + args.mechanism);
            kinds.push_back(*kind);
        }
        return kinds;
    };

    auto run_sweep = [&]() {
        SweepOptions options;
        options.n_max = args.n_max;
        options.grid = grid;
        options.threads = args.threads;
        options.budget_seconds = args.budget_seconds;
        return exhaustive_sweep(options);
    };

    const bool all = args.suite == "all";
    if (args.suite == "ic" || args.suite == "ir" || all) {
        if (scenario) {
            DeviationSpace space = DeviationSpace::exhaustive(grid);
            space.seed = args.seed;
            for (MechanismKind kind : mechanisms_for({MechanismKind::IDM, MechanismKind::NetworkVCG})) {
                if (args.suite != "ir") results.emplace_back(check_ic(scenario->net, kind, space), true);
                if (args.suite != "ic") results.emplace_back(check_ir(scenario->net, kind, space), true);
            }
        } else {
            SweepResult sweep = run_sweep();
            if (args.suite != "ir") {
                results.emplace_back(std::move(sweep.ic_idm), true);
                results.emplace_back(std::move(sweep.ic_vcg), true);
            }
            if (args.suite != "ic") {
                results.emplace_back(std::move(sweep.ir_idm), true);
                results.emplace_back(std::move(sweep.ir_vcg), true);
            }
            if (all) {
                results.emplace_back(std::move(sweep.unlucky_neutral), true);
                results.emplace_back(std::move(sweep.dset_monotone), true);
            }
        }
    }
    if (args.suite == "wbb" || all) {
        for (MechanismKind kind : mechanisms_for({MechanismKind::IDM, MechanismKind::NetworkVCG})) {
            bool expected = kind == MechanismKind::IDM;  // vcg deficits are a documented outcome
            if (scenario) {
                ProfileSampler sampler{grid};
                results.emplace_back(check_wbb(scenario->net, kind, sampler, args.trials, args.seed),
                                     expected);
            } else {
                int n_max = std::min(args.n_max > 5 ? args.n_max : 30, 50);
                results.emplace_back(check_wbb_random(kind, args.trials, n_max, grid, args.seed), expected);
            }
        }
    }
    if (args.suite == "dominance" || all) {
        if (scenario) {
            ActionProfile profile = effective_profile(*scenario, true);
            RevenueComparison cmp = check_revenue_dominance(scenario->net, profile);
            VerificationReport report;
            report.property = "dominance";
            report.mechanism = "idm";
            report.instances_checked = 1;
            report.deviations_checked = 4;
            if (!cmp.all_hold())
                report.record(Counterexample{scenario->net, std::move(profile), -1, std::nullopt,
                                             cmp.vcg_revenue, cmp.idm_revenue, "dominance violated"});
            std::cout << comparison_to_json(cmp).dump(2) << "\n";
            results.emplace_back(std::move(report), true);
        } else {
            int n_max = args.n_max > 5 ? args.n_max : 50;
            results.emplace_back(check_dominance_random(args.trials, n_max, grid, args.seed), true);
        }
    }
    if (results.empty()) throw std::invalid_argument("unknown suite: " + args.suite);

    bool failed = false, partial = false;
    json doc = json::array();
    std::cout << "verification summary:\n";
    for (const auto& [report, expected] : results) {
        print_report_line(report, expected);
        doc.push_back(report_to_json(report));
        failed = failed || (expected && !report.passed());
        partial = partial || report.partial;
    }
    if (!args.out_path.empty()) {
        std::ofstream out(args.out_path);
        if (!out) throw std::runtime_error("cannot write report: " + args.out_path);
        out << doc.dump(2) << "\n";
    }
    if (failed) return kExitViolation;
    if (partial) return kExitResource;
    return kExitOk;
}

int run_bench(const std::vector<int>& sizes, int profiles_per_size, std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    Rng rng(seed);
    std::vector<Money> grid = integer_grid(9);
    ProfileSampler sampler{grid, 0.1};
    std::cout << "n,participants,analysis_ms,oracle_ms\n";
    for (int n : sizes) {
        for (int k = 0; k < profiles_per_size; ++k) {
            SocialNetwork net =
                erdos_renyi_connected_network(n, std::min(1.0, (std::log(n) + 1.0) / n), grid, rng);
            ActionProfile profile = sampler.sample(net, rng);
            DiffusionGraph g = build_diffusion_graph(net, profile);

            auto t0 = clock::now();
            DiffusionAnalysis analysis = dominator_analysis(g);
            auto t1 = clock::now();
            auto oracle = critical_nodes_all_oracle(g);
            auto t2 = clock::now();

            for (AgentId j : g.participants()) {
                std::vector<AgentId> fast = analysis.critical_of(j);
                std::sort(fast.begin(), fast.end());
                if (fast != oracle[static_cast<std::size_t>(j)]) {
                    std::cerr << "mismatch between analysis and oracle at n=" << n << "\n";
                    return kExitViolation;
                }
            }
            std::cout << n << "," << g.participants().size() << ","
                      << std::chrono::duration<double, std::milli>(t1 - t0).count() << ","
                      << std::chrono::duration<double, std::milli>(t2 - t1).count() << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diffauct: single-item auctions on social networks (local second price, network VCG, IDM)"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a scenario file");
    gen->require_subcommand(1);
    std::string gen_out;
    std::uint64_t gen_seed = 1;
    int gen_vmax = 10;

    auto* gen_line = gen->add_subcommand("line", "seller at one end of a line of buyers");
    int line_length = 5;
    std::string line_values;
    gen_line->add_option("length", line_length, "number of buyers")->required();
    gen_line->add_option("--values", line_values, "comma-separated buyer valuations (default 0,..,0,1)");

    auto* gen_er = gen->add_subcommand("er", "G(n,p) random network");
    int er_n = 10;
    double er_p = 0.2;
    bool er_connected = false;
    gen_er->add_option("n", er_n, "number of agents")->required();
    gen_er->add_option("p", er_p, "edge probability")->required();
    gen_er->add_flag("--connected", er_connected, "resample until connected");

    auto* gen_tree = gen->add_subcommand("tree", "uniform random attachment tree");
    int tree_n = 10;
    gen_tree->add_option("n", tree_n, "number of agents")->required();

    for (auto* sub : {gen_line, gen_er, gen_tree}) {
        sub->add_option("-o,--out", gen_out, "output path (default: stdout)");
        sub->add_option("--seed", gen_seed, "random seed");
        sub->add_option("--vmax", gen_vmax, "valuations drawn uniformly from {0..vmax}");
    }

    // run
    auto* run_cmd = app.add_subcommand("run", "run one mechanism on a scenario");
    std::string run_path, run_mechanism = "idm", run_tie = "lowest", run_format = "pretty", run_dot;
    std::uint64_t run_seed = 0;
    int run_precision = Money::kScaleDigits;
    run_cmd->add_option("scenario", run_path, "scenario file")->required();
    run_cmd->add_option("-m,--mechanism", run_mechanism, "spl | vcg | idm");
    run_cmd->add_option("--tie-break", run_tie, "lowest | seeded");
    run_cmd->add_option("--seed", run_seed, "tie-break seed");
    run_cmd->add_option("--precision", run_precision, "decimal digits kept when quantizing valuations");
    run_cmd->add_option("-f,--format", run_format, "pretty | json | csv");
    run_cmd->add_option("--export-dot", run_dot, "write <prefix>.diffusion.dot and <prefix>.critical.dot");

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "all three mechanisms on the truthful profile");
    std::string cmp_path, cmp_format = "pretty";
    int cmp_precision = Money::kScaleDigits;
    compare_cmd->add_option("scenario", cmp_path, "scenario file")->required();
    compare_cmd->add_option("-f,--format", cmp_format, "pretty | json | csv");
    compare_cmd->add_option("--precision", cmp_precision, "decimal digits kept when quantizing valuations");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check mechanism properties");
    VerifyArgs vargs;
    verify_cmd->add_option("suite", vargs.suite, "ir | ic | wbb | dominance | all")->required();
    verify_cmd->add_option("--n-max", vargs.n_max, "largest agent count (exhaustive suites cap at 6)");
    verify_cmd->add_option("--grid", vargs.grid_csv, "valuation grid, comma separated");
    verify_cmd->add_option("-m,--mechanism", vargs.mechanism, "restrict to one mechanism");
    verify_cmd->add_option("--scenario", vargs.scenario_path, "check one scenario instead of sweeping");
    verify_cmd->add_option("--trials", vargs.trials, "sampled trials for wbb/dominance");
    verify_cmd->add_option("--seed", vargs.seed, "random seed");
    verify_cmd->add_option("--threads", vargs.threads, "worker threads (default: DIFFAUCT_THREADS or cores)");
    verify_cmd->add_option("--budget-s", vargs.budget_seconds, "wall-clock budget; exceeded -> exit 3");
    verify_cmd->add_option("--out", vargs.out_path, "write the JSON report here");
    verify_cmd->add_option("--precision", vargs.precision, "decimal digits for grid/scenario values");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "time the critical-node analysis against the oracle");
    std::string bench_sizes = "50,100,200";
    int bench_profiles = 3;
    std::uint64_t bench_seed = 1;
    bench_cmd->add_option("--sizes", bench_sizes, "comma-separated agent counts");
    bench_cmd->add_option("--profiles", bench_profiles, "profiles per size");
    bench_cmd->add_option("--seed", bench_seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (gen->parsed()) {
            ScenarioFile scenario = [&]() -> ScenarioFile {
                Rng rng(gen_seed);
                std::vector<Money> grid = integer_grid(gen_vmax);
                if (gen_line->parsed()) {
                    SocialNetwork net = line_values.empty()
                                            ? line_graph(line_length)
                                            : line_graph(line_length, parse_values(line_values, Money::kScaleDigits));
                    return ScenarioFile{1, std::move(net), {}, std::nullopt};
                }
                if (gen_er->parsed()) {
                    SocialNetwork net = er_connected ? erdos_renyi_connected_network(er_n, er_p, grid, rng)
                                                     : erdos_renyi_network(er_n, er_p, grid, rng);
                    return ScenarioFile{1, std::move(net), {}, std::nullopt};
                }
                return ScenarioFile{1, random_tree_network(tree_n, grid, rng), {}, std::nullopt};
            }();
            if (gen_out.empty())
                std::cout << scenario_to_json(scenario).dump(2) << "\n";
            else
                save_scenario(scenario, gen_out);
            return kExitOk;
        }

        if (run_cmd->parsed()) {
            ScenarioFile scenario = load_scenario(run_path, run_precision);
            auto kind = mechanism_from_string(run_mechanism);
            if (!kind) throw std::invalid_argument("unknown mechanism: " + run_mechanism);
            ActionProfile profile = effective_profile(scenario, true);
            Outcome outcome = run(*kind, scenario.net, profile, make_tie(run_tie, run_seed));
            if (!run_dot.empty()) {
                DiffusionGraph g = build_diffusion_graph(scenario.net, profile);
                DiffusionAnalysis analysis = dominator_analysis(g);
                std::vector<std::string> labels;
                for (AgentId id = 0; id < scenario.net.agent_count(); ++id)
                    labels.push_back(scenario.label(id));
                std::ofstream(run_dot + ".diffusion.dot") << to_dot(g, analysis, labels);
                std::ofstream(run_dot + ".critical.dot") << dominator_tree_dot(analysis, labels);
            }
            if (run_format == "json")
                std::cout << outcome_to_json(scenario, *kind, outcome).dump(2) << "\n";
            else if (run_format == "csv")
                std::cout << outcome_csv_header() << "\n"
                          << outcome_csv_row(run_path, *kind, outcome, scenario.net,
                                             run_tie == "seeded" ? std::to_string(run_seed) : "")
                          << "\n";
            else
                print_outcome_pretty(scenario, *kind, outcome);
            return kExitOk;
        }

        if (compare_cmd->parsed()) {
            ScenarioFile scenario = load_scenario(cmp_path, cmp_precision);
            if (scenario.declared)
                std::cerr << "note: compare always evaluates the truthful profile\n";
            ActionProfile profile = truthful_profile(scenario.net);
            RevenueComparison cmp = check_revenue_dominance(scenario.net, profile);
            if (cmp_format == "json") {
                std::cout << comparison_to_json(cmp).dump(2) << "\n";
            } else if (cmp_format == "csv") {
                std::cout << outcome_csv_header() << "\n";
                for (MechanismKind kind :
                     {MechanismKind::IDM, MechanismKind::NetworkVCG, MechanismKind::SecondPriceLocal}) {
                    Outcome outcome = run(kind, scenario.net, profile);
                    std::cout << outcome_csv_row(cmp_path, kind, outcome, scenario.net, "") << "\n";
                }
            } else {
                std::cout << "mechanism  revenue  welfare  winner\n";
                for (MechanismKind kind :
                     {MechanismKind::IDM, MechanismKind::NetworkVCG, MechanismKind::SecondPriceLocal}) {
                    Outcome outcome = run(kind, scenario.net, profile);
                    std::cout << to_string(kind) << "        " << outcome.revenue << "        "
                              << outcome.welfare << "        "
                              << (outcome.winner ? scenario.label(*outcome.winner) : "-") << "\n";
                }
            }
            if (!cmp.all_hold()) {
                std::cerr << "FAIL: revenue dominance violated\n";
                return kExitViolation;
            }
            return kExitOk;
        }

        if (verify_cmd->parsed()) return run_verify(vargs);

        if (bench_cmd->parsed()) return run_bench(parse_int_list(bench_sizes), bench_profiles, bench_seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
