// Command-line front end: maps models to dependency graphs, scores edges,
// breaks cycles, derives integration orders and runs the search algorithms.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cito/cito.hpp"

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CliError("cannot open output file: " + out_path);
    out << text;
}

bool looks_like_model(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto t = cito::detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        return t == "[classes]" || t == "[relations]";
    }
    return false;
}

cito::Cdg load_cdg(const std::string& text) {
    if (looks_like_model(text)) {
        auto model = cito::parse_model(text);
        return cito::map_uml_to_cdg(std::move(model.nodes), model.relations);
    }
    return cito::parse_matrix(text);
}

cito::CouplingVariant parse_variant(const std::string& name) {
    using V = cito::CouplingVariant;
    if (name == "cs_eq1") return V::cs_eq1;
    if (name == "broken_dependencies") return V::broken_dependencies;
    if (name == "attribute_coupling") return V::attribute_coupling;
    if (name == "method_coupling") return V::method_coupling;
    if (name == "attr_and_method_4") return V::attr_and_method_4;
    if (name == "attr_and_method_5") return V::attr_and_method_5;
    if (name == "five_param_cs") return V::five_param_cs;
    throw CliError("unknown coupling variant: " + name);
}

struct CommonInputs {
    std::string input_path;
    std::string coupling_path;
    std::string out_path;
    std::string variant = "cs_eq1";
    std::string if_mode = "additive";
    std::size_t max_cycles = 1000000;
};

struct Loaded {
    std::string text;
    cito::Cdg cdg;
    cito::CouplingData coupling;
    cito::AnalysisResult analysis;
};

Loaded load_and_analyze(const CommonInputs& in) {
    Loaded loaded;
    loaded.text = read_file(in.input_path);
    loaded.cdg = load_cdg(loaded.text);
    if (!in.coupling_path.empty()) loaded.coupling = cito::parse_coupling(read_file(in.coupling_path));
    cito::IfMode mode = in.if_mode == "multiplicative" ? cito::IfMode::multiplicative
                                                       : cito::IfMode::additive;
    loaded.analysis = cito::analyze(loaded.cdg, mode, parse_variant(in.variant),
                                    loaded.coupling.empty() ? nullptr : &loaded.coupling,
                                    in.max_cycles);
    return loaded;
}

int run_repro_atm(std::ostream& out) {
    using namespace cito;
    bool all_ok = true;
    auto check = [&](bool ok, const std::string& what, const std::string& detail) {
        out << (ok ? "ok   " : "FAIL ") << what << ": " << detail << "\n";
        all_ok = all_ok && ok;
    };

    auto model = parse_model(datasets::atm_model());
    Cdg cdg = map_uml_to_cdg(std::move(model.nodes), model.relations);
    AnalysisResult analysis = analyze(cdg);

    std::size_t biggest = 0;
    for (const auto& c : analysis.scc.components) biggest = std::max(biggest, c.size());
    check(analysis.scc.components.size() == 1 && biggest == 21, "scc",
          "one component of " + std::to_string(biggest) + " classes");

    auto expected_cycles = datasets::atm_expected_cycles();
    bool cycles_match = analysis.cycles.size() == expected_cycles.size();
    for (std::size_t i = 0; cycles_match && i < analysis.cycles.size(); ++i) {
        std::string got;
        for (int v : analysis.cycles[i].nodes) {
            if (!got.empty()) got += '-';
            got += cdg.node(v).id;
        }
        cycles_match = got == expected_cycles[i];
    }
    check(cycles_match, "cycles", std::to_string(analysis.cycles.size()) + " elementary cycles");

    BreakPlan plan = greedy_break(cdg, analysis);
    check(plan.removals.size() == 24, "greedy removals", std::to_string(plan.removals.size()));
    check(verify_acyclic(plan.residual), "residual", "acyclic after removal");

    TestOrder order = topo_order(plan.residual);
    StubReport report = stub_report(cdg, plan, order);
    check(report.realistic_stubs == datasets::atm_expected_realistic_stubs(), "realistic stubs",
          std::to_string(report.realistic_stubs.size()) + " classes");
    check(report.integration_steps == datasets::kAtmIntegrationSteps, "integration steps",
          std::to_string(report.integration_steps));
    check(plan.total_cost == Rational(datasets::kAtmGreedyCostNum, datasets::kAtmGreedyCostDen),
          "integration cost", format_fixed(plan.total_cost.to_double()));

    BreakPlan cwr = cwr_break(cdg, analysis);
    const auto& e0 = cdg.edges()[static_cast<std::size_t>(cwr.removals[0].edge_index)];
    const auto& e1 = cdg.edges()[static_cast<std::size_t>(cwr.removals[1].edge_index)];
    check(e0.client == "H" && e0.server == "E" && cwr.removals[0].weight == Rational(25) &&
              e1.client == "H" && e1.server == "I" && cwr.removals[1].weight == Rational(25),
          "cwr head", e0.client + "->" + e0.server + " then " + e1.client + "->" + e1.server);
    check(cwr.removals.size() == 24, "cwr removals", std::to_string(cwr.removals.size()));

    return all_ok ? 0 : 3;
}

int run_repro_briand(std::ostream& out) {
    using namespace cito;
    bool all_ok = true;
    auto check = [&](bool ok, const std::string& what, const std::string& detail) {
        out << (ok ? "ok   " : "FAIL ") << what << ": " << detail << "\n";
        all_ok = all_ok && ok;
    };

    Cdg cdg = parse_matrix(datasets::briand_matrix());
    CouplingData coupling = parse_coupling(datasets::briand_coupling());

    AnalysisResult base = analyze(cdg, IfMode::additive, CouplingVariant::broken_dependencies,
                                  &coupling);
    std::vector<std::string> scc_ids;
    for (const auto& comp : base.scc.components)
        if (comp.size() > 1)
            for (int v : comp) scc_ids.push_back(cdg.node(v).id);
    std::sort(scc_ids.begin(), scc_ids.end());
    auto expected_scc = datasets::briand_expected_scc();
    std::sort(expected_scc.begin(), expected_scc.end());
    check(scc_ids == expected_scc, "scc", "{8..15}");
    check(static_cast<int>(base.cycles.size()) == datasets::kBriandCycleCount, "cycles",
          std::to_string(base.cycles.size()));

    auto expected = datasets::briand_expected_removals();
    std::sort(expected.begin(), expected.end());
    for (CouplingVariant v :
         {CouplingVariant::broken_dependencies, CouplingVariant::attribute_coupling,
          CouplingVariant::method_coupling, CouplingVariant::attr_and_method_4,
          CouplingVariant::attr_and_method_5, CouplingVariant::five_param_cs}) {
        AnalysisResult analysis = analyze(cdg, IfMode::additive, v, &coupling);
        BreakPlan plan = greedy_break(cdg, analysis);
        std::vector<std::pair<std::string, std::string>> got;
        for (const Removal& r : plan.removals) {
            const CdgEdge& e = cdg.edges()[static_cast<std::size_t>(r.edge_index)];
            got.emplace_back(e.client, e.server);
        }
        std::sort(got.begin(), got.end());
        check(got == expected, std::string("variant ") + to_string(v),
              std::to_string(plan.removals.size()) + " removals");
    }
    return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"class integration test order toolkit"};
    app.require_subcommand(1);

    CommonInputs in;
    std::string strategy = "greedy";
    std::string direction = "clients-first";
    std::string algo = "ga";
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> seeds;
    int population = 0;  // 0 = per-algorithm default
    int generations = 20;
    cito::SearchConfig search_defaults;
    double pc_bad = search_defaults.pc_bad, pc_good = search_defaults.pc_good;
    double pm_bad = search_defaults.pm_bad, pm_good = search_defaults.pm_good;
    int threads = 1;
    std::string repro_case;

    auto add_common = [&](CLI::App* cmd, bool with_coupling = true) {
        cmd->add_option("input", in.input_path, "model or matrix file")->required();
        cmd->add_option("--out", in.out_path, "write output to a file instead of stdout");
        if (with_coupling) {
            cmd->add_option("--coupling", in.coupling_path, "coupling data CSV");
            cmd->add_option("--variant", in.variant, "coupling cost-function variant")
                ->check(CLI::IsMember({"cs_eq1", "broken_dependencies", "attribute_coupling",
                                       "method_coupling", "attr_and_method_4",
                                       "attr_and_method_5", "five_param_cs"}));
        }
        cmd->add_option("--max-cycles", in.max_cycles, "abort past this many elementary cycles");
    };

    CLI::App* map_cmd = app.add_subcommand("map", "emit the mapped dependency edge list");
    map_cmd->add_option("input", in.input_path, "model file")->required();
    map_cmd->add_option("--out", in.out_path, "write output to a file instead of stdout");

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "SCCs, cycles and per-edge metrics");
    add_common(analyze_cmd);
    analyze_cmd->add_option("--if-mode", in.if_mode, "information-flow mode")
        ->check(CLI::IsMember({"additive", "multiplicative"}));

    CLI::App* break_cmd = app.add_subcommand("break", "compute a cycle-breaking plan");
    add_common(break_cmd);
    break_cmd->add_option("--strategy", strategy, "greedy or cwr")
        ->check(CLI::IsMember({"greedy", "cwr"}));

    CLI::App* order_cmd = app.add_subcommand("order", "break cycles then derive the test order");
    add_common(order_cmd);
    order_cmd->add_option("--strategy", strategy, "greedy or cwr")
        ->check(CLI::IsMember({"greedy", "cwr"}));
    order_cmd->add_option("--direction", direction, "ordering convention")
        ->check(CLI::IsMember({"clients-first", "servers-first"}));

    CLI::App* search_cmd = app.add_subcommand("search", "run a metaheuristic over test orders");
    add_common(search_cmd);
    search_cmd->add_option("--algo", algo, "ga, micro-ga or cuckoo")
        ->check(CLI::IsMember({"ga", "micro-ga", "cuckoo"}));
    search_cmd->add_option("--seed", seed, "RNG seed")->envname("CITO_SEED");
    search_cmd->add_option("--pop", population, "population size (default: 100, micro-ga 5)");
    search_cmd->add_option("--gens", generations, "generations");
    search_cmd->add_option("--pc-bad", pc_bad, "crossover %, below-average individuals");
    search_cmd->add_option("--pc-good", pc_good, "crossover %, rest");
    search_cmd->add_option("--pm-bad", pm_bad, "mutation %, below-average individuals");
    search_cmd->add_option("--pm-good", pm_good, "mutation %, rest");
    search_cmd->add_option("--discard", search_defaults.discard_count,
                           "cuckoo: worst nests rebuilt per generation");
    search_cmd->add_option("--perturbation", search_defaults.perturbation_mean,
                           "cuckoo: mean swaps per candidate");
    search_cmd->add_option("--tournament", search_defaults.tournament_size,
                           "micro-ga: tournament size");
    search_cmd->add_option("--stall", search_defaults.restart_stall,
                           "micro-ga: stalled generations before restart");
    search_cmd->add_option("--threads", threads, "parallel fitness evaluation");

    CLI::App* compare_cmd = app.add_subcommand("compare", "per-generation table for all algorithms");
    add_common(compare_cmd);
    compare_cmd->add_option("--seed", seeds, "seed (repeatable)")->envname("CITO_SEED");
    compare_cmd->add_option("--pop", population, "population size");
    compare_cmd->add_option("--gens", generations, "generations");

    CLI::App* repro_cmd = app.add_subcommand("repro", "run an embedded case study checklist");
    repro_cmd->add_option("case", repro_case, "atm or briand")
        ->required()
        ->check(CLI::IsMember({"atm", "briand"}));
    repro_cmd->add_option("--out", in.out_path, "write output to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints message and usage
        return code == 0 ? 0 : 1;
    }

    try {
        std::ostringstream out;
        if (map_cmd->parsed()) {
            std::string text = read_file(in.input_path);
            cito::Cdg cdg = load_cdg(text);
            out << cito::report_metadata(text, "", "", "");
            out << cito::write_edge_list_csv(cdg);
        } else if (analyze_cmd->parsed()) {
            Loaded loaded = load_and_analyze(in);
            out << cito::report_metadata(loaded.text, "", in.variant, "");
            out << "# sccs: " << loaded.analysis.scc.components.size() << "\n";
            std::size_t nontrivial = 0;
            for (const auto& c : loaded.analysis.scc.components) {
                if (c.size() < 2) continue;
                out << "# scc " << ++nontrivial << ":";
                for (int v : c) out << ' ' << loaded.cdg.node(v).id;
                out << "\n";
            }
            out << "# nontrivial_sccs: " << nontrivial << "\n";
            out << "# cycles: " << loaded.analysis.cycles.size() << "\n";
            out << cito::write_metrics_csv(loaded.cdg, loaded.analysis);
        } else if (break_cmd->parsed()) {
            Loaded loaded = load_and_analyze(in);
            cito::BreakPlan plan = strategy == "cwr" ? cito::cwr_break(loaded.cdg, loaded.analysis)
                                                     : cito::greedy_break(loaded.cdg, loaded.analysis);
            out << cito::report_metadata(loaded.text, strategy, in.variant, "");
            out << cito::write_plan_csv(loaded.cdg, plan);
        } else if (order_cmd->parsed()) {
            Loaded loaded = load_and_analyze(in);
            cito::BreakPlan plan = strategy == "cwr" ? cito::cwr_break(loaded.cdg, loaded.analysis)
                                                     : cito::greedy_break(loaded.cdg, loaded.analysis);
            cito::OrderConvention conv = direction == "servers-first"
                                             ? cito::OrderConvention::servers_first
                                             : cito::OrderConvention::clients_first;
            cito::TestOrder order = cito::topo_order(plan.residual, conv);
            cito::StubReport report = cito::stub_report(loaded.cdg, plan, order);
            out << cito::report_metadata(loaded.text, strategy, in.variant, "");
            out << "# direction: " << direction << "\n";
            out << "# specific_stubs: " << report.specific_stubs.size() << "\n";
            out << "# realistic_stubs: " << report.realistic_stubs.size() << "\n";
            out << "# integration_steps: " << report.integration_steps << "\n";
            out << "# integration_cost: " << cito::format_fixed(report.integration_cost.to_double())
                << "\n";
            out << cito::write_order_csv(order);
            out << "# order: " << cito::write_order_text(order) << "\n";
        } else if (search_cmd->parsed()) {
            Loaded loaded = load_and_analyze(in);
            cito::FitnessFunction fit = cito::FitnessFunction::from_analysis(loaded.cdg, loaded.analysis);
            cito::SearchConfig config;
            config.algorithm = algo == "micro-ga" ? cito::Algorithm::micro_ga
                               : algo == "cuckoo" ? cito::Algorithm::cuckoo
                                                  : cito::Algorithm::ga;
            config.population = population;
            config.generations = generations;
            config.seed = seed;
            config.pc_bad = pc_bad;
            config.pc_good = pc_good;
            config.pm_bad = pm_bad;
            config.pm_good = pm_good;
            config.discard_count = search_defaults.discard_count;
            config.perturbation_mean = search_defaults.perturbation_mean;
            config.tournament_size = search_defaults.tournament_size;
            config.restart_stall = search_defaults.restart_stall;
            config.threads = threads;
            cito::SearchResult result = cito::run_search(fit, config);
            out << cito::report_metadata(loaded.text, to_string(config.algorithm), in.variant,
                                         std::to_string(seed));
            out << "# rng: " << result.rng_name << "\n";
            out << cito::write_stats_csv(loaded.cdg, result);
        } else if (compare_cmd->parsed()) {
            Loaded loaded = load_and_analyze(in);
            cito::FitnessFunction fit = cito::FitnessFunction::from_analysis(loaded.cdg, loaded.analysis);
            cito::SearchConfig config;
            config.population = population;
            config.generations = generations;
            if (seeds.empty()) seeds.push_back(0);
            std::string seed_list;
            for (auto s : seeds) seed_list += (seed_list.empty() ? "" : " ") + std::to_string(s);
            auto rows = cito::compare_algorithms(fit, config, seeds);
            out << cito::report_metadata(loaded.text, "compare", in.variant, seed_list);
            out << cito::write_comparison_csv(rows);
        } else if (repro_cmd->parsed()) {
            int rc = repro_case == "atm" ? run_repro_atm(out) : run_repro_briand(out);
            write_output(in.out_path, out.str());
            return rc;
        }
        write_output(in.out_path, out.str());
        return 0;
    } catch (const cito::InfeasibleCycleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cito::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cito::ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cito::CycleLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
