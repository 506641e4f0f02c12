#include <catch2/catch_amalgamated.hpp>

#include "cito/datasets.hpp"
#include "cito/io.hpp"
#include "cito/search.hpp"
#include "oracles.hpp"

using namespace cito;

namespace {

Cdg atm() {
    auto model = parse_model(datasets::atm_model());
    return map_uml_to_cdg(std::move(model.nodes), model.relations);
}

FitnessFunction three_node_example() {
    // a->b costs 2, b->c costs 3, c->a costs 5
    return FitnessFunction({{0, 1, 2.0}, {1, 2, 3.0}, {2, 0, 5.0}}, 3);
}

FitnessFunction unit_ring(std::size_t n) {
    std::vector<FitnessFunction::Term> terms;
    for (std::size_t i = 0; i < n; ++i)
        terms.push_back({static_cast<int>(i), static_cast<int>((i + 1) % n), 1.0});
    return FitnessFunction(std::move(terms), n);
}

}  // namespace

TEST_CASE("fitness counts stubs for clients integrated before their servers") {
    FitnessFunction fit = three_node_example();
    CHECK(fit({2, 1, 0}) == Catch::Approx(5.0));  // order c, b, a stubs only c->a
    CHECK(fit({0, 1, 2}) == Catch::Approx(5.0));
    CHECK(oracle::best_fitness_exhaustive(fit) == Catch::Approx(2.0));
    CHECK_THROWS_AS(fit({0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(fit({0, 1}), std::invalid_argument);
}

TEST_CASE("order emitting every server before its clients costs nothing") {
    // acyclic chain a->b->c: servers-first order is c, b, a
    FitnessFunction fit({{0, 1, 2.0}, {1, 2, 4.0}}, 3);
    CHECK(fit({2, 1, 0}) == Catch::Approx(0.0));
}

TEST_CASE("crossover and mutation preserve permutations") {
    SearchRng rng(99);
    const std::size_t n = 9;
    std::vector<int> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = b[i] = static_cast<int>(i);
    for (int round = 0; round < 10000; ++round) {
        rng.shuffle(a);
        rng.shuffle(b);
        auto child = order_crossover(a, b, 1 + rng.index(n - 1));
        REQUIRE(is_permutation_of_all(child, n));
        swap_mutation(child, rng);
        REQUIRE(is_permutation_of_all(child, n));
    }
}

TEST_CASE("bad classification is strict") {
    CHECK(classified_bad(10.0, 5.0));
    CHECK_FALSE(classified_bad(5.0, 5.0));  // ties count as good
    CHECK_FALSE(classified_bad(1.0, 5.0));
}

TEST_CASE("single-class model is solved in one generation") {
    FitnessFunction fit({}, 1);
    SearchConfig config;
    config.generations = 1;
    for (Algorithm algo : {Algorithm::ga, Algorithm::micro_ga, Algorithm::cuckoo}) {
        config.algorithm = algo;
        SearchResult res = run_search(fit, config);
        CHECK(res.best_order == std::vector<int>{0});
        CHECK(res.best_fitness == Catch::Approx(0.0));
    }
}

TEST_CASE("elitism keeps the minimum fitness non-increasing") {
    Cdg cdg = atm();
    AnalysisResult analysis = analyze(cdg);
    FitnessFunction fit = FitnessFunction::from_analysis(cdg, analysis);
    SearchConfig config;
    config.generations = 22;
    config.seed = 7;
    for (Algorithm algo : {Algorithm::ga, Algorithm::micro_ga, Algorithm::cuckoo}) {
        config.algorithm = algo;
        SearchResult res = run_search(fit, config);
        REQUIRE(res.stats.size() == 22);
        for (std::size_t i = 1; i < res.stats.size(); ++i)
            CHECK(res.stats[i].min_fitness <= res.stats[i - 1].min_fitness + 1e-12);
        CHECK(res.best_fitness <= res.stats.front().min_fitness + 1e-12);
        for (const GenerationStats& g : res.stats)
            CHECK(g.min_fitness <= g.avg_fitness + 1e-12);
    }
}

TEST_CASE("identical seeds reproduce identical runs") {
    Cdg cdg = atm();
    AnalysisResult analysis = analyze(cdg);
    FitnessFunction fit = FitnessFunction::from_analysis(cdg, analysis);
    SearchConfig config;
    config.generations = 10;
    config.seed = 12345;
    for (Algorithm algo : {Algorithm::ga, Algorithm::micro_ga, Algorithm::cuckoo}) {
        config.algorithm = algo;
        SearchResult a = run_search(fit, config);
        SearchResult b = run_search(fit, config);
        CHECK(a.best_order == b.best_order);
        CHECK(a.best_fitness == b.best_fitness);
        CHECK(write_stats_csv(cdg, a) == write_stats_csv(cdg, b));
    }
}

TEST_CASE("threaded fitness evaluation does not change results") {
    Cdg cdg = atm();
    AnalysisResult analysis = analyze(cdg);
    FitnessFunction fit = FitnessFunction::from_analysis(cdg, analysis);
    SearchConfig config;
    config.generations = 6;
    config.seed = 31;
    SearchConfig threaded = config;
    threaded.threads = 4;
    SearchResult a = ga_search(fit, config);
    SearchResult b = ga_search(fit, threaded);
    CHECK(a.best_order == b.best_order);
    CHECK(write_stats_csv(cdg, a) == write_stats_csv(cdg, b));
}

TEST_CASE("five-node ring reaches the exhaustive optimum") {
    FitnessFunction fit = unit_ring(5);
    double best = oracle::best_fitness_exhaustive(fit);
    CHECK(best == Catch::Approx(1.0));
    SearchConfig config;
    config.population = 50;
    config.generations = 50;
    config.seed = 3;
    SearchResult res = ga_search(fit, config);
    CHECK(res.best_fitness == Catch::Approx(best));
}

TEST_CASE("ga finds the exhaustive optimum for most seeds on small models") {
    SearchRng model_rng(555);
    for (int instance = 0; instance < 3; ++instance) {
        Cdg model = oracle::random_model(model_rng, 4, 6, 0.5);
        AnalysisResult analysis = analyze(model);
        FitnessFunction fit = FitnessFunction::from_analysis(model, analysis);
        double best = oracle::best_fitness_exhaustive(fit);
        int hits = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            SearchConfig config;
            config.population = 50;
            config.generations = 100;
            config.seed = seed;
            if (ga_search(fit, config).best_fitness <= best + 1e-9) ++hits;
        }
        INFO("instance " << instance << ": " << hits << "/10");
        CHECK(hits >= 9);
    }
}

TEST_CASE("micro-ga and cuckoo solve the ring for most seeds") {
    FitnessFunction fit = unit_ring(5);
    double best = oracle::best_fitness_exhaustive(fit);
    int micro_hits = 0, cuckoo_hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SearchConfig micro;
        micro.algorithm = Algorithm::micro_ga;
        micro.population = 5;
        micro.generations = 200;
        micro.seed = seed;
        if (micro_ga_search(fit, micro).best_fitness <= best + 1e-9) ++micro_hits;

        SearchConfig ck;
        ck.algorithm = Algorithm::cuckoo;
        ck.generations = 200;
        ck.seed = seed;
        if (cuckoo_search(fit, ck).best_fitness <= best + 1e-9) ++cuckoo_hits;
    }
    // threshold measured over the seed range used here
    CHECK(micro_hits >= 8);
    CHECK(cuckoo_hits >= 8);
}

TEST_CASE("edges without coupling data carry the avoidance penalty") {
    std::vector<ClassNode> nodes{{"a", "", 1, 1}, {"b", "", 1, 1}, {"c", "", 1, 1}};
    std::vector<CdgEdge> edges{{"a", "b", DepKind::association, 0},   // no usage measured
                               {"b", "c", DepKind::association, 1},
                               {"c", "a", DepKind::inheritance, 1}};  // k = 0, free
    Cdg cdg(nodes, edges);
    AnalysisResult analysis = analyze(cdg);
    FitnessFunction fit = FitnessFunction::from_analysis(cdg, analysis, 10.0);

    double w_bc = 0.0;
    for (const EdgeMetrics& m : analysis.metrics)
        if (!m.weight.unbreakable && m.k == 1) w_bc = m.weight.value.to_double();
    double penalty = 10.0 * std::max(1.0, w_bc);

    // order a, b, c stubs both a->b (penalty) and b->c; c->a costs nothing
    CHECK(fit({0, 1, 2}) == Catch::Approx(penalty + w_bc));
    // order c, b, a stubs nothing
    CHECK(fit({2, 1, 0}) == Catch::Approx(0.0));
}

TEST_CASE("search beats or matches the greedy feedback cost on the ATM model") {
    Cdg cdg = atm();
    AnalysisResult analysis = analyze(cdg);
    FitnessFunction fit = FitnessFunction::from_analysis(cdg, analysis);
    BreakPlan plan = greedy_break(cdg, analysis);
    SearchConfig config;
    config.seed = 1;
    SearchResult res = ga_search(fit, config);
    CHECK(res.best_fitness <= plan.total_cost.to_double() + 1e-9);
}

TEST_CASE("config validation") {
    SearchConfig config;
    config.population = 1;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = SearchConfig{};
    config.pc_bad = 140.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = SearchConfig{};
    config.algorithm = Algorithm::cuckoo;
    config.population = 10;
    config.discard_count = 10;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    CHECK(SearchConfig{}.resolved_population() == 100);
    SearchConfig micro;
    micro.algorithm = Algorithm::micro_ga;
    CHECK(micro.resolved_population() == 5);
}

TEST_CASE("comparison table has one row per algorithm and generation") {
    Cdg cdg = atm();
    AnalysisResult analysis = analyze(cdg);
    FitnessFunction fit = FitnessFunction::from_analysis(cdg, analysis);
    SearchConfig config;
    config.generations = 4;
    auto rows = compare_algorithms(fit, config, {11});
    REQUIRE(rows.size() == 3 * 4);
    auto csv_a = write_comparison_csv(rows);
    auto csv_b = write_comparison_csv(compare_algorithms(fit, config, {11}));
    CHECK(csv_a == csv_b);
}
