#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cito/metrics.hpp"
#include "cito/model.hpp"
#include "cito/ordering.hpp"

namespace cito {

/// Seedable RNG with platform-stable sampling. mt19937_64 has a specified
/// output sequence; the distributions here avoid std::uniform_* (whose
/// results are implementation-defined) so identical seeds give identical
/// runs everywhere. The generator identity is reported in run metadata.
class SearchRng {
public:
    explicit SearchRng(std::uint64_t seed) : gen_(seed) {}

    static constexpr const char* name() { return "mt19937_64"; }

    std::uint64_t below(std::uint64_t n) {
        // rejection sampling, unbiased
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do { x = gen_(); } while (x >= limit);
        return x % n;
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

    double unit() { return (gen_() >> 11) * 0x1.0p-53; }

    /// Percentage roll in [0, 100).
    bool percent(double p) { return unit() * 100.0 < p; }

    /// Geometric draw >= 1 with the given mean (continue prob 1 - 1/mean).
    int geometric(double mean) {
        int k = 1;
        if (mean <= 1.0) return k;
        const double cont = 1.0 - 1.0 / mean;
        while (unit() < cont && k < 64) ++k;
        return k;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[index(i)]);
    }

private:
    std::mt19937_64 gen_;
};

/// Permutation of node indices plus its cached cost.
struct Chromosome {
    std::vector<int> order;
    double fitness = 0.0;
};

inline bool is_permutation_of_all(const std::vector<int>& order, std::size_t n) {
    if (order.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (int v : order) {
        if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)])
            return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

/// Total weight of the dependencies that need a stub under an order: every
/// breakable edge whose client is integrated before its server. Inheritance
/// and composition edges cost nothing; edges with no coupling signal cost a
/// large penalty so search avoids stubbing them.
class FitnessFunction {
public:
    struct Term { int client, server; double weight; };

    FitnessFunction(std::vector<Term> terms, std::size_t node_count)
        : terms_(std::move(terms)), node_count_(node_count) {}

    static FitnessFunction from_analysis(const Cdg& cdg, const AnalysisResult& analysis,
                                         double penalty_factor = 10.0) {
        double max_finite = 0.0;
        for (const EdgeMetrics& m : analysis.metrics)
            if (m.k == 1 && !m.weight.unbreakable)
                max_finite = std::max(max_finite, m.weight.value.to_double());
        const double penalty = penalty_factor * std::max(1.0, max_finite);

        std::vector<Term> terms;
        for (std::size_t i = 0; i < cdg.edge_count(); ++i) {
            const EdgeMetrics& m = analysis.metrics[i];
            if (m.k == 0) continue;
            const CdgEdge& e = cdg.edges()[i];
            terms.push_back({cdg.node_index(e.client), cdg.node_index(e.server),
                             m.weight.unbreakable ? penalty : m.weight.value.to_double()});
        }
        return FitnessFunction(std::move(terms), cdg.node_count());
    }

    std::size_t node_count() const { return node_count_; }

    double operator()(const std::vector<int>& order) const {
        if (!is_permutation_of_all(order, node_count_))
            throw std::invalid_argument("fitness: not a permutation of all classes");
        std::vector<int> pos(node_count_);
        for (std::size_t i = 0; i < order.size(); ++i)
            pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        double total = 0.0;
        for (const Term& t : terms_)
            if (pos[static_cast<std::size_t>(t.client)] < pos[static_cast<std::size_t>(t.server)])
                total += t.weight;
        return total;
    }

private:
    std::vector<Term> terms_;
    std::size_t node_count_;
};

enum class Algorithm { ga, micro_ga, cuckoo };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::ga: return "ga";
        case Algorithm::micro_ga: return "micro-ga";
        case Algorithm::cuckoo: return "cuckoo";
    }
    return "?";
}

struct SearchConfig {
    Algorithm algorithm = Algorithm::ga;
    int population = 0;  // 0 = per-algorithm default (100; micro-GA 5)
    int generations = 20;
    std::uint64_t seed = 0;
    // adaptive GA probabilities, percent
    double pc_bad = 75.0, pc_good = 25.0;
    double pm_bad = 25.0, pm_good = 15.0;
    // micro-GA
    int tournament_size = 2;
    int restart_stall = 5;
    // cuckoo
    int discard_count = 20;
    double perturbation_mean = 2.0;
    double penalty_factor = 10.0;
    int threads = 1;

    int resolved_population() const {
        if (population > 0) return population;
        return algorithm == Algorithm::micro_ga ? 5 : 100;
    }

    void validate() const {
        if (resolved_population() < 2) throw std::invalid_argument("population must be >= 2");
        if (generations < 1) throw std::invalid_argument("generations must be >= 1");
        for (double p : {pc_bad, pc_good, pm_bad, pm_good})
            if (p < 0.0 || p > 100.0) throw std::invalid_argument("probability out of [0,100]");
        if (algorithm == Algorithm::cuckoo && discard_count >= resolved_population())
            throw std::invalid_argument("discard_count must be < population");
    }
};

struct GenerationStats {
    int generation = 0;
    double avg_fitness = 0.0;
    double min_fitness = 0.0;
    std::vector<int> best_order;
};

struct SearchResult {
    Algorithm algorithm = Algorithm::ga;
    std::uint64_t seed = 0;
    std::vector<int> best_order;
    double best_fitness = 0.0;
    std::vector<GenerationStats> stats;
    std::string rng_name = SearchRng::name();
};

/// Strictly-worse-than-average individuals count as bad (ties are good).
inline bool classified_bad(double fitness, double average) { return fitness > average; }

/// One-point order-preserving crossover: prefix from the first parent up to
/// the cut, the rest in second-parent order.
inline std::vector<int> order_crossover(const std::vector<int>& a, const std::vector<int>& b,
                                        std::size_t cut) {
    std::vector<int> child(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<bool> used(a.size(), false);
    for (int v : child) used[static_cast<std::size_t>(v)] = true;
    for (int v : b)
        if (!used[static_cast<std::size_t>(v)]) child.push_back(v);
    return child;
}

inline void swap_mutation(std::vector<int>& order, SearchRng& rng) {
    if (order.size() < 2) return;
    std::size_t i = rng.index(order.size());
    std::size_t j = rng.index(order.size());
    std::swap(order[i], order[j]);
}

namespace detail {

inline std::vector<int> random_permutation(std::size_t n, SearchRng& rng) {
    std::vector<int> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
    rng.shuffle(p);
    return p;
}

inline void evaluate_population(std::vector<Chromosome>& pop, const FitnessFunction& fit,
                                int threads) {
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) pop[i].fitness = fit(pop[i].order);
    };
    if (threads <= 1 || pop.size() < 8) {
        work(0, pop.size());
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (pop.size() + static_cast<std::size_t>(threads) - 1) /
                        static_cast<std::size_t>(threads);
    for (std::size_t begin = 0; begin < pop.size(); begin += chunk)
        pool.emplace_back(work, begin, std::min(begin + chunk, pop.size()));
    for (auto& t : pool) t.join();
}

inline void record_stats(std::vector<GenerationStats>& stats, int gen,
                         const std::vector<Chromosome>& pop) {
    double sum = 0.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        sum += pop[i].fitness;
        if (pop[i].fitness < pop[best].fitness) best = i;
    }
    stats.push_back({gen, sum / static_cast<double>(pop.size()), pop[best].fitness,
                     pop[best].order});
}

inline void track_best(const std::vector<Chromosome>& pop, Chromosome& best) {
    for (const Chromosome& c : pop)
        if (best.order.empty() || c.fitness < best.fitness) best = c;
}

}  // namespace detail

/// Adaptive GA: bad individuals (fitness above the generation average) get
/// the high crossover/mutation rates, good ones the low rates; the best
/// individual always survives unchanged.
inline SearchResult ga_search(const FitnessFunction& fit, SearchConfig config) {
    config.algorithm = Algorithm::ga;
    config.validate();
    SearchRng rng(config.seed);
    const std::size_t n = fit.node_count();

    std::vector<Chromosome> pop(static_cast<std::size_t>(config.resolved_population()));
    for (auto& c : pop) c.order = detail::random_permutation(n, rng);
    detail::evaluate_population(pop, fit, config.threads);

    SearchResult result;
    result.algorithm = Algorithm::ga;
    result.seed = config.seed;
    Chromosome best;
    detail::track_best(pop, best);

    for (int gen = 1; gen <= config.generations; ++gen) {
        detail::record_stats(result.stats, gen, pop);
        double avg = result.stats.back().avg_fitness;

        std::size_t elite = 0;
        for (std::size_t i = 1; i < pop.size(); ++i)
            if (pop[i].fitness < pop[elite].fitness) elite = i;

        std::vector<Chromosome> next;
        next.reserve(pop.size());
        next.push_back(pop[elite]);
        while (next.size() < pop.size()) {
            const Chromosome& p1 = pop[rng.index(pop.size())];
            const Chromosome& p2 = pop[rng.index(pop.size())];
            const bool bad = classified_bad(p1.fitness, avg);
            Chromosome child;
            if (rng.percent(bad ? config.pc_bad : config.pc_good) && n >= 2)
                child.order = order_crossover(p1.order, p2.order, 1 + rng.index(n - 1));
            else
                child.order = p1.order;
            if (rng.percent(bad ? config.pm_bad : config.pm_good)) swap_mutation(child.order, rng);
            next.push_back(std::move(child));
        }
        pop = std::move(next);
        detail::evaluate_population(pop, fit, config.threads);
        detail::track_best(pop, best);
    }

    result.best_order = best.order;
    result.best_fitness = best.fitness;
    return result;
}

/// Micro-GA: population of five, tournament selection, mandatory crossover,
/// no mutation; the non-elite individuals restart from scratch when
/// diversity collapses or the best stalls.
inline SearchResult micro_ga_search(const FitnessFunction& fit, SearchConfig config) {
    config.algorithm = Algorithm::micro_ga;
    config.validate();
    SearchRng rng(config.seed);
    const std::size_t n = fit.node_count();

    std::vector<Chromosome> pop(static_cast<std::size_t>(config.resolved_population()));
    for (auto& c : pop) c.order = detail::random_permutation(n, rng);
    detail::evaluate_population(pop, fit, config.threads);

    SearchResult result;
    result.algorithm = Algorithm::micro_ga;
    result.seed = config.seed;
    Chromosome best;
    detail::track_best(pop, best);

    auto tournament = [&](const std::vector<Chromosome>& from) -> const Chromosome& {
        std::size_t winner = rng.index(from.size());
        for (int i = 1; i < config.tournament_size; ++i) {
            std::size_t rival = rng.index(from.size());
            if (from[rival].fitness < from[winner].fitness) winner = rival;
        }
        return from[winner];
    };

    int stall = 0;
    for (int gen = 1; gen <= config.generations; ++gen) {
        detail::record_stats(result.stats, gen, pop);

        std::size_t elite = 0;
        for (std::size_t i = 1; i < pop.size(); ++i)
            if (pop[i].fitness < pop[elite].fitness) elite = i;

        bool collapsed = true;
        for (const Chromosome& c : pop)
            if (c.order != pop[elite].order) { collapsed = false; break; }

        std::vector<Chromosome> next;
        next.reserve(pop.size());
        next.push_back(pop[elite]);
        if (collapsed || stall >= config.restart_stall) {
            while (next.size() < pop.size())
                next.push_back({detail::random_permutation(n, rng), 0.0});
            stall = 0;
        } else {
            while (next.size() < pop.size()) {
                const Chromosome& p1 = tournament(pop);
                const Chromosome& p2 = tournament(pop);
                Chromosome child;
                child.order = n >= 2 ? order_crossover(p1.order, p2.order, 1 + rng.index(n - 1))
                                     : p1.order;
                next.push_back(std::move(child));
            }
        }
        pop = std::move(next);
        detail::evaluate_population(pop, fit, config.threads);

        double prev_best = best.fitness;
        detail::track_best(pop, best);
        stall = best.fitness < prev_best ? 0 : stall + 1;
    }

    result.best_order = best.order;
    result.best_fitness = best.fitness;
    return result;
}

/// Cuckoo search over permutations: each nest is perturbed by a geometric
/// number of random swaps (the discrete stand-in for a Levy step), an
/// improved candidate replaces its nest, and the worst nests are rebuilt
/// from scratch each generation.
inline SearchResult cuckoo_search(const FitnessFunction& fit, SearchConfig config) {
    config.algorithm = Algorithm::cuckoo;
    config.validate();
    SearchRng rng(config.seed);
    const std::size_t n = fit.node_count();

    std::vector<Chromosome> pop(static_cast<std::size_t>(config.resolved_population()));
    for (auto& c : pop) c.order = detail::random_permutation(n, rng);
    detail::evaluate_population(pop, fit, config.threads);

    SearchResult result;
    result.algorithm = Algorithm::cuckoo;
    result.seed = config.seed;
    Chromosome best;
    detail::track_best(pop, best);

    for (int gen = 1; gen <= config.generations; ++gen) {
        detail::record_stats(result.stats, gen, pop);

        for (Chromosome& nest : pop) {
            Chromosome candidate = nest;
            int swaps = rng.geometric(config.perturbation_mean);
            for (int s = 0; s < swaps; ++s) swap_mutation(candidate.order, rng);
            candidate.fitness = fit(candidate.order);
            if (candidate.fitness < nest.fitness) nest = std::move(candidate);
        }

        // rebuild the worst nests, keeping order stable among equals
        std::vector<std::size_t> by_fitness(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) by_fitness[i] = i;
        std::stable_sort(by_fitness.begin(), by_fitness.end(), [&](std::size_t a, std::size_t b) {
            return pop[a].fitness > pop[b].fitness;
        });
        for (int d = 0; d < config.discard_count; ++d) {
            Chromosome& nest = pop[by_fitness[static_cast<std::size_t>(d)]];
            nest.order = detail::random_permutation(n, rng);
            nest.fitness = fit(nest.order);
        }
        detail::track_best(pop, best);
    }

    result.best_order = best.order;
    result.best_fitness = best.fitness;
    return result;
}

inline SearchResult run_search(const FitnessFunction& fit, const SearchConfig& config) {
    switch (config.algorithm) {
        case Algorithm::ga: return ga_search(fit, config);
        case Algorithm::micro_ga: return micro_ga_search(fit, config);
        case Algorithm::cuckoo: return cuckoo_search(fit, config);
    }
    throw std::logic_error("unknown algorithm");
}

/// Runs every algorithm on shared inputs; one row per generation.
struct ComparisonRow {
    Algorithm algorithm;
    std::uint64_t seed;
    int generation;
    double avg_fitness;
    double min_fitness;
};

inline std::vector<ComparisonRow> compare_algorithms(const FitnessFunction& fit,
                                                     const SearchConfig& base,
                                                     const std::vector<std::uint64_t>& seeds) {
    std::vector<ComparisonRow> rows;
    for (Algorithm algo : {Algorithm::ga, Algorithm::micro_ga, Algorithm::cuckoo}) {
        for (std::uint64_t seed : seeds) {
            SearchConfig config = base;
            config.algorithm = algo;
            config.seed = seed;
            SearchResult res = run_search(fit, config);
            for (const GenerationStats& g : res.stats)
                rows.push_back({algo, seed, g.generation, g.avg_fitness, g.min_fitness});
        }
    }
    return rows;
}

}  // namespace cito
