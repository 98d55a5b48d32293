#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gamut/meta.hpp"
#include "gamut/mutation.hpp"
#include "gamut/rng.hpp"
#include "gamut/tour.hpp"
#include "gamut/tsplib.hpp"

namespace gamut {

// One run's parameters. Defaults follow the reference protocol: population
// 100, 1600 generations, mutation always applied, no crossover, and
// truncation survival of the best population_size individuals.
struct GaConfig {
    int population_size = 100;
    int generations = 1600;
    double mutation_probability = 1.0;
    double crossover_probability = 0.0;  // fixed; crossover is out of scope
    int elite_keep = 0;                  // 0 means population_size
    MutationKind op = MutationKind::SBM;
    OperatorPool pool = OperatorPool::full12();
    std::uint64_t seed = 1;
    int window_radius = 5;
    int candidate_count = 5;

    int survivors() const { return elite_keep == 0 ? population_size : elite_keep; }

    void validate() const {
        if (population_size < 1) throw std::invalid_argument("population_size must be positive");
        if (generations < 0) throw std::invalid_argument("generations must be non-negative");
        if (mutation_probability < 0.0 || mutation_probability > 1.0)
            throw std::invalid_argument("mutation_probability must be in [0,1]");
        if (crossover_probability != 0.0)
            throw std::invalid_argument("crossover_probability is fixed at 0");
        if (survivors() != population_size)
            throw std::invalid_argument("elite_keep must equal population_size");
        if (is_meta(op)) pool.validate();
    }
};

// Members kept sorted ascending by length; members[0] is the incumbent best.
struct Population {
    std::vector<Tour> members;
};

inline bool contains_genotype(const Population& pop, const Tour& t) {
    return genotype_present(std::span<const Tour>(pop.members), t);
}

struct GenerationStat {
    double best = 0.0;
    double mean = 0.0;
    SelectionStats selections;  // meta-operator tallies for this generation
};

// Everything recorded about one run: the best length after each generation,
// the final best tour, the wall time, and the meta-operator tallies.
struct RunRecord {
    std::vector<double> best_series;
    Tour best;
    double wall_ms = 0.0;
    SelectionStats selections;
};

// Test/instrumentation taps; empty by default.
struct GaHooks {
    SbmObserver on_sbm;
};

inline Population init_population(const TspInstance& inst, const GaConfig& cfg, RngStream& rng) {
    const int n = inst.dimension();
    std::vector<City> base(static_cast<std::size_t>(n));
    std::iota(base.begin(), base.end(), 0);
    Population pop;
    pop.members.reserve(static_cast<std::size_t>(cfg.population_size));
    for (int i = 0; i < cfg.population_size; ++i) {
        std::vector<City> cities = base;
        // Fisher-Yates over indices 1..n-1; the start city stays put.
        for (int j = n - 1; j > 1; --j) {
            const auto k = 1 + rng.uniform_index(static_cast<std::uint64_t>(j));
            std::swap(cities[static_cast<std::size_t>(j)], cities[k]);
        }
        pop.members.push_back(make_tour(inst, std::move(cities)));
    }
    std::stable_sort(pop.members.begin(), pop.members.end(),
                     [](const Tour& a, const Tour& b) { return a.length < b.length; });
    return pop;
}

// One generation: every member reproduces (subject to mutation_probability),
// then the best population_size individuals of parents + offspring survive.
// Ties prefer parents, then lower index, so runs are reproducible.
inline GenerationStat step_generation(const TspInstance& inst, const MutationContext& ctx,
                                      Population& pop, const GaConfig& cfg, RngStream& rng,
                                      const GaHooks& hooks = {}) {
    GenerationStat stat;

    std::vector<std::uint64_t> hashes;
    if (cfg.op == MutationKind::SBM) {
        hashes.reserve(pop.members.size());
        for (const Tour& m : pop.members) hashes.push_back(genotype_hash(m.cities));
    }
    const PopulationView view{pop.members, hashes};

    std::vector<Tour> offspring;
    offspring.reserve(pop.members.size());
    for (const Tour& parent : pop.members) {
        if (cfg.mutation_probability <= 0.0) continue;
        if (cfg.mutation_probability < 1.0 && rng.uniform01() >= cfg.mutation_probability)
            continue;
        switch (cfg.op) {
            case MutationKind::SBM:
                offspring.push_back(sbm_mutate(parent, cfg.pool, view, ctx, rng,
                                               &stat.selections, hooks.on_sbm));
                break;
            case MutationKind::SAM:
                offspring.push_back(sam_mutate(parent, cfg.pool, ctx, rng, &stat.selections));
                break;
            default:
                offspring.push_back(apply_mutation(cfg.op, parent, ctx, rng));
                break;
        }
    }

    std::vector<Tour> combined;
    combined.reserve(pop.members.size() + offspring.size());
    for (Tour& t : pop.members) combined.push_back(std::move(t));
    for (Tour& t : offspring) combined.push_back(std::move(t));
    std::stable_sort(combined.begin(), combined.end(),
                     [](const Tour& a, const Tour& b) { return a.length < b.length; });
    combined.resize(static_cast<std::size_t>(cfg.survivors()));
    pop.members = std::move(combined);

    stat.best = pop.members.front().length;
    double sum = 0.0;
    for (const Tour& m : pop.members) sum += m.length;
    stat.mean = sum / static_cast<double>(pop.members.size());
    return stat;
}

inline RunRecord run_ga(const TspInstance& inst, const GaConfig& cfg, const GaHooks& hooks = {}) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    RngStream rng(cfg.seed);
    const NearestNeighborTable nn(inst);
    const MutationContext ctx{inst, nn, cfg.window_radius, cfg.candidate_count};

    Population pop = init_population(inst, cfg, rng);
    RunRecord record;
    record.best_series.reserve(static_cast<std::size_t>(cfg.generations));
    for (int g = 0; g < cfg.generations; ++g) {
        const GenerationStat stat = step_generation(inst, ctx, pop, cfg, rng, hooks);
        record.best_series.push_back(stat.best);
        record.selections.merge(stat.selections);
    }
    record.best = pop.members.front();

    const auto stop = std::chrono::steady_clock::now();
    record.wall_ms = std::max(
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(stop - start)
            .count(),
        1e-6);
    return record;
}

}  // namespace gamut
