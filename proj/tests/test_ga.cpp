#include <doctest.h>

#include <vector>

#include "gamut/ga.hpp"
#include "support.hpp"

using namespace gamut;
using namespace testsupport;

namespace {

GaConfig small_config(MutationKind op, int population, int generations, std::uint64_t seed) {
    GaConfig cfg;
    cfg.population_size = population;
    cfg.generations = generations;
    cfg.op = op;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("config validation") {
    GaConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    SUBCASE("crossover stays disabled") {
        cfg.crossover_probability = 0.5;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
    SUBCASE("elite keep must match the population") {
        cfg.elite_keep = 7;
        cfg.population_size = 10;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
    SUBCASE("mutation probability range") {
        cfg.mutation_probability = 1.5;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
}

TEST_CASE("initial population on a 3-city instance only has the two legal tours") {
    const TspInstance tri = triangle();
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        RngStream rng(seed);
        const Population pop = init_population(tri, small_config(MutationKind::Exchange, 20, 0, seed), rng);
        for (const Tour& t : pop.members) {
            const bool forward = t.cities == std::vector<City>{0, 1, 2};
            const bool backward = t.cities == std::vector<City>{0, 2, 1};
            CHECK((forward || backward));
        }
    }
}

TEST_CASE("initial population members are valid fixed-start permutations") {
    const TspInstance berlin = load_tsplib(data_path("berlin52.tsp"));
    const GaConfig cfg = small_config(MutationKind::Exchange, 100, 0, 42);
    RngStream rng(cfg.seed);
    const Population pop = init_population(berlin, cfg, rng);
    CHECK(pop.members.size() == 100);
    for (const Tour& t : pop.members) CHECK(is_valid_tour(berlin, t));
    for (std::size_t i = 1; i < pop.members.size(); ++i)
        CHECK(pop.members[i - 1].length <= pop.members[i].length);
}

TEST_CASE("identical seeds give identical initial populations") {
    const TspInstance eil = load_tsplib(data_path("eil51.tsp"));
    const GaConfig cfg = small_config(MutationKind::Exchange, 30, 0, 7);
    RngStream rng1(cfg.seed), rng2(cfg.seed);
    const Population a = init_population(eil, cfg, rng1);
    const Population b = init_population(eil, cfg, rng2);
    REQUIRE(a.members.size() == b.members.size());
    for (std::size_t i = 0; i < a.members.size(); ++i)
        CHECK(a.members[i].cities == b.members[i].cities);
}

TEST_CASE("zero mutation probability keeps the population unchanged") {
    const TspInstance eil = load_tsplib(data_path("eil51.tsp"));
    GaConfig cfg = small_config(MutationKind::Exchange, 10, 1, 3);
    cfg.mutation_probability = 0.0;
    RngStream rng(cfg.seed);
    const NearestNeighborTable nn(eil);
    const MutationContext ctx{eil, nn};
    Population pop = init_population(eil, cfg, rng);
    const Population before = pop;
    step_generation(eil, ctx, pop, cfg, rng);
    REQUIRE(pop.members.size() == before.members.size());
    for (std::size_t i = 0; i < pop.members.size(); ++i)
        CHECK(pop.members[i].cities == before.members[i].cities);
}

TEST_CASE("ties prefer the parent over an equal-length offspring") {
    const TspInstance l5 = line5();
    const NearestNeighborTable nn(l5);
    const MutationContext ctx{l5, nn};
    GaConfig cfg = small_config(MutationKind::WGWWGM, 1, 1, 1);
    Population pop;
    pop.members.push_back(make_tour(l5, {0, 1, 2, 3, 4}));
    RngStream rng(cfg.seed);
    // WGWWGM turns [0,1,2,3,4] into [0,1,2,4,3]; both have length 20.
    const GenerationStat stat = step_generation(l5, ctx, pop, cfg, rng);
    CHECK(stat.best == 20);
    CHECK(pop.members.size() == 1);
    CHECK(pop.members[0].cities == std::vector<City>{0, 1, 2, 3, 4});
}

TEST_CASE("a generation step never worsens the best member") {
    const TspInstance eil = load_tsplib(data_path("eil51.tsp"));
    const NearestNeighborTable nn(eil);
    const MutationContext ctx{eil, nn};
    for (MutationKind op : {MutationKind::Exchange, MutationKind::SBM, MutationKind::SAM}) {
        GaConfig cfg = small_config(op, 20, 0, 5);
        RngStream rng(cfg.seed);
        Population pop = init_population(eil, cfg, rng);
        double best = pop.members.front().length;
        for (int g = 0; g < 25; ++g) {
            const GenerationStat stat = step_generation(eil, ctx, pop, cfg, rng);
            CHECK(stat.best <= best);
            best = stat.best;
            CHECK(pop.members.size() == 20);
        }
        for (const Tour& t : pop.members) CHECK(is_valid_tour(eil, t));
    }
}

TEST_CASE("contains_genotype uses exact sequence equality") {
    const TspInstance eil = load_tsplib(data_path("eil51.tsp"));
    GaConfig cfg = small_config(MutationKind::Exchange, 10, 0, 9);
    RngStream rng(cfg.seed);
    Population pop = init_population(eil, cfg, rng);

    CHECK(contains_genotype(pop, pop.members[0]));

    // Reversing the tail yields the same cycle but a distinct genotype.
    Tour reversed = pop.members[0];
    std::reverse(reversed.cities.begin() + 1, reversed.cities.end());
    reversed.length = tour_length(eil, reversed);
    CHECK(reversed.length == pop.members[0].length);
    CHECK_FALSE(contains_genotype(pop, reversed));

    // Swapping two positions of a member yields a tour that is absent by
    // construction unless it collides with another member.
    Tour tweaked = pop.members[0];
    std::swap(tweaked.cities[1], tweaked.cities[2]);
    tweaked.length = tour_length(eil, tweaked);
    bool collides = false;
    for (const Tour& m : pop.members) collides |= m.cities == tweaked.cities;
    CHECK(contains_genotype(pop, tweaked) == collides);
}

TEST_CASE("zero generations returns the initial best") {
    const TspInstance eil = load_tsplib(data_path("eil51.tsp"));
    const GaConfig cfg = small_config(MutationKind::Exchange, 15, 0, 11);
    const RunRecord record = run_ga(eil, cfg);
    CHECK(record.best_series.empty());
    RngStream rng(cfg.seed);
    const Population pop = init_population(eil, cfg, rng);
    CHECK(record.best.cities == pop.members.front().cities);
}

TEST_CASE("runs are reproducible and elitist end to end") {
    const TspInstance eil = load_tsplib(data_path("eil51.tsp"));
    for (MutationKind op : {MutationKind::WGWRGM, MutationKind::SBM}) {
        const GaConfig cfg = small_config(op, 12, 40, 123);
        const RunRecord a = run_ga(eil, cfg);
        const RunRecord b = run_ga(eil, cfg);
        CHECK(a.best.cities == b.best.cities);
        CHECK(a.best_series == b.best_series);
        CHECK(a.selections.counts == b.selections.counts);
        CHECK(a.wall_ms > 0);

        REQUIRE(a.best_series.size() == 40);
        for (std::size_t g = 1; g < a.best_series.size(); ++g)
            CHECK(a.best_series[g] <= a.best_series[g - 1]);
        CHECK(is_valid_tour(eil, a.best));
        CHECK(a.best.length == a.best_series.back());
    }
}

TEST_CASE("meta strategies tally their selections during a run") {
    const TspInstance eil = load_tsplib(data_path("eil51.tsp"));
    GaConfig cfg = small_config(MutationKind::SAM, 10, 20, 77);
    const RunRecord record = run_ga(eil, cfg);
    CHECK(record.selections.total() == 10 * 20);

    cfg.op = MutationKind::WGWRGM;
    const RunRecord plain = run_ga(eil, cfg);
    CHECK(plain.selections.total() == 0);
}
