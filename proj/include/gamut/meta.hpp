#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gamut/mutation.hpp"
#include "gamut/rng.hpp"
#include "gamut/tour.hpp"

namespace gamut {

// Ordered list of concrete operators a multi-mutation strategy draws from.
struct OperatorPool {
    std::vector<MutationKind> kinds;

    // All 12 concrete operators in report-table order.
    static OperatorPool full12() {
        OperatorPool pool;
        for (int i = 0; i < kConcreteOperatorCount; ++i)
            pool.kinds.push_back(static_cast<MutationKind>(i));
        return pool;
    }

    // Only the 10 proposed operators, without the two baselines.
    static OperatorPool strict10() {
        OperatorPool pool = full12();
        pool.kinds.erase(pool.kinds.begin(), pool.kinds.begin() + 2);
        return pool;
    }

    void validate() const {
        if (kinds.empty()) throw std::invalid_argument("operator pool is empty");
        for (MutationKind k : kinds)
            if (is_meta(k))
                throw std::invalid_argument("operator pool cannot contain SBM/SAM");
    }
};

// Per-operator tallies: how often SBM emitted an operator's offspring, or
// how often SAM drew the operator.
struct SelectionStats {
    std::array<std::uint64_t, kMutationKindCount> counts{};

    void bump(MutationKind k) { ++counts[static_cast<std::size_t>(k)]; }
    std::uint64_t count(MutationKind k) const { return counts[static_cast<std::size_t>(k)]; }

    std::uint64_t total() const {
        std::uint64_t sum = 0;
        for (auto c : counts) sum += c;
        return sum;
    }

    void merge(const SelectionStats& other) {
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    }
};

// Percentages per concrete operator, table order. Fails on an empty tally.
inline std::vector<std::pair<MutationKind, double>> selection_report(const SelectionStats& stats) {
    const auto total = stats.total();
    if (total == 0)
        throw std::runtime_error("selection report: no recorded invocations");
    std::vector<std::pair<MutationKind, double>> rows;
    for (int i = 0; i < kConcreteOperatorCount; ++i) {
        const auto k = static_cast<MutationKind>(i);
        rows.emplace_back(k, 100.0 * static_cast<double>(stats.count(k)) /
                                 static_cast<double>(total));
    }
    return rows;
}

// Read-only view of a population for the SBM duplicate check. The optional
// genotype hashes (same order as members) make the check O(n + population)
// instead of O(n * population).
struct PopulationView {
    std::span<const Tour> members;
    std::span<const std::uint64_t> hashes = {};
};

inline std::uint64_t genotype_hash(const std::vector<City>& cities) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (City c : cities) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c));
        h *= 0x100000001B3ULL;
    }
    return h;
}

inline bool genotype_present(const PopulationView& view, const Tour& t,
                             std::uint64_t t_hash) {
    if (view.hashes.empty()) return genotype_present(view.members, t);
    for (std::size_t i = 0; i < view.members.size(); ++i)
        if (view.hashes[i] == t_hash && same_genotype(view.members[i], t)) return true;
    return false;
}

// What one SBM invocation saw, for instrumentation: candidate lengths in
// pool order, which candidates were already in the population, and which
// one was emitted.
struct SbmTrace {
    std::vector<double> lengths;
    std::vector<bool> in_population;
    std::size_t winner = 0;
};

using SbmObserver = std::function<void(const SbmTrace&)>;

// Select-best-mutation: apply every pooled operator to the parent (sharing
// the rng in pool order) and emit the shortest offspring that is not yet in
// the population; ties go to the earliest pool entry. When every candidate
// already exists in the population, the shortest one is emitted anyway and
// truncation selection deals with it.
template <UniformRandomSource R>
Tour sbm_mutate(const Tour& parent, const OperatorPool& pool, const PopulationView& population,
                const MutationContext& ctx, R& rng, SelectionStats* stats = nullptr,
                const SbmObserver& observer = {}) {
    std::vector<Tour> offspring;
    offspring.reserve(pool.kinds.size());
    std::ptrdiff_t best_absent = -1;
    std::ptrdiff_t best_any = -1;
    std::vector<bool> in_population(pool.kinds.size(), false);
    for (std::size_t i = 0; i < pool.kinds.size(); ++i) {
        offspring.push_back(apply_mutation(pool.kinds[i], parent, ctx, rng));
        const Tour& child = offspring.back();
        const bool present = genotype_present(population, child, genotype_hash(child.cities));
        in_population[i] = present;
        if (best_any < 0 || child.length < offspring[static_cast<std::size_t>(best_any)].length)
            best_any = static_cast<std::ptrdiff_t>(i);
        if (!present &&
            (best_absent < 0 ||
             child.length < offspring[static_cast<std::size_t>(best_absent)].length))
            best_absent = static_cast<std::ptrdiff_t>(i);
    }
    const auto winner = static_cast<std::size_t>(best_absent >= 0 ? best_absent : best_any);
    if (stats) stats->bump(pool.kinds[winner]);
    if (observer) {
        SbmTrace trace;
        trace.lengths.reserve(offspring.size());
        for (const Tour& child : offspring) trace.lengths.push_back(child.length);
        trace.in_population = in_population;
        trace.winner = winner;
        observer(trace);
    }
    return std::move(offspring[winner]);
}

// Select-any-mutation: draw one pooled operator uniformly and apply it.
template <UniformRandomSource R>
Tour sam_mutate(const Tour& parent, const OperatorPool& pool, const MutationContext& ctx,
                R& rng, SelectionStats* stats = nullptr) {
    const auto i = rng.uniform_index(pool.kinds.size());
    if (stats) stats->bump(pool.kinds[i]);
    return apply_mutation(pool.kinds[i], parent, ctx, rng);
}

}  // namespace gamut
