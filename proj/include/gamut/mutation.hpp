#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gamut/rng.hpp"
#include "gamut/tour.hpp"
#include "gamut/tsplib.hpp"

namespace gamut {

// The 12 concrete operators plus the two multi-mutation strategies.
// Display names are the table abbreviations used in reports.
enum class MutationKind {
    Exchange,
    Rearrangement,
    WGWRGM,
    WGWWGM,
    WLRGWRGM,
    WGWNNM,
    WGWWNNM,
    WGIBNNM,
    RGIBNNM,
    SWGLM,
    IBRGBWGM,
    IBRGBRGM,
    SBM,
    SAM,
};

inline constexpr int kMutationKindCount = 14;
inline constexpr int kConcreteOperatorCount = 12;

inline const char* to_string(MutationKind k) {
    switch (k) {
        case MutationKind::Exchange: return "Exchange";
        case MutationKind::Rearrangement: return "Rearrangement";
        case MutationKind::WGWRGM: return "WGWRGM";
        case MutationKind::WGWWGM: return "WGWWGM";
        case MutationKind::WLRGWRGM: return "WLRGWRGM";
        case MutationKind::WGWNNM: return "WGWNNM";
        case MutationKind::WGWWNNM: return "WGWWNNM";
        case MutationKind::WGIBNNM: return "WGIBNNM";
        case MutationKind::RGIBNNM: return "RGIBNNM";
        case MutationKind::SWGLM: return "SWGLM";
        case MutationKind::IBRGBWGM: return "IBRGBWGM";
        case MutationKind::IBRGBRGM: return "IBRGBRGM";
        case MutationKind::SBM: return "SBM";
        case MutationKind::SAM: return "SAM";
    }
    return "?";
}

inline std::optional<MutationKind> mutation_kind_from_string(const std::string& name) {
    for (int i = 0; i < kMutationKindCount; ++i) {
        const auto k = static_cast<MutationKind>(i);
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

inline bool is_meta(MutationKind k) {
    return k == MutationKind::SBM || k == MutationKind::SAM;
}

// Shared, read-only inputs of every operator.
struct MutationContext {
    const TspInstance& instance;
    const NearestNeighborTable& nn;
    int window_radius = 5;    // the +/- positional window around Ncity
    int candidate_count = 5;  // random cities drawn by the insert-best operators
};

// Position (never 0) and the distance quantity it maximizes.
struct WorstGeneProbe {
    int index = 0;
    double contribution = 0.0;
};

namespace detail {

// Positions 1..n-1 are mutable; index 0 holds the fixed route start.
template <UniformRandomSource R>
int random_position(R& rng, int n) {
    return 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n - 1)));
}

template <UniformRandomSource R>
int random_position_excluding(R& rng, int n, int excluded) {
    int pos = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n - 2)));
    if (pos >= excluded) ++pos;
    return pos;
}

// Circular arithmetic on the ring of mutable positions 1..n-1.
inline int ring_position(int pos, int delta, int n) {
    const int m = n - 1;
    int idx = (pos - 1 + delta) % m;
    if (idx < 0) idx += m;
    return idx + 1;
}

inline int position_of(const std::vector<City>& cities, City c) {
    for (std::size_t i = 0; i < cities.size(); ++i)
        if (cities[i] == c) return static_cast<int>(i);
    return -1;
}

inline Tour swapped(const TspInstance& inst, const Tour& parent, int a, int b) {
    Tour child{parent.cities, 0.0};
    std::swap(child.cities[static_cast<std::size_t>(a)],
              child.cities[static_cast<std::size_t>(b)]);
    child.length = tour_length(inst, child);
    return child;
}

// Remove the city at `from` and reinsert it at position `to` of the result.
inline Tour displaced(const TspInstance& inst, const Tour& parent, int from, int to) {
    Tour child{parent.cities, 0.0};
    const City moved = child.cities[static_cast<std::size_t>(from)];
    child.cities.erase(child.cities.begin() + from);
    child.cities.insert(child.cities.begin() + to, moved);
    child.length = tour_length(inst, child);
    return child;
}

}  // namespace detail

// Position with the largest distance to its left neighbor (ties: smallest
// index). The scan starts at index 1; the start city never qualifies.
inline WorstGeneProbe worst_gene_left(const Tour& t, const MutationContext& ctx) {
    const int n = static_cast<int>(t.cities.size());
    assert(n >= 3);
    WorstGeneProbe probe{1, ctx.instance.distance(t.cities[0], t.cities[1])};
    for (int i = 2; i < n; ++i) {
        const double d = ctx.instance.distance(t.cities[static_cast<std::size_t>(i - 1)],
                                               t.cities[static_cast<std::size_t>(i)]);
        if (d > probe.contribution) probe = {i, d};
    }
    return probe;
}

// The two positions with the largest and second-largest left-edge
// contributions, ties resolved toward smaller indices.
inline std::pair<WorstGeneProbe, WorstGeneProbe> worst_gene_pair(const Tour& t,
                                                                 const MutationContext& ctx) {
    const int n = static_cast<int>(t.cities.size());
    assert(n >= 4);
    const WorstGeneProbe first = worst_gene_left(t, ctx);
    WorstGeneProbe second{0, -1.0};
    for (int i = 1; i < n; ++i) {
        if (i == first.index) continue;
        const double d = ctx.instance.distance(t.cities[static_cast<std::size_t>(i - 1)],
                                               t.cities[static_cast<std::size_t>(i)]);
        if (d > second.contribution) second = {i, d};
    }
    return {first, second};
}

// Position maximizing the summed distance to both neighbors, treating the
// chromosome as circular (the right neighbor of the last gene is the start).
inline WorstGeneProbe worst_gene_lr(const Tour& t, const MutationContext& ctx) {
    const int n = static_cast<int>(t.cities.size());
    assert(n >= 3);
    WorstGeneProbe probe{0, -1.0};
    for (int i = 1; i < n; ++i) {
        const City left = t.cities[static_cast<std::size_t>(i - 1)];
        const City self = t.cities[static_cast<std::size_t>(i)];
        const City right = t.cities[static_cast<std::size_t>((i + 1) % n)];
        const double d = ctx.instance.distance(left, self) + ctx.instance.distance(self, right);
        if (d > probe.contribution) probe = {i, d};
    }
    return probe;
}

// Candidate positions around Ncity's position for the nearest-neighbor
// operators: the window ni +/- radius wrapped over the ring of mutable
// positions, excluding ni itself and the worst position. When the window
// covers the whole ring the candidate set is every position minus the
// exclusions. ni == 0 means Ncity is the fixed start; the window then
// brackets the start slot.
inline std::vector<int> nn_window_positions(int n, int radius, int ni, int worst) {
    const int m = n - 1;
    std::vector<int> positions;
    if (2 * radius + 1 >= m) {
        for (int p = 1; p < n; ++p)
            if (p != ni && p != worst) positions.push_back(p);
        return positions;
    }
    if (ni == 0) {
        for (int p = 1; p <= radius; ++p)
            if (p != worst) positions.push_back(p);
        for (int p = n - radius; p < n; ++p)
            if (p != worst) positions.push_back(p);
    } else {
        for (int delta = -radius; delta <= radius; ++delta) {
            if (delta == 0) continue;
            const int p = detail::ring_position(ni, delta, n);
            if (p != worst && p != ni) positions.push_back(p);
        }
    }
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    return positions;
}

// Exchange mutation: swap two distinct random positions.
template <UniformRandomSource R>
Tour exchange(const Tour& parent, const MutationContext& ctx, R& rng) {
    const int n = static_cast<int>(parent.cities.size());
    assert(n >= 3);
    const int a = detail::random_position(rng, n);
    const int b = detail::random_position_excluding(rng, n, a);
    return detail::swapped(ctx.instance, parent, a, b);
}

// Rearrangement mutation: displace the city at a random position to another
// random position. The source reference describes no procedure, so this is a
// stand-in: the simplest operator consistent with the name.
template <UniformRandomSource R>
Tour rearrangement(const Tour& parent, const MutationContext& ctx, R& rng) {
    const int n = static_cast<int>(parent.cities.size());
    assert(n >= 3);
    const int from = detail::random_position(rng, n);
    const int to = detail::random_position_excluding(rng, n, from);
    return detail::displaced(ctx.instance, parent, from, to);
}

// Worst gene with random gene mutation.
template <UniformRandomSource R>
Tour wgwrgm(const Tour& parent, const MutationContext& ctx, R& rng) {
    const int n = static_cast<int>(parent.cities.size());
    assert(n >= 3);
    const int w = worst_gene_left(parent, ctx).index;
    const int r = detail::random_position_excluding(rng, n, w);
    return detail::swapped(ctx.instance, parent, w, r);
}

// Worst gene with worst gene mutation (deterministic).
template <UniformRandomSource R>
Tour wgwwgm(const Tour& parent, const MutationContext& ctx, R&) {
    assert(parent.cities.size() >= 4);
    const auto [first, second] = worst_gene_pair(parent, ctx);
    return detail::swapped(ctx.instance, parent, first.index, second.index);
}

// Worst left-and-right gene with random gene mutation.
template <UniformRandomSource R>
Tour wlrgwrgm(const Tour& parent, const MutationContext& ctx, R& rng) {
    const int n = static_cast<int>(parent.cities.size());
    assert(n >= 3);
    const int w = worst_gene_lr(parent, ctx).index;
    const int r = detail::random_position_excluding(rng, n, w);
    return detail::swapped(ctx.instance, parent, w, r);
}

namespace detail {

struct NnProbe {
    int worst;
    int ni;
    City ncity;
};

inline NnProbe nn_probe(const Tour& t, const MutationContext& ctx) {
    const int w = worst_gene_lr(t, ctx).index;
    const City ncity = ctx.nn.nearest(t.cities[static_cast<std::size_t>(w)]);
    return {w, position_of(t.cities, ncity), ncity};
}

}  // namespace detail

// Worst gene with nearest neighbor mutation: swap the worst city with a
// random city from the window around its nearest city's position.
template <UniformRandomSource R>
Tour wgwnnm(const Tour& parent, const MutationContext& ctx, R& rng) {
    const int n = static_cast<int>(parent.cities.size());
    assert(n >= 4);
    const auto probe = detail::nn_probe(parent, ctx);
    const auto candidates = nn_window_positions(n, ctx.window_radius, probe.ni, probe.worst);
    const int pick = candidates[rng.uniform_index(candidates.size())];
    return detail::swapped(ctx.instance, parent, probe.worst, pick);
}

// Worst gene with the worst around the nearest neighbor mutation: like
// wgwnnm but deterministically picks the window city furthest from Ncity.
template <UniformRandomSource R>
Tour wgwwnnm(const Tour& parent, const MutationContext& ctx, R&) {
    const int n = static_cast<int>(parent.cities.size());
    assert(n >= 4);
    const auto probe = detail::nn_probe(parent, ctx);
    const auto candidates = nn_window_positions(n, ctx.window_radius, probe.ni, probe.worst);
    int pick = candidates.front();
    double best_d = -1.0;
    for (int p : candidates) {
        const double d =
            ctx.instance.distance(parent.cities[static_cast<std::size_t>(p)], probe.ncity);
        if (d > best_d) {
            best_d = d;
            pick = p;
        }
    }
    return detail::swapped(ctx.instance, parent, probe.worst, pick);
}

namespace detail {

// Move the city at `from` directly before its nearest city. "Before" is
// cyclic: when the nearest city is the fixed start, the moved city lands at
// the tail of the chromosome.
inline Tour insert_before_nearest(const Tour& parent, const MutationContext& ctx, int from) {
    Tour child{parent.cities, 0.0};
    const City moved = child.cities[static_cast<std::size_t>(from)];
    const City ncity = ctx.nn.nearest(moved);
    child.cities.erase(child.cities.begin() + from);
    const int q = position_of(child.cities, ncity);
    if (q == 0)
        child.cities.push_back(moved);
    else
        child.cities.insert(child.cities.begin() + q, moved);
    child.length = tour_length(ctx.instance, child);
    return child;
}

}  // namespace detail

// Worst gene inserted beside nearest neighbor mutation (deterministic).
template <UniformRandomSource R>
Tour wgibnnm(const Tour& parent, const MutationContext& ctx, R&) {
    assert(parent.cities.size() >= 4);
    const int w = worst_gene_lr(parent, ctx).index;
    return detail::insert_before_nearest(parent, ctx, w);
}

// Random gene inserted beside nearest neighbor mutation.
template <UniformRandomSource R>
Tour rgibnnm(const Tour& parent, const MutationContext& ctx, R& rng) {
    const int n = static_cast<int>(parent.cities.size());
    assert(n >= 4);
    const int from = detail::random_position(rng, n);
    return detail::insert_before_nearest(parent, ctx, from);
}

// Swap worst gene locally mutation: try swapping the two left neighbors of
// the worst gene (F1) and swapping the worst gene with its right neighbor
// (F2); return the shorter offspring, F1 on ties.
template <UniformRandomSource R>
Tour swglm(const Tour& parent, const MutationContext& ctx, R&) {
    const int n = static_cast<int>(parent.cities.size());
    assert(n >= 3);
    const int w = worst_gene_lr(parent, ctx).index;
    const int l1 = detail::ring_position(w, -1, n);
    const int l2 = detail::ring_position(w, -2, n);
    const int r1 = detail::ring_position(w, +1, n);
    Tour f2 = detail::swapped(ctx.instance, parent, w, r1);
    if (std::minmax(l1, l2) == std::minmax(w, r1)) return f2;
    Tour f1 = detail::swapped(ctx.instance, parent, l1, l2);
    return f1.length > f2.length ? f2 : f1;
}

namespace detail {

// Shared core of the insert-best operators: draw candidate cities, score
// each by distance(candidate, anchor city) + distance(candidate, its
// predecessor), and splice the best candidate between the two.
template <UniformRandomSource R>
Tour insert_best_before(const Tour& parent, const MutationContext& ctx, R& rng, int anchor) {
    const int n = static_cast<int>(parent.cities.size());
    const City anchor_city = parent.cities[static_cast<std::size_t>(anchor)];
    const City prev_city = parent.cities[static_cast<std::size_t>(anchor - 1)];

    std::vector<City> eligible;
    eligible.reserve(static_cast<std::size_t>(n));
    for (City c = 1; c < n; ++c)
        if (c != anchor_city && c != prev_city) eligible.push_back(c);
    if (eligible.empty()) return exchange(parent, ctx, rng);

    std::vector<City> sample;
    if (static_cast<std::size_t>(ctx.candidate_count) >= eligible.size()) {
        sample = std::move(eligible);
    } else {
        for (int k = 0; k < ctx.candidate_count; ++k) {
            const auto i = rng.uniform_index(eligible.size());
            sample.push_back(eligible[i]);
            eligible[i] = eligible.back();
            eligible.pop_back();
        }
        std::sort(sample.begin(), sample.end());
    }

    City best = sample.front();
    double best_score = -1.0;
    for (City c : sample) {
        const double score =
            ctx.instance.distance(c, anchor_city) + ctx.instance.distance(c, prev_city);
        if (best_score < 0.0 || score < best_score) {
            best_score = score;
            best = c;
        }
    }

    const int from = position_of(parent.cities, best);
    const int to = from < anchor ? anchor - 1 : anchor;
    return displaced(ctx.instance, parent, from, to);
}

}  // namespace detail

// Insert best random gene before worst gene mutation.
template <UniformRandomSource R>
Tour ibrgbwgm(const Tour& parent, const MutationContext& ctx, R& rng) {
    assert(parent.cities.size() >= 5);
    const int w = worst_gene_left(parent, ctx).index;
    return detail::insert_best_before(parent, ctx, rng, w);
}

// Insert best random gene before random gene mutation: like ibrgbwgm but
// the anchor is random, so no worst-gene scan is needed.
template <UniformRandomSource R>
Tour ibrgbrgm(const Tour& parent, const MutationContext& ctx, R& rng) {
    const int n = static_cast<int>(parent.cities.size());
    assert(n >= 5);
    // Anchor in 2..n-1 keeps the predecessor off the fixed start position.
    const int anchor = 2 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n - 2)));
    return detail::insert_best_before(parent, ctx, rng, anchor);
}

// Dispatch for the concrete operators. SBM/SAM need population access and
// live with the multi-mutation strategies.
template <UniformRandomSource R>
Tour apply_mutation(MutationKind kind, const Tour& parent, const MutationContext& ctx, R& rng) {
    switch (kind) {
        case MutationKind::Exchange: return exchange(parent, ctx, rng);
        case MutationKind::Rearrangement: return rearrangement(parent, ctx, rng);
        case MutationKind::WGWRGM: return wgwrgm(parent, ctx, rng);
        case MutationKind::WGWWGM: return wgwwgm(parent, ctx, rng);
        case MutationKind::WLRGWRGM: return wlrgwrgm(parent, ctx, rng);
        case MutationKind::WGWNNM: return wgwnnm(parent, ctx, rng);
        case MutationKind::WGWWNNM: return wgwwnnm(parent, ctx, rng);
        case MutationKind::WGIBNNM: return wgibnnm(parent, ctx, rng);
        case MutationKind::RGIBNNM: return rgibnnm(parent, ctx, rng);
        case MutationKind::SWGLM: return swglm(parent, ctx, rng);
        case MutationKind::IBRGBWGM: return ibrgbwgm(parent, ctx, rng);
        case MutationKind::IBRGBRGM: return ibrgbrgm(parent, ctx, rng);
        case MutationKind::SBM:
        case MutationKind::SAM:
            throw std::logic_error("apply_mutation: SBM/SAM are not concrete operators");
    }
    throw std::logic_error("apply_mutation: unknown operator");
}

}  // namespace gamut
