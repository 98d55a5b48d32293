#pragma once

#include <span>
#include <vector>

#include "gamut/tsplib.hpp"

namespace gamut {

// One chromosome: a cyclic tour stored as a permutation of city ids with the
// route-starting city pinned at index 0, plus its cached length (the fitness).
struct Tour {
    std::vector<City> cities;
    double length = 0.0;
};

// Cyclic length: closes back from the last city to the first.
inline double tour_length(const TspInstance& inst, std::span<const City> cities) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cities.size(); ++i)
        total += inst.distance(cities[i], cities[i + 1]);
    total += inst.distance(cities.back(), cities.front());
    return total;
}

inline double tour_length(const TspInstance& inst, const Tour& t) {
    return tour_length(inst, std::span<const City>(t.cities));
}

inline Tour make_tour(const TspInstance& inst, std::vector<City> cities) {
    Tour t{std::move(cities), 0.0};
    t.length = tour_length(inst, t);
    return t;
}

// Permutation of 0..n-1, city 0 first, cached length consistent.
inline bool is_valid_tour(const TspInstance& inst, const Tour& t) {
    const auto n = static_cast<std::size_t>(inst.dimension());
    if (t.cities.size() != n || t.cities[0] != 0) return false;
    std::vector<bool> seen(n, false);
    for (City c : t.cities) {
        if (c < 0 || static_cast<std::size_t>(c) >= n || seen[static_cast<std::size_t>(c)])
            return false;
        seen[static_cast<std::size_t>(c)] = true;
    }
    return t.length == tour_length(inst, t);
}

inline bool same_genotype(const Tour& a, const Tour& b) {
    return a.cities == b.cities;
}

// Exact sequence equality; the start city is pinned, so rotations of the
// same cycle cannot alias and reversed tours count as distinct genotypes.
inline bool genotype_present(std::span<const Tour> members, const Tour& t) {
    for (const Tour& m : members)
        if (m.length == t.length && same_genotype(m, t)) return true;
    return false;
}

}  // namespace gamut
