#pragma once

// Shared test fixtures, the scripted draw-injection hook, and independent
// brute-force oracles the implementation is checked against.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gamut/rng.hpp"
#include "gamut/tour.hpp"
#include "gamut/tsplib.hpp"

namespace testsupport {

// Returns pinned values for uniform_index calls, in order. Throws if a test
// scripts too few draws or a draw falls outside its bound, so a changed
// draw protocol cannot pass silently.
class ScriptedRng {
public:
    explicit ScriptedRng(std::vector<std::uint64_t> draws) : draws_(std::move(draws)) {}

    std::uint64_t uniform_index(std::uint64_t bound) {
        if (next_ >= draws_.size())
            throw std::runtime_error("ScriptedRng: ran out of scripted draws");
        const std::uint64_t v = draws_[next_++];
        if (v >= bound)
            throw std::runtime_error("ScriptedRng: scripted draw out of bound");
        return v;
    }

    bool exhausted() const { return next_ == draws_.size(); }

private:
    std::vector<std::uint64_t> draws_;
    std::size_t next_ = 0;
};

static_assert(gamut::UniformRandomSource<ScriptedRng>);

inline gamut::TspInstance line_instance(const std::vector<double>& xs,
                                        const std::string& name = "line") {
    std::vector<std::pair<double, double>> coords;
    for (double x : xs) coords.emplace_back(x, 0.0);
    return gamut::TspInstance(name, gamut::Metric::Euc2d, std::move(coords));
}

// Five cities on a line; the shared reference fixture for operator traces.
inline gamut::TspInstance line5() { return line_instance({0, 1, 2, 10, 3}, "line5"); }

// (0,0), (3,0), (0,4): the 3-4-5 triangle.
inline gamut::TspInstance triangle() {
    return gamut::TspInstance("triangle", gamut::Metric::Euc2d, {{0, 0}, {3, 0}, {0, 4}});
}

// Axis-aligned square with side 10; every tour edge in order 0,1,2,3 is 10.
inline gamut::TspInstance square() {
    return gamut::TspInstance("square", gamut::Metric::Euc2d,
                              {{0, 0}, {10, 0}, {10, 10}, {0, 10}});
}

// --- independent oracles ---------------------------------------------------

inline int brute_worst_left(const gamut::TspInstance& inst, const std::vector<gamut::City>& t) {
    int best = 1;
    double best_d = -1.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double d = inst.distance(t[i - 1], t[i]);
        if (d > best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

inline std::pair<int, int> brute_worst_pair(const gamut::TspInstance& inst,
                                            const std::vector<gamut::City>& t) {
    const int first = brute_worst_left(inst, t);
    int second = -1;
    double best_d = -1.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (static_cast<int>(i) == first) continue;
        const double d = inst.distance(t[i - 1], t[i]);
        if (d > best_d) {
            best_d = d;
            second = static_cast<int>(i);
        }
    }
    return {first, second};
}

inline int brute_worst_lr(const gamut::TspInstance& inst, const std::vector<gamut::City>& t) {
    const std::size_t n = t.size();
    int best = 1;
    double best_d = -1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = inst.distance(t[i - 1], t[i]) + inst.distance(t[i], t[(i + 1) % n]);
        if (d > best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

inline std::vector<gamut::City> brute_nearest_neighbors(const gamut::TspInstance& inst) {
    const gamut::City n = inst.dimension();
    std::vector<gamut::City> nn(static_cast<std::size_t>(n));
    for (gamut::City c = 0; c < n; ++c) {
        gamut::City best = -1;
        double best_d = 0.0;
        for (gamut::City d = 0; d < n; ++d) {
            if (d == c) continue;
            const double dist = inst.distance(c, d);
            if (best < 0 || dist < best_d) {
                best = d;
                best_d = dist;
            }
        }
        nn[static_cast<std::size_t>(c)] = best;
    }
    return nn;
}

// Uniform random fixed-start tour, built on the oracle side.
inline gamut::Tour random_tour(const gamut::TspInstance& inst, gamut::RngStream& rng) {
    const int n = inst.dimension();
    std::vector<gamut::City> cities(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cities[static_cast<std::size_t>(i)] = i;
    for (int j = n - 1; j > 1; --j) {
        const auto k = 1 + rng.uniform_index(static_cast<std::uint64_t>(j));
        std::swap(cities[static_cast<std::size_t>(j)], cities[k]);
    }
    return gamut::make_tour(inst, std::move(cities));
}

inline std::string data_path(const std::string& file) {
    return std::string(GAMUT_DATA_DIR) + "/" + file;
}

}  // namespace testsupport
