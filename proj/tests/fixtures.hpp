#pragma once

// Published reference results for the 13 benchmark instances: mean final
// tour length per operator after 1600 generations (10-run averages), the
// expected rank grid derived from them, and the expected rank averages.

#include <string>
#include <vector>

namespace testsupport {

inline const std::vector<std::string>& reference_instances() {
    static const std::vector<std::string> names = {
        "a280", "att48", "berlin52", "bier127",  "ch130",   "eil51",   "kroA100",
        "pr76", "pr144", "u159",     "rat783",   "brd14051", "usa13509"};
    return names;
}

inline const std::vector<std::string>& reference_operators() {
    static const std::vector<std::string> names = {
        "Exchange", "Rearrangement", "WGWRGM",  "WGWWGM",   "WLRGWRGM", "WGWNNM",
        "WGWWNNM",  "WGIBNNM",       "RGIBNNM", "SWGLM",    "IBRGBWGM", "IBRGBRGM",
        "SBM",      "SAM"};
    return names;
}

// Row order matches reference_operators().
inline const std::vector<std::vector<double>>& reference_means() {
    static const std::vector<std::vector<double>> means = {
        {11860, 41749.4, 9338.4, 217739, 13923, 514.8, 44815, 169713, 219250, 133616, 83155,
         36964078, 1878070618},
        {17810, 73119, 15381, 377025, 29671, 802.1, 78546, 272815, 373603, 208038, 116095,
         39752677, 2035635792},
        {10325, 42221.8, 10529, 252213, 13084, 503.1, 42259, 168850, 190946, 122144, 71748,
         35411256, 1788855536},
        {28734, 93108, 20994, 528898, 35817, 1050, 119607, 420047, 660178, 339365, 165796,
         41534181, 2117784066},
        {10043, 43225.6, 10714, 262604, 12606, 524, 44158, 167912, 200323, 116924, 68705,
         33441004, 1681692076},
        {10233, 46517.3, 11075, 338476, 15172, 589.9, 50393, 199048, 234684, 129658, 58338,
         32788677, 1613016352},
        {24139, 89746.5, 19625, 543930, 34178, 1073, 107043, 408988, 557415, 301068, 143057,
         39139603, 2065593522},
        {16300, 62576, 14314, 446290, 19781, 657.7, 67283, 234865, 310768, 199013, 104155,
         30505628, 1549822430},
        {8000.2, 49855, 10193, 225990, 14777, 551, 47938, 194527, 213205, 116383, 56263,
         34597287, 1735470678},
        {30212, 120925, 23689, 559770, 39487, 1275, 139929, 467464, 696683, 386194, 166447,
         41361128, 2126239629},
        {15416, 66912.4, 13009, 328296, 16987, 659.7, 66358, 228258, 321485, 180738, 101146,
         36218274, 1853569535},
        {13562, 45749.6, 11378, 256321, 14465, 583.4, 48408, 214855, 261076, 164734, 68005,
         36058022, 1822032402},
        {5316.1, 37575.8, 8782.9, 190978, 9958.4, 459.1, 35063, 147595, 137256, 78225, 34777,
         27638514, 1377597129},
        {7830.7, 38612.8, 8875.3, 201895, 10262, 469.9, 33145, 147369, 142124, 88452, 59216,
         34314633, 1708749204},
    };
    return means;
}

// Expected ranks, reference_operators() order plus a final Optimal row.
inline const std::vector<std::vector<int>>& reference_ranks() {
    static const std::vector<std::vector<int>> ranks = {
        {8, 4, 4, 4, 6, 5, 6, 6, 7, 8, 9, 11, 11},
        {12, 12, 12, 11, 12, 12, 12, 12, 12, 12, 12, 13, 12},
        {7, 5, 6, 6, 5, 4, 4, 5, 4, 6, 8, 8, 8},
        {14, 14, 14, 13, 14, 13, 14, 14, 14, 14, 14, 15, 14},
        {5, 6, 7, 8, 4, 6, 5, 4, 5, 5, 7, 5, 5},
        {6, 8, 8, 10, 9, 9, 9, 8, 8, 7, 4, 4, 4},
        {13, 13, 13, 14, 13, 14, 13, 13, 13, 13, 13, 12, 13},
        {11, 10, 11, 12, 11, 10, 11, 11, 10, 11, 11, 3, 3},
        {4, 9, 5, 5, 8, 7, 7, 7, 6, 4, 3, 7, 7},
        {15, 15, 15, 15, 15, 15, 15, 15, 15, 15, 15, 14, 15},
        {10, 11, 10, 9, 10, 11, 10, 10, 11, 10, 10, 10, 10},
        {9, 7, 9, 7, 7, 8, 8, 9, 9, 9, 6, 9, 9},
        {2, 2, 2, 2, 2, 2, 3, 3, 2, 2, 2, 2, 2},
        {3, 3, 3, 3, 3, 3, 2, 2, 3, 3, 5, 6, 6},
        {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
    };
    return ranks;
}

inline const std::vector<long>& reference_rank_averages() {
    static const std::vector<long> averages = {7, 12, 6, 14, 6, 7, 13, 10, 6, 15, 10, 8, 2, 3, 1};
    return averages;
}

}  // namespace testsupport
