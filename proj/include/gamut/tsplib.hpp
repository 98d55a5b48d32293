#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gamut {

using City = std::int32_t;

// Distance conventions follow TSPLIB95: every metric rounds to an integer,
// so tour lengths are exact and known optima are reproducible bit-for-bit.
enum class Metric { Euc2d, Ceil2d, Att };

inline const char* to_string(Metric m) {
    switch (m) {
        case Metric::Euc2d: return "EUC_2D";
        case Metric::Ceil2d: return "CEIL_2D";
        case Metric::Att: return "ATT";
    }
    return "?";
}

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line_no, const std::string& line)
        : std::runtime_error("tsplib: " + what + " (line " +
                             std::to_string(line_no) + ": \"" + line + "\")") {}
};

// Immutable city coordinates plus the distance metric of one TSPLIB problem.
// Safe to share read-only across concurrent runs.
class TspInstance {
public:
    TspInstance(std::string name, Metric metric,
                std::vector<std::pair<double, double>> coords,
                std::vector<int> labels = {})
        : name_(std::move(name)),
          metric_(metric),
          coords_(std::move(coords)),
          labels_(std::move(labels)) {
        if (coords_.size() < 3)
            throw std::invalid_argument("tsplib: instance needs at least 3 cities");
        if (labels_.empty()) {
            labels_.resize(coords_.size());
            for (std::size_t i = 0; i < labels_.size(); ++i)
                labels_[i] = static_cast<int>(i) + 1;
        }
        if (dimension() <= kMatrixCacheLimit) build_matrix();
    }

    const std::string& name() const { return name_; }
    Metric metric() const { return metric_; }
    City dimension() const { return static_cast<City>(coords_.size()); }
    std::pair<double, double> coord(City c) const { return coords_[static_cast<std::size_t>(c)]; }
    // The file's 1-based label, kept for display only.
    int label(City c) const { return labels_[static_cast<std::size_t>(c)]; }

    // Integer TSPLIB distance; symmetric, zero on the diagonal.
    double distance(City a, City b) const {
        assert(a >= 0 && a < dimension() && b >= 0 && b < dimension());
        if (!matrix_.empty())
            return matrix_[static_cast<std::size_t>(a) * coords_.size() +
                           static_cast<std::size_t>(b)];
        return compute(a, b);
    }

private:
    // Full n*n cache only for small instances; larger ones compute on demand.
    static constexpr City kMatrixCacheLimit = 1000;

    double compute(City a, City b) const {
        const auto [xa, ya] = coords_[static_cast<std::size_t>(a)];
        const auto [xb, yb] = coords_[static_cast<std::size_t>(b)];
        const double xd = xa - xb;
        const double yd = ya - yb;
        switch (metric_) {
            case Metric::Euc2d:
                return std::floor(std::sqrt(xd * xd + yd * yd) + 0.5);
            case Metric::Ceil2d:
                return std::ceil(std::sqrt(xd * xd + yd * yd));
            case Metric::Att: {
                const double r = std::sqrt((xd * xd + yd * yd) / 10.0);
                const double t = std::floor(r + 0.5);
                return t < r ? t + 1.0 : t;
            }
        }
        return 0.0;
    }

    void build_matrix() {
        const std::size_t n = coords_.size();
        matrix_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const double d = compute(static_cast<City>(i), static_cast<City>(j));
                matrix_[i * n + j] = d;
                matrix_[j * n + i] = d;
            }
    }

    std::string name_;
    Metric metric_;
    std::vector<std::pair<double, double>> coords_;
    std::vector<int> labels_;
    std::vector<double> matrix_;
};

// nn[c] is the closest distinct city to c; ties go to the smallest id so
// every downstream draw sequence is reproducible.
class NearestNeighborTable {
public:
    explicit NearestNeighborTable(const TspInstance& inst) {
        const City n = inst.dimension();
        nn_.resize(static_cast<std::size_t>(n));
        for (City c = 0; c < n; ++c) {
            City best = c == 0 ? 1 : 0;
            double best_d = inst.distance(c, best);
            for (City d = 0; d < n; ++d) {
                if (d == c) continue;
                const double dist = inst.distance(c, d);
                if (dist < best_d) {
                    best_d = dist;
                    best = d;
                }
            }
            nn_[static_cast<std::size_t>(c)] = best;
        }
    }

    City nearest(City c) const { return nn_[static_cast<std::size_t>(c)]; }
    std::size_t size() const { return nn_.size(); }

private:
    std::vector<City> nn_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace detail

// Parses the NODE_COORD_SECTION form of TSPLIB95. Requires NAME, DIMENSION
// and a supported EDGE_WEIGHT_TYPE; the file's 1-based ids map to 0-based
// internal ids in file order.
inline TspInstance parse_tsplib(std::istream& in) {
    std::string name;
    Metric metric = Metric::Euc2d;
    bool have_name = false, have_dim = false, have_metric = false;
    long dimension = 0;
    std::vector<std::pair<double, double>> coords;
    std::vector<int> labels;

    std::string line;
    int line_no = 0;
    bool in_nodes = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = detail::trim(line);
        if (text.empty()) continue;
        if (text == "EOF") break;

        if (!in_nodes) {
            if (text == "NODE_COORD_SECTION") {
                if (!have_dim)
                    throw ParseError("NODE_COORD_SECTION before DIMENSION", line_no, text);
                in_nodes = true;
                continue;
            }
            const auto colon = text.find(':');
            const std::string key =
                detail::trim(colon == std::string::npos ? text : text.substr(0, colon));
            const std::string value =
                colon == std::string::npos ? "" : detail::trim(text.substr(colon + 1));
            if (key == "NAME") {
                name = value;
                have_name = true;
            } else if (key == "DIMENSION") {
                try {
                    dimension = std::stol(value);
                } catch (const std::exception&) {
                    throw ParseError("bad DIMENSION value", line_no, text);
                }
                if (dimension < 3)
                    throw ParseError("DIMENSION must be at least 3", line_no, text);
                have_dim = true;
            } else if (key == "EDGE_WEIGHT_TYPE") {
                if (value == "EUC_2D") metric = Metric::Euc2d;
                else if (value == "CEIL_2D") metric = Metric::Ceil2d;
                else if (value == "ATT") metric = Metric::Att;
                else throw ParseError("unsupported EDGE_WEIGHT_TYPE " + value, line_no, text);
                have_metric = true;
            } else if (key == "TYPE" || key == "COMMENT" || key == "DISPLAY_DATA_TYPE" ||
                       key == "NODE_COORD_TYPE" || key == "EDGE_WEIGHT_FORMAT") {
                // Recognized but irrelevant here.
            } else if (colon == std::string::npos) {
                throw ParseError("malformed header line", line_no, text);
            }
        } else {
            std::istringstream fields(text);
            int id = 0;
            double x = 0.0, y = 0.0;
            if (!(fields >> id >> x >> y))
                throw ParseError("malformed coordinate line", line_no, text);
            if (static_cast<long>(coords.size()) >= dimension)
                throw ParseError("more coordinates than DIMENSION", line_no, text);
            labels.push_back(id);
            coords.emplace_back(x, y);
        }
    }

    if (!have_name) throw ParseError("missing NAME", line_no, "<end of input>");
    if (!have_metric) throw ParseError("missing EDGE_WEIGHT_TYPE", line_no, "<end of input>");
    if (!have_dim) throw ParseError("missing DIMENSION", line_no, "<end of input>");
    if (static_cast<long>(coords.size()) != dimension)
        throw ParseError("coordinate count " + std::to_string(coords.size()) +
                             " does not match DIMENSION " + std::to_string(dimension),
                         line_no, "<end of input>");
    return TspInstance(name, metric, std::move(coords), std::move(labels));
}

inline TspInstance load_tsplib(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("tsplib: cannot open " + path);
    try {
        return parse_tsplib(in);
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace gamut
