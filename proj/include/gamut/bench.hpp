#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gamut/ga.hpp"
#include "gamut/meta.hpp"
#include "gamut/mutation.hpp"
#include "gamut/tsplib.hpp"

namespace gamut {

// Reference optima for the benchmark instances (used for the Optimal row of
// the rank table).
inline std::optional<double> known_optimum(const std::string& instance) {
    static const std::map<std::string, double> optima = {
        {"a280", 2579},         {"att48", 10628},  {"berlin52", 7542},
        {"bier127", 118282},    {"brd14051", 469385}, {"ch130", 6110},
        {"eil51", 426},         {"kroA100", 21282},   {"pr76", 108159},
        {"pr144", 58537},       {"rat783", 8806},     {"u159", 42080},
        {"usa13509", 19982859},
    };
    const auto it = optima.find(instance);
    if (it == optima.end()) return std::nullopt;
    return it->second;
}

// The 13 instances of the full benchmark grid.
inline const std::vector<std::string>& full_sweep_instances() {
    static const std::vector<std::string> names = {
        "a280",  "att48", "berlin52", "bier127",  "ch130", "eil51",   "kroA100",
        "pr76",  "pr144", "u159",     "rat783",   "brd14051", "usa13509"};
    return names;
}

// Default sweep: the grid without the two 13k+ city instances, which are
// opt-in via explicit --instance.
inline std::vector<std::string> default_sweep_instances() {
    std::vector<std::string> names = full_sweep_instances();
    std::erase(names, "brd14051");
    std::erase(names, "usa13509");
    return names;
}

inline const std::vector<std::string>& desk_instances() {
    static const std::vector<std::string> names = {"eil51", "berlin52", "ch130"};
    return names;
}

// Per-run seed: a hash of (base seed, instance name, operator name,
// replicate), so adding or removing operators never perturbs other runs.
inline std::uint64_t derive_seed(std::uint64_t base, const std::string& instance,
                                 const std::string& op, int replicate) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    const auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xFF;
            h *= 0x100000001B3ULL;
        }
    };
    const auto mix_str = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001B3ULL;
        }
        h ^= 0xFF;  // separator
        h *= 0x100000001B3ULL;
    };
    mix(base);
    mix_str(instance);
    mix_str(op);
    mix(static_cast<std::uint64_t>(replicate));
    return h;
}

struct ExperimentSpec {
    std::vector<std::string> instance_paths;
    std::vector<MutationKind> operators;
    int replicates = 10;
    GaConfig config;  // seed here is the base seed; op is set per run
    std::string out_dir;
    int jobs = 0;  // 0 = all hardware threads

    void validate() const {
        if (instance_paths.empty()) throw std::invalid_argument("no instances given");
        if (operators.empty()) throw std::invalid_argument("no operators given");
        if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    }
};

struct LabeledRun {
    std::string instance;
    MutationKind op = MutationKind::Exchange;
    int replicate = 0;
    RunRecord record;
};

// Runs in canonical order: instance-major, then operator, then replicate.
struct ExperimentResult {
    std::vector<std::string> instance_names;
    std::vector<MutationKind> operators;
    int replicates = 0;
    int generations = 0;
    std::vector<LabeledRun> runs;

    const LabeledRun& run(std::size_t inst, std::size_t op, int rep) const {
        const std::size_t per_inst = operators.size() * static_cast<std::size_t>(replicates);
        return runs[inst * per_inst + op * static_cast<std::size_t>(replicates) +
                    static_cast<std::size_t>(rep)];
    }
};

// Executes the full (instance x operator x replicate) grid. Independent runs
// fan out across threads; the result order is canonical regardless of
// scheduling, so artifacts are reproducible.
inline ExperimentResult run_experiment(const ExperimentSpec& spec, const GaHooks& hooks = {}) {
    spec.validate();
    spec.config.validate();

    std::vector<TspInstance> instances;
    instances.reserve(spec.instance_paths.size());
    for (const auto& path : spec.instance_paths) instances.push_back(load_tsplib(path));

    ExperimentResult result;
    for (const auto& inst : instances) result.instance_names.push_back(inst.name());
    result.operators = spec.operators;
    result.replicates = spec.replicates;
    result.generations = spec.config.generations;

    const std::size_t total =
        instances.size() * spec.operators.size() * static_cast<std::size_t>(spec.replicates);
    result.runs.resize(total);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto worker = [&]() {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total) return;
            const std::size_t per_inst =
                spec.operators.size() * static_cast<std::size_t>(spec.replicates);
            const std::size_t inst_idx = task / per_inst;
            const std::size_t op_idx = (task % per_inst) / static_cast<std::size_t>(spec.replicates);
            const int rep = static_cast<int>(task % static_cast<std::size_t>(spec.replicates));
            try {
                GaConfig cfg = spec.config;
                cfg.op = spec.operators[op_idx];
                cfg.seed = derive_seed(spec.config.seed, instances[inst_idx].name(),
                                       to_string(cfg.op), rep);
                LabeledRun labeled{instances[inst_idx].name(), cfg.op, rep,
                                   run_ga(instances[inst_idx], cfg, hooks)};
                result.runs[task] = std::move(labeled);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(total);
                return;
            }
        }
    };

    std::size_t thread_count = spec.jobs > 0 ? static_cast<std::size_t>(spec.jobs)
                                             : std::max(1u, std::thread::hardware_concurrency());
    thread_count = std::min(thread_count, total);
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t i = 0; i < thread_count; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return result;
}

// ---------------------------------------------------------------------------
// Report tables
// ---------------------------------------------------------------------------

struct SummaryTable {
    std::vector<std::string> instances;
    std::vector<std::string> rows;                 // operator display names
    std::vector<std::vector<double>> mean_final;   // rows x instances
};

inline SummaryTable summarize(const ExperimentResult& result) {
    SummaryTable table;
    table.instances = result.instance_names;
    for (MutationKind op : result.operators) table.rows.emplace_back(to_string(op));
    table.mean_final.assign(table.rows.size(),
                            std::vector<double>(table.instances.size(), 0.0));
    for (std::size_t i = 0; i < table.instances.size(); ++i)
        for (std::size_t o = 0; o < table.rows.size(); ++o) {
            double sum = 0.0;
            for (int r = 0; r < result.replicates; ++r)
                sum += result.run(i, o, r).record.best.length;
            table.mean_final[o][i] = sum / static_cast<double>(result.replicates);
        }
    return table;
}

// Rank grid: per instance, operators plus an Optimal row ranked ascending by
// mean final length. Ties share their rank and the following ranks are
// skipped. The Average column is the rounded mean of a row's ranks.
struct RankTable {
    std::vector<std::string> instances;
    std::vector<std::string> rows;           // operators, then "Optimal"
    std::vector<std::vector<int>> ranks;     // rows x instances; 0 = not ranked
    std::vector<long> average;
    std::vector<bool> optimum_known;         // per instance
};

inline RankTable rank_table(const SummaryTable& summary) {
    if (summary.instances.empty()) throw std::invalid_argument("rank_table: empty summary");
    RankTable table;
    table.instances = summary.instances;
    table.rows = summary.rows;
    table.rows.emplace_back("Optimal");
    const std::size_t nrows = table.rows.size();
    table.ranks.assign(nrows, std::vector<int>(summary.instances.size(), 0));
    table.optimum_known.resize(summary.instances.size());

    for (std::size_t i = 0; i < summary.instances.size(); ++i) {
        const auto optimum = known_optimum(summary.instances[i]);
        table.optimum_known[i] = optimum.has_value();
        std::vector<double> values;
        for (std::size_t o = 0; o < summary.rows.size(); ++o)
            values.push_back(summary.mean_final[o][i]);
        if (optimum) values.push_back(*optimum);
        const auto rank_of = [&values](double v) {
            int rank = 1;
            for (double x : values)
                if (x < v) ++rank;
            return rank;
        };
        for (std::size_t o = 0; o < summary.rows.size(); ++o)
            table.ranks[o][i] = rank_of(summary.mean_final[o][i]);
        if (optimum) table.ranks[nrows - 1][i] = rank_of(*optimum);
    }

    table.average.resize(nrows);
    for (std::size_t o = 0; o < nrows; ++o) {
        double sum = 0.0;
        int counted = 0;
        for (std::size_t i = 0; i < summary.instances.size(); ++i) {
            if (table.ranks[o][i] == 0) continue;
            sum += table.ranks[o][i];
            ++counted;
        }
        table.average[o] = counted == 0 ? 0 : std::lround(sum / counted);
    }
    return table;
}

// Mean wall time per (instance, operator) plus the derived SBM/SAM ratio row
// when both strategies are present.
struct TimingTable {
    std::vector<std::string> instances;
    std::vector<std::string> rows;
    std::vector<std::vector<double>> mean_ms;  // rows x instances
    bool has_ratio = false;
    std::vector<long> ratio;  // per instance, round(SBM mean / SAM mean)
};

inline TimingTable timing_report(const ExperimentResult& result) {
    TimingTable table;
    table.instances = result.instance_names;
    for (MutationKind op : result.operators) table.rows.emplace_back(to_string(op));
    table.mean_ms.assign(table.rows.size(),
                         std::vector<double>(table.instances.size(), 0.0));
    std::ptrdiff_t sbm_row = -1, sam_row = -1;
    for (std::size_t o = 0; o < result.operators.size(); ++o) {
        if (result.operators[o] == MutationKind::SBM) sbm_row = static_cast<std::ptrdiff_t>(o);
        if (result.operators[o] == MutationKind::SAM) sam_row = static_cast<std::ptrdiff_t>(o);
    }
    for (std::size_t i = 0; i < table.instances.size(); ++i)
        for (std::size_t o = 0; o < table.rows.size(); ++o) {
            double sum = 0.0;
            for (int r = 0; r < result.replicates; ++r)
                sum += result.run(i, o, r).record.wall_ms;
            table.mean_ms[o][i] = sum / static_cast<double>(result.replicates);
        }
    if (sbm_row >= 0 && sam_row >= 0) {
        table.has_ratio = true;
        for (std::size_t i = 0; i < table.instances.size(); ++i)
            table.ratio.push_back(
                std::lround(table.mean_ms[static_cast<std::size_t>(sbm_row)][i] /
                            table.mean_ms[static_cast<std::size_t>(sam_row)][i]));
    }
    return table;
}

// Mean best length per generation, one column per operator, for one
// instance. All runs must share the generation count.
struct ConvergenceTable {
    std::string instance;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> cells;  // generations x columns
};

inline ConvergenceTable convergence_table(const ExperimentResult& result, std::size_t inst) {
    ConvergenceTable table;
    table.instance = result.instance_names[inst];
    for (MutationKind op : result.operators) table.columns.emplace_back(to_string(op));
    const auto generations = static_cast<std::size_t>(result.generations);
    for (std::size_t o = 0; o < result.operators.size(); ++o)
        for (int r = 0; r < result.replicates; ++r)
            if (result.run(inst, o, r).record.best_series.size() != generations)
                throw std::runtime_error("convergence: runs disagree on generation count");
    table.cells.assign(generations, std::vector<double>(table.columns.size(), 0.0));
    for (std::size_t g = 0; g < generations; ++g)
        for (std::size_t o = 0; o < result.operators.size(); ++o) {
            double sum = 0.0;
            for (int r = 0; r < result.replicates; ++r)
                sum += result.run(inst, o, r).record.best_series[g];
            table.cells[g][o] = sum / static_cast<double>(result.replicates);
        }
    return table;
}

// ---------------------------------------------------------------------------
// CSV artifacts
// ---------------------------------------------------------------------------

namespace detail {

// Integral values print without a decimal point; everything else gets four
// fixed decimals. Deterministic for identical doubles.
inline std::string fmt_num(double v) {
    if (v == std::floor(v) && std::fabs(v) < 9.0e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

inline std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace detail

// Replicate-level finals. Wall times deliberately live in separate files so
// that every other artifact is byte-identical across same-seed executions.
inline void write_runs_csv(const ExperimentResult& result, const std::filesystem::path& dir) {
    auto out = detail::open_csv(dir / "runs.csv");
    out << "instance,operator,replicate,final_best\n";
    for (const LabeledRun& run : result.runs)
        out << run.instance << ',' << to_string(run.op) << ',' << run.replicate << ','
            << detail::fmt_num(run.record.best.length) << '\n';
}

inline void write_timing_runs_csv(const ExperimentResult& result,
                                  const std::filesystem::path& dir) {
    auto out = detail::open_csv(dir / "timings_runs.csv");
    out << "instance,operator,replicate,wall_ms\n";
    for (const LabeledRun& run : result.runs)
        out << run.instance << ',' << to_string(run.op) << ',' << run.replicate << ','
            << detail::fmt_num(run.record.wall_ms) << '\n';
}

inline void write_convergence_csvs(const ExperimentResult& result,
                                   const std::filesystem::path& dir) {
    for (std::size_t i = 0; i < result.instance_names.size(); ++i) {
        const ConvergenceTable table = convergence_table(result, i);
        auto out = detail::open_csv(dir / ("convergence_" + table.instance + ".csv"));
        out << "generation";
        for (const auto& c : table.columns) out << ',' << c;
        out << '\n';
        for (std::size_t g = 0; g < table.cells.size(); ++g) {
            out << (g + 1);
            for (double v : table.cells[g]) out << ',' << detail::fmt_num(v);
            out << '\n';
        }
    }
}

inline void write_summary_csv(const SummaryTable& summary, const std::filesystem::path& dir) {
    auto out = detail::open_csv(dir / "summary.csv");
    out << "instance,operator,mean_final\n";
    for (std::size_t i = 0; i < summary.instances.size(); ++i)
        for (std::size_t o = 0; o < summary.rows.size(); ++o)
            out << summary.instances[i] << ',' << summary.rows[o] << ','
                << detail::fmt_num(summary.mean_final[o][i]) << '\n';
}

inline void write_ranks_csv(const RankTable& table, const std::filesystem::path& dir) {
    auto out = detail::open_csv(dir / "ranks.csv");
    out << "operator";
    for (std::size_t i = 0; i < table.instances.size(); ++i) {
        out << ',' << table.instances[i];
        if (!table.optimum_known[i]) out << " (no optimum)";
    }
    out << ",Average\n";
    for (std::size_t o = 0; o < table.rows.size(); ++o) {
        out << table.rows[o];
        for (std::size_t i = 0; i < table.instances.size(); ++i) {
            out << ',';
            if (table.ranks[o][i] != 0) out << table.ranks[o][i];
        }
        out << ',' << table.average[o] << '\n';
    }
}

inline void write_timing_csv(const TimingTable& table, const std::filesystem::path& dir) {
    auto out = detail::open_csv(dir / "timing.csv");
    out << "instance,operator,mean_ms\n";
    for (std::size_t i = 0; i < table.instances.size(); ++i)
        for (std::size_t o = 0; o < table.rows.size(); ++o)
            out << table.instances[i] << ',' << table.rows[o] << ','
                << detail::fmt_num(table.mean_ms[o][i]) << '\n';
    if (table.has_ratio)
        for (std::size_t i = 0; i < table.instances.size(); ++i)
            out << table.instances[i] << ",SBM/SAM," << table.ratio[i] << '\n';
}

// Aggregated meta-operator selection tallies per instance and strategy.
inline void write_selection_csv(const ExperimentResult& result,
                                const std::filesystem::path& dir) {
    auto out = detail::open_csv(dir / "selection.csv");
    out << "instance,strategy,operator,count,percent\n";
    for (std::size_t i = 0; i < result.instance_names.size(); ++i)
        for (std::size_t o = 0; o < result.operators.size(); ++o) {
            const MutationKind strategy = result.operators[o];
            if (!is_meta(strategy)) continue;
            SelectionStats stats;
            for (int r = 0; r < result.replicates; ++r)
                stats.merge(result.run(i, o, r).record.selections);
            if (stats.total() == 0) continue;
            for (const auto& [kind, percent] : selection_report(stats))
                out << result.instance_names[i] << ',' << to_string(strategy) << ','
                    << to_string(kind) << ',' << stats.count(kind) << ','
                    << detail::fmt_num(percent) << '\n';
        }
}

// Everything `run` leaves on disk.
inline void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_runs_csv(result, dir);
    write_timing_runs_csv(result, dir);
    write_convergence_csvs(result, dir);
    const SummaryTable summary = summarize(result);
    write_summary_csv(summary, dir);
    write_ranks_csv(rank_table(summary), dir);
    write_timing_csv(timing_report(result), dir);
    write_selection_csv(result, dir);
}

// ---------------------------------------------------------------------------
// Flat key-value run configuration ("spec file") mirroring the CLI flags
// ---------------------------------------------------------------------------

struct RunSettings {
    std::vector<std::string> instances;
    std::vector<std::string> operators;
    std::optional<int> replicates;
    std::optional<int> generations;
    std::optional<int> population;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> pool;
    std::optional<std::string> data;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const std::string trimmed = trim(item);
        if (!trimmed.empty()) items.push_back(trimmed);
    }
    return items;
}

}  // namespace detail

inline RunSettings parse_run_settings(std::istream& in) {
    RunSettings settings;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = detail::trim(line);
        if (text.empty() || text[0] == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("spec file line " + std::to_string(line_no) +
                                     ": expected key = value");
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        try {
            if (key == "instance" || key == "instances")
                for (auto& item : detail::split_list(value))
                    settings.instances.push_back(std::move(item));
            else if (key == "operators")
                settings.operators = detail::split_list(value);
            else if (key == "replicates")
                settings.replicates = std::stoi(value);
            else if (key == "generations")
                settings.generations = std::stoi(value);
            else if (key == "population")
                settings.population = std::stoi(value);
            else if (key == "seed")
                settings.seed = std::stoull(value);
            else if (key == "out")
                settings.out = value;
            else if (key == "pool")
                settings.pool = value;
            else if (key == "data")
                settings.data = value;
            else
                throw std::runtime_error("spec file line " + std::to_string(line_no) +
                                         ": unknown key " + key);
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception&) {
            throw std::runtime_error("spec file line " + std::to_string(line_no) +
                                     ": bad value for " + key);
        }
    }
    return settings;
}

}  // namespace gamut
