// gamut command-line benchmark runner: executes (instance x operator x
// replicate) sweeps and emits the CSV report tables.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gamut/bench.hpp"
#include "gamut/ga.hpp"
#include "gamut/mutation.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<gamut::MutationKind> parse_operators(const std::vector<std::string>& names) {
    std::vector<gamut::MutationKind> ops;
    for (const auto& name : names) {
        if (name == "all") {
            for (int i = 0; i < gamut::kMutationKindCount; ++i)
                ops.push_back(static_cast<gamut::MutationKind>(i));
            continue;
        }
        const auto kind = gamut::mutation_kind_from_string(name);
        if (!kind) throw std::runtime_error("unknown operator: " + name);
        ops.push_back(*kind);
    }
    return ops;
}

std::vector<std::string> resolve_named_instances(const std::vector<std::string>& names,
                                                 const std::string& data_dir) {
    std::vector<std::string> paths;
    std::vector<std::string> missing;
    for (const auto& name : names) {
        const fs::path path = fs::path(data_dir) / (name + ".tsp");
        if (fs::exists(path))
            paths.push_back(path.string());
        else
            missing.push_back(path.string());
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "missing instance files:";
        for (const auto& m : missing) msg << ' ' << m;
        throw std::runtime_error(msg.str());
    }
    return paths;
}

int run_command(const gamut::RunSettings& settings, bool desk, const std::string& data_dir,
                int jobs) {
    gamut::ExperimentSpec spec;
    spec.jobs = jobs;

    if (desk) {
        spec.instance_paths = resolve_named_instances(gamut::desk_instances(), data_dir);
    } else if (!settings.instances.empty()) {
        spec.instance_paths = settings.instances;
    } else {
        spec.instance_paths =
            resolve_named_instances(gamut::default_sweep_instances(), data_dir);
    }

    if (settings.operators.empty())
        spec.operators = parse_operators({"all"});
    else
        spec.operators = parse_operators(settings.operators);

    if (settings.replicates) spec.replicates = *settings.replicates;
    if (settings.generations) spec.config.generations = *settings.generations;
    if (settings.population) spec.config.population_size = *settings.population;
    if (settings.seed) spec.config.seed = *settings.seed;
    if (settings.pool) {
        if (*settings.pool == "strict10")
            spec.config.pool = gamut::OperatorPool::strict10();
        else if (*settings.pool == "full12")
            spec.config.pool = gamut::OperatorPool::full12();
        else
            throw std::runtime_error("pool must be strict10 or full12");
    }

    std::string out_dir = settings.out.value_or("out");
    if (const char* env = std::getenv("GAMUT_OUT"); env && *env) out_dir = env;

    std::cerr << "running " << spec.instance_paths.size() << " instance(s) x "
              << spec.operators.size() << " operator(s) x " << spec.replicates
              << " replicate(s), " << spec.config.generations << " generations\n";
    const gamut::ExperimentResult result = gamut::run_experiment(spec);
    gamut::write_artifacts(result, out_dir);
    std::cerr << "artifacts written to " << out_dir << "\n";
    return 0;
}

// --- report: rebuild tables from a run directory -------------------------

struct CsvRow {
    std::vector<std::string> fields;
};

std::vector<CsvRow> read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<CsvRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        CsvRow row;
        std::string field;
        std::istringstream fields(line);
        while (std::getline(fields, field, ',')) row.fields.push_back(field);
        if (!row.fields.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

// Rebuilds summary/ranks/timing tables from runs.csv + timings_runs.csv and
// re-emits selection.csv as-is.
int report_command(const std::string& from, const std::vector<std::string>& tables) {
    const fs::path dir(from);

    struct Key {
        std::string instance, op;
        bool operator<(const Key& other) const {
            return instance != other.instance ? instance < other.instance : op < other.op;
        }
    };

    const auto load_means = [&](const char* file) {
        std::vector<std::string> instances, ops;
        std::map<Key, std::pair<double, int>> sums;
        const std::vector<CsvRow> rows = read_csv(dir / file);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& f = rows[i].fields;
            if (f.size() < 4) throw std::runtime_error(std::string(file) + ": short row");
            auto& [sum, count] = sums[Key{f[0], f[1]}];
            sum += std::stod(f[3]);
            ++count;
            if (std::find(instances.begin(), instances.end(), f[0]) == instances.end())
                instances.push_back(f[0]);
            if (std::find(ops.begin(), ops.end(), f[1]) == ops.end()) ops.push_back(f[1]);
        }
        return std::tuple(instances, ops, sums);
    };

    for (const auto& table : tables) {
        if (table == "summary" || table == "ranks") {
            const auto [instances, ops, sums] = load_means("runs.csv");
            gamut::SummaryTable summary;
            summary.instances = instances;
            summary.rows = ops;
            summary.mean_final.assign(ops.size(), std::vector<double>(instances.size(), 0.0));
            for (std::size_t o = 0; o < ops.size(); ++o)
                for (std::size_t i = 0; i < instances.size(); ++i) {
                    const auto& [sum, count] = sums.at(Key{instances[i], ops[o]});
                    summary.mean_final[o][i] = sum / count;
                }
            if (table == "summary")
                gamut::write_summary_csv(summary, dir);
            else
                gamut::write_ranks_csv(gamut::rank_table(summary), dir);
        } else if (table == "timing") {
            const auto [instances, ops, sums] = load_means("timings_runs.csv");
            gamut::TimingTable timing;
            timing.instances = instances;
            timing.rows = ops;
            timing.mean_ms.assign(ops.size(), std::vector<double>(instances.size(), 0.0));
            std::ptrdiff_t sbm = -1, sam = -1;
            for (std::size_t o = 0; o < ops.size(); ++o) {
                if (ops[o] == "SBM") sbm = static_cast<std::ptrdiff_t>(o);
                if (ops[o] == "SAM") sam = static_cast<std::ptrdiff_t>(o);
                for (std::size_t i = 0; i < instances.size(); ++i) {
                    const auto& [sum, count] = sums.at(Key{instances[i], ops[o]});
                    timing.mean_ms[o][i] = sum / count;
                }
            }
            if (sbm >= 0 && sam >= 0) {
                timing.has_ratio = true;
                for (std::size_t i = 0; i < instances.size(); ++i)
                    timing.ratio.push_back(std::lround(
                        timing.mean_ms[static_cast<std::size_t>(sbm)][i] /
                        timing.mean_ms[static_cast<std::size_t>(sam)][i]));
            }
            gamut::write_timing_csv(timing, dir);
        } else if (table == "selection") {
            read_csv(dir / "selection.csv");  // existence check; file is already a table
        } else {
            throw std::runtime_error("unknown table: " + table);
        }
        std::cerr << "wrote " << table << " table\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mutation-centric GA benchmark harness for the symmetric TSP"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "execute an experiment sweep");
    std::string spec_path;
    std::vector<std::string> instance_paths;
    std::vector<std::string> operator_names;
    int replicates = -1, generations = -1, population = -1, jobs = 0;
    std::string seed_text, out_dir, pool_name, data_dir = "data";
    bool desk = false;
    run->add_option("--spec", spec_path, "flat key=value run configuration file");
    run->add_option("--instance", instance_paths, "TSPLIB .tsp file path (repeatable)");
    run->add_option("--operators", operator_names,
                    "comma-separated operator names, or 'all'")
        ->delimiter(',');
    run->add_option("--replicates", replicates, "runs per (instance, operator)");
    run->add_option("--generations", generations, "generations per run");
    run->add_option("--population", population, "population size");
    run->add_option("--seed", seed_text, "base seed (unsigned 64-bit)");
    run->add_option("--out", out_dir, "output directory (env GAMUT_OUT overrides)");
    run->add_option("--pool", pool_name, "SBM/SAM operator pool: strict10 or full12");
    run->add_option("--data", data_dir, "directory searched for named instances");
    run->add_option("--jobs", jobs, "worker threads (default: all cores)");
    run->add_flag("--desk", desk, "laptop-scale preset: eil51, berlin52, ch130");

    // report
    auto* report = app.add_subcommand("report", "rebuild report tables from a run directory");
    std::string from;
    std::vector<std::string> tables{"summary", "ranks", "timing", "selection"};
    report->add_option("--from", from, "run output directory")->required();
    report->add_option("--tables", tables, "tables to emit")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            gamut::RunSettings settings;
            if (!spec_path.empty()) {
                std::ifstream in(spec_path);
                if (!in) throw std::runtime_error("cannot open spec file " + spec_path);
                settings = gamut::parse_run_settings(in);
            }
            if (!instance_paths.empty()) settings.instances = instance_paths;
            if (!operator_names.empty()) settings.operators = operator_names;
            if (replicates >= 0) settings.replicates = replicates;
            if (generations >= 0) settings.generations = generations;
            if (population >= 0) settings.population = population;
            if (!seed_text.empty()) settings.seed = std::stoull(seed_text);
            if (!out_dir.empty()) settings.out = out_dir;
            if (!pool_name.empty()) settings.pool = pool_name;
            if (settings.data && run->count("--data") == 0) data_dir = *settings.data;
            return run_command(settings, desk, data_dir, jobs);
        }
        return report_command(from, tables);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
