#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "armoo/dataset.hpp"
#include "armoo/quality.hpp"
#include "armoo/rule.hpp"
#include "armoo/variation.hpp"

namespace armoo {

enum class Algorithm { Nsga3, Moead };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm a) noexcept;

/// "NSGA-III-ARM-V1", "MOEAD-ARM-V2", ...
std::string framework_name(Algorithm a, Variant v);

RatioMode parse_ratio_mode(std::string_view name);
std::string_view to_string(RatioMode m) noexcept;

struct SyntheticDataset {
    std::size_t transactions = 200;
    std::size_t items = 10;
    double density = 0.4;
    std::uint64_t seed = 1;
};

struct ExperimentConfig {
    std::string name = "experiment";

    // Either a file on disk or a generated dataset.
    std::filesystem::path dataset_path;
    DatasetFormat format = DatasetFormat::MatrixCsv;
    std::optional<SyntheticDataset> synthetic;

    std::vector<Algorithm> algorithms{Algorithm::Nsga3, Algorithm::Moead};
    std::vector<Variant> variants{Variant::V1, Variant::V2};
    std::vector<double> pc_grid{0.8, 0.85, 0.9};
    std::vector<double> pm_grid{0.1, 0.15, 0.2};
    std::size_t runs = 30;
    std::size_t generations = 200;
    std::uint64_t base_seed = 1;

    std::size_t population = 50;      // NSGA-III
    std::size_t nsga3_divisions = 12; // 91 reference points
    std::size_t moead_divisions = 8;  // 45 subproblems
    std::size_t neighborhood = 20;
    double theta = 5.0;
    InitStrategy init = InitStrategy::Auto;
    MutationMode mutation_mode = MutationMode::PerGene;

    RatioMode ratio_mode = RatioMode::RatioOfMeans;
    std::size_t top_rules = 10;

    TrueFrontSettings truefront;
    /// Precomputed reference fronts (front CSV files) by variant.
    std::map<Variant, std::filesystem::path> zeff;
    /// Refuse to compute a reference front; every variant then needs a zeff file.
    bool no_truefront = false;

    /// Throws MalformedConfig or InvalidParameter.
    void validate() const;
};

/// Parses TOML text. Relative paths resolve against base_dir.
ExperimentConfig parse_experiment_config(std::string_view toml_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

TransactionDatabase load_experiment_dataset(const ExperimentConfig& config);

struct FrequencyRow {
    Rule rule;
    RuleMetrics metrics;
    std::size_t frequency = 0;
};

struct FrontRules {
    std::vector<Rule> rules;
    std::vector<RuleMetrics> metrics;
};

/// Counts distinct rules across fronts (a rule counts once per front).
/// Ordered by frequency desc, support desc, then rule JSON text.
std::vector<FrequencyRow> rule_frequency_table(std::span<const FrontRules> fronts, const TransactionDatabase& db);

struct CellResult {
    double pc = 0.0;
    double pm = 0.0;
    std::vector<RunIndicators> runs;
    double mean_hv = 0.0;
    double mean_igd = 0.0;
    double ratio = 0.0;
    std::size_t evaluations = 0;  // summed over runs
    std::size_t clamped = 0;      // summed over runs
    double seconds = 0.0;         // wall clock, summed over runs; not reproducible
};

struct GroupReport {
    Algorithm algorithm = Algorithm::Nsga3;
    Variant variant = Variant::V1;
    std::vector<CellResult> cells;  // pc-major grid order
    std::size_t best_cell = 0;
    std::vector<FrequencyRow> top_rules;
};

struct AggregateReport {
    std::string name;
    std::string problem;
    std::size_t transactions = 0;
    std::size_t items = 0;
    std::size_t runs = 0;
    RatioMode ratio_mode = RatioMode::RatioOfMeans;
    std::map<Variant, FrontApproximation> zeff;
    std::vector<GroupReport> groups;  // algorithm-major, config order
};

/// Argmax ratio; ties go to the smallest (pc, pm).
std::size_t best_cell_index(std::span<const CellResult> cells);

/// Mean HV, mean IGD and ratio of a cell from its run indicators.
void summarize_cell(CellResult& cell, RatioMode mode);

struct RunOptions {
    std::size_t workers = 1;
    /// Reference fronts computed here are written into this directory.
    std::optional<std::filesystem::path> out_dir;
    std::function<void(std::string_view)> log;
};

/// Seed of run r of a cell; depends only on the cell's own coordinates.
std::uint64_t run_seed(std::uint64_t base_seed, Algorithm a, Variant v, double pc, double pm, std::size_t run);

/// Reference fronts, grid runs and aggregation. Deterministic per config,
/// whatever the worker count.
AggregateReport run_experiment(const ExperimentConfig& config, const TransactionDatabase& db,
                               const RunOptions& options = {});

/// hv_igd_{variant}.csv, top_rules_{algorithm}_{variant}.csv and
/// report.json, all reproducible; timing.csv holds the wall-clock figures.
void write_reports(const AggregateReport& report, const TransactionDatabase& db, const std::filesystem::path& out_dir);

std::string hv_igd_csv(const AggregateReport& report, Variant variant);
std::string top_rules_csv(const GroupReport& group, const TransactionDatabase& db);
std::string report_json(const AggregateReport& report, const TransactionDatabase& db);
std::string timing_csv(const AggregateReport& report);

} // namespace armoo
