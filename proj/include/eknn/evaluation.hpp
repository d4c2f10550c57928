#ifndef EKNN_EVALUATION_HPP
#define EKNN_EVALUATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "eknn/classifiers.hpp"
#include "eknn/dataset.hpp"
#include "eknn/distance.hpp"

namespace eknn {

/// Whether normalization bounds come from the training split only (no
/// leakage, the default) or from the full dataset before splitting.
enum class NormalizeScope { train, all };

NormalizeScope parse_scope(std::string_view name);
std::string_view to_string(NormalizeScope scope);

/// Repeated-split benchmark protocol: seeded random splits, per-feature
/// min-max normalization, every roster classifier scored on the same test
/// partition each run, accuracies averaged over the runs.
struct ExperimentConfig {
    std::string dataset_path;
    LabelColumn label_column;
    bool has_header = false;
    double test_fraction = 0.30;
    int repetitions = 10;
    std::uint64_t base_seed = 0;
    Metric metric = Metric::manhattan;
    NormalizeScope normalize_scope = NormalizeScope::train;
    std::vector<ClassifierSpec> roster;
};

struct RunResult {
    std::uint64_t seed = 0;
    std::vector<double> accuracies; // parallel to the roster
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<RunResult> runs;
    std::vector<double> means; // parallel to the roster
};

enum class ReportFormat { table, json };

/// Fraction of positions where predictions and truth agree.
double accuracy(const std::vector<int>& predictions, const std::vector<int>& truth);

/// Runs the full protocol on an already-loaded dataset. Run r uses seed
/// base_seed + r. Deterministic given the config; test examples within a run
/// are classified by a worker pool capped by ENSEMBLE_KNN_THREADS (0 or
/// unset = one worker per hardware thread).
ExperimentReport run_experiment(const Dataset& data, const ExperimentConfig& config);

/// Convenience overload that loads config.dataset_path first.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// table: one row per classifier, means rounded half-up to 2 decimals.
/// json: full per-run detail with a stable key order, byte-identical for
/// identical configs.
std::string render_report(const ExperimentReport& report, ReportFormat format);

/// Decimal round-half-up, e.g. round_half_up(0.955, 2) == 0.96.
double round_half_up(double value, int decimals);

} // namespace eknn

#endif // EKNN_EVALUATION_HPP
