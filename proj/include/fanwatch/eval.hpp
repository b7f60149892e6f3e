// NMSE scoring, the experiment grid and the healthy/damaged evaluation.

#ifndef FANWATCH_EVAL_HPP
#define FANWATCH_EVAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fanwatch/forest.hpp"
#include "fanwatch/linreg.hpp"
#include "fanwatch/preprocess.hpp"
#include "fanwatch/splits.hpp"
#include "fanwatch/types.hpp"

namespace fanwatch {

using Model = std::variant<LinearModel, ForestModel>;

std::vector<double> predict(const Model& m, const Dataset& ds);
const std::vector<std::string>& model_columns(const Model& m);

// Mean squared error divided by the population variance (divisor n) of
// the actual values. Throws on length mismatch or zero-variance actual.
double nmse(std::span<const double> predicted, std::span<const double> actual);

// Scores an already-fitted model on both partitions.
struct EvalResult {
    double nmse_train = 0.0;
    double nmse_test = 0.0;
};
EvalResult evaluate(const Model& m, const SplitPair& split);

struct ReductionConfig {
    enum class Kind { downsample, bin };
    Kind kind = Kind::downsample;
    double fraction = 1.0;   // downsample
    std::size_t bin_size = 0; // bin
    FeatureSet features;      // bin

    std::string id() const; // "ds_0.5" / "bin_1000_mean"
};

enum class SplitKind { shuffled, partitioned };
enum class ModelKind { lr, rf };

const char* to_string(SplitKind k);
const char* to_string(ModelKind k);

struct GridConfig {
    std::vector<double> fractions = {0.5, 0.25, 0.1, 0.01, 0.001, 0.0001};
    std::vector<std::size_t> bin_sizes = {100, 500, 1000, 2500, 5000, 10000, 50000};
    std::vector<FeatureSet> feature_sets = {FeatureSet::mean_only(), FeatureSet::mean_std(),
                                            FeatureSet::all()};
    std::vector<SplitKind> splits = {SplitKind::shuffled, SplitKind::partitioned};
    std::vector<ModelKind> models = {ModelKind::lr, ModelKind::rf};
    PartitionPlan plan;
    ForestParams forest;
    double shuffle_ratio = 0.67;

    std::vector<ReductionConfig> reductions() const; // downsamples first, then bins
};

struct ReportRow {
    std::string config_id;
    std::string reduction;
    std::string split;
    std::string model;
    std::string status; // "ok" or the error message
    double nmse_train = 0.0;
    double nmse_test = 0.0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::uint64_t seed = 0;

    bool ok() const { return status == "ok"; }
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
};

// Reduces the cleaned table per the reduction, then splits. The cleaned
// table must already be aligned and ascend-free.
SplitPair build_split(const AlignedTable& cleaned, const ReductionConfig& reduction,
                      SplitKind split, const GridConfig& grid, std::uint64_t seed);

Model fit_model(ModelKind kind, const Dataset& train, const ForestParams& forest_template,
                std::uint64_t seed);

// Full pipeline (align, remove ascends, reduce, split, fit, evaluate)
// for every grid cell. Per-cell seeds derive from (master_seed,
// config_id); cell failures land in the row status. Rows are ordered by
// grid position regardless of job count.
ExperimentReport run_grid(const RawRecording& healthy_run, const GridConfig& grid,
                          std::uint64_t master_seed, int jobs = 1);

struct HealthReport {
    std::string config_id;
    std::string model;
    double nmse_healthy = 0.0;
    double nmse_damaged = 0.0;
    double ratio = 0.0; // nmse_damaged / nmse_healthy when defined
    // per-row (actual, predicted) pairs for plotting
    std::vector<std::pair<double, double>> healthy_points;
    std::vector<std::pair<double, double>> damaged_points;
};

// Scores a model fitted on healthy data against the whole healthy and
// whole damaged dataset. Both datasets must come from the identical
// preprocessing config.
HealthReport health_eval(const Model& m, const Dataset& healthy_ds, const Dataset& damaged_ds);

// Convenience wrapper: reduce both recordings identically, train on the
// healthy shuffled train partition, run health_eval on the full sets.
HealthReport run_health(const RawRecording& healthy_run, const RawRecording& damaged_run,
                        const ReductionConfig& reduction, ModelKind model,
                        const GridConfig& grid, std::uint64_t master_seed);

} // namespace fanwatch

#endif
