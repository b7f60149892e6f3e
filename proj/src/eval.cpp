#include "fanwatch/eval.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "fanwatch/rng.hpp"

namespace fanwatch {

std::vector<double> predict(const Model& m, const Dataset& ds)
{
    return std::visit([&ds](const auto& model) { return predict(model, ds); }, m);
}

const std::vector<std::string>& model_columns(const Model& m)
{
    return std::visit([](const auto& model) -> const std::vector<std::string>& {
        return model.column_names;
    }, m);
}

double nmse(std::span<const double> predicted, std::span<const double> actual)
{
    if (predicted.size() != actual.size())
        throw std::invalid_argument("nmse: length mismatch");
    if (actual.empty())
        throw std::invalid_argument("nmse: empty input");
    const auto n = static_cast<double>(actual.size());
    double mean = 0.0;
    for (double a : actual)
        mean += a;
    mean /= n;
    double var = 0.0;
    for (double a : actual) {
        const double d = a - mean;
        var += d * d;
    }
    var /= n;
    if (var == 0.0)
        throw std::invalid_argument("nmse: actual values have zero variance");
    double mse = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = predicted[i] - actual[i];
        mse += d * d;
    }
    mse /= n;
    return mse / var;
}

EvalResult evaluate(const Model& m, const SplitPair& split)
{
    EvalResult res;
    res.nmse_train = nmse(predict(m, split.train), split.train.target);
    res.nmse_test = nmse(predict(m, split.test), split.test.target);
    return res;
}

namespace {

std::string format_fraction(double f)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", f);
    return buf;
}

} // namespace

std::string ReductionConfig::id() const
{
    if (kind == Kind::downsample)
        return "ds_" + format_fraction(fraction);
    return "bin_" + std::to_string(bin_size) + "_" + features.name();
}

const char* to_string(SplitKind k)
{
    return k == SplitKind::shuffled ? "shuffled" : "partitioned";
}

const char* to_string(ModelKind k)
{
    return k == ModelKind::lr ? "lr" : "rf";
}

std::vector<ReductionConfig> GridConfig::reductions() const
{
    std::vector<ReductionConfig> out;
    for (double f : fractions) {
        ReductionConfig r;
        r.kind = ReductionConfig::Kind::downsample;
        r.fraction = f;
        out.push_back(std::move(r));
    }
    for (std::size_t size : bin_sizes)
        for (const FeatureSet& fs : feature_sets) {
            ReductionConfig r;
            r.kind = ReductionConfig::Kind::bin;
            r.bin_size = size;
            r.features = fs;
            out.push_back(std::move(r));
        }
    return out;
}

SplitPair build_split(const AlignedTable& cleaned, const ReductionConfig& reduction,
                      SplitKind split, const GridConfig& grid, std::uint64_t seed)
{
    if (split == SplitKind::shuffled) {
        Dataset reduced;
        if (reduction.kind == ReductionConfig::Kind::downsample)
            reduced = downsample(table_to_dataset(cleaned), reduction.fraction);
        else
            reduced = bin(cleaned, {reduction.bin_size, reduction.features});
        return shuffled_split(reduced, grid.shuffle_ratio, seed);
    }
    SegmentReducer reducer;
    if (reduction.kind == ReductionConfig::Kind::downsample) {
        const double fraction = reduction.fraction;
        reducer = [fraction](const AlignedTable& seg) {
            return downsample(table_to_dataset(seg), fraction);
        };
    } else {
        const BinConfig cfg{reduction.bin_size, reduction.features};
        reducer = [cfg](const AlignedTable& seg) { return bin(seg, cfg); };
    }
    return partitioned_split(cleaned, grid.plan, reducer);
}

Model fit_model(ModelKind kind, const Dataset& train, const ForestParams& forest_template,
                std::uint64_t seed)
{
    if (kind == ModelKind::lr)
        return fit_ols(train);
    ForestParams params = forest_template;
    params.seed = seed;
    return fit_rf(train, params);
}

ExperimentReport run_grid(const RawRecording& healthy_run, const GridConfig& grid,
                          std::uint64_t master_seed, int jobs)
{
    if (jobs < 1)
        throw std::invalid_argument("jobs must be >= 1");
    const AlignedTable cleaned = remove_ascends(forward_fill_align(healthy_run));

    struct Cell {
        ReductionConfig reduction;
        SplitKind split;
        ModelKind model;
    };
    std::vector<Cell> cells;
    for (const auto& r : grid.reductions())
        for (SplitKind s : grid.splits)
            for (ModelKind m : grid.models)
                cells.push_back({r, s, m});

    ExperimentReport report;
    report.rows.resize(cells.size());

    auto run_cell = [&](std::size_t i) {
        const Cell& cell = cells[i];
        ReportRow& row = report.rows[i];
        row.config_id = cell.reduction.id() + "|" + to_string(cell.split) + "|" +
                        to_string(cell.model);
        row.reduction = cell.reduction.id();
        row.split = to_string(cell.split);
        row.model = to_string(cell.model);
        row.seed = substream_seed(master_seed, "cell", fnv1a(row.config_id));
        try {
            const SplitPair split = build_split(cleaned, cell.reduction, cell.split, grid, row.seed);
            const Model model = fit_model(cell.model, split.train, grid.forest, row.seed);
            const EvalResult res = evaluate(model, split);
            row.nmse_train = res.nmse_train;
            row.nmse_test = res.nmse_test;
            row.n_train = split.train.rows();
            row.n_test = split.test.rows();
            row.status = "ok";
        } catch (const std::exception& e) {
            row.status = e.what();
        }
    };

    if (jobs == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(jobs));
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
                    run_cell(i);
            });
        for (auto& t : workers)
            t.join();
    }
    return report;
}

HealthReport health_eval(const Model& m, const Dataset& healthy_ds, const Dataset& damaged_ds)
{
    if (healthy_ds.column_names != model_columns(m) ||
        damaged_ds.column_names != model_columns(m))
        throw std::invalid_argument("feature columns do not match the model");

    HealthReport rep;
    const auto pred_h = predict(m, healthy_ds);
    const auto pred_d = predict(m, damaged_ds);
    rep.nmse_healthy = nmse(pred_h, healthy_ds.target);
    rep.nmse_damaged = nmse(pred_d, damaged_ds.target);
    rep.ratio = rep.nmse_healthy > 0.0 ? rep.nmse_damaged / rep.nmse_healthy : 0.0;
    rep.healthy_points.reserve(healthy_ds.rows());
    for (std::size_t i = 0; i < healthy_ds.rows(); ++i)
        rep.healthy_points.emplace_back(healthy_ds.target[i], pred_h[i]);
    rep.damaged_points.reserve(damaged_ds.rows());
    for (std::size_t i = 0; i < damaged_ds.rows(); ++i)
        rep.damaged_points.emplace_back(damaged_ds.target[i], pred_d[i]);
    return rep;
}

HealthReport run_health(const RawRecording& healthy_run, const RawRecording& damaged_run,
                        const ReductionConfig& reduction, ModelKind model,
                        const GridConfig& grid, std::uint64_t master_seed)
{
    const AlignedTable healthy = remove_ascends(forward_fill_align(healthy_run));
    const AlignedTable damaged = remove_ascends(forward_fill_align(damaged_run));

    auto reduce = [&](const AlignedTable& table) {
        if (reduction.kind == ReductionConfig::Kind::downsample)
            return downsample(table_to_dataset(table), reduction.fraction);
        return bin(table, {reduction.bin_size, reduction.features});
    };
    const Dataset healthy_ds = reduce(healthy);
    const Dataset damaged_ds = reduce(damaged);

    const std::string config_id =
        reduction.id() + "|health|" + to_string(model);
    const std::uint64_t seed = substream_seed(master_seed, "cell", fnv1a(config_id));
    const SplitPair split = shuffled_split(healthy_ds, grid.shuffle_ratio, seed);
    const Model fitted = fit_model(model, split.train, grid.forest, seed);

    HealthReport rep = health_eval(fitted, healthy_ds, damaged_ds);
    rep.config_id = config_id;
    rep.model = to_string(model);
    return rep;
}

} // namespace fanwatch
