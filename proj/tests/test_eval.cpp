#include <doctest.h>

#include <cmath>

#include "fanwatch/csv.hpp"
#include "fanwatch/eval.hpp"
#include "fanwatch/rng.hpp"
#include "fanwatch/synthgen.hpp"
#include "helpers.hpp"

using namespace fanwatch;

namespace {

ScheduleConfig tiny_schedule()
{
    ScheduleConfig s;
    s.plateau_s = 0.6;
    s.ramp_s = 0.1;
    s.gyro_rate_hz = 500.0;
    s.rpm_rate_hz = 100.0;
    return s;
}

} // namespace

TEST_CASE("nmse baselines")
{
    const std::vector<double> actual{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(nmse(actual, actual) == 0.0);

    const std::vector<double> mean_pred(5, 3.0);
    CHECK(nmse(mean_pred, actual) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constant offset gives c^2 over the population variance")
{
    const std::vector<double> actual{2.0, 4.0, 1.0, 7.0, 6.0};
    const double c = 1.5;
    std::vector<double> shifted(actual);
    for (double& v : shifted)
        v += c;
    // direct formula: population variance of actual
    const double m = oracle::mean(actual);
    double var = 0.0;
    for (double a : actual)
        var += (a - m) * (a - m);
    var /= 5.0;
    CHECK(nmse(shifted, actual) == doctest::Approx(c * c / var).epsilon(1e-12));
}

TEST_CASE("nmse is invariant under joint affine transforms")
{
    Rng rng(4);
    std::vector<double> actual(50);
    std::vector<double> predicted(50);
    for (std::size_t i = 0; i < 50; ++i) {
        actual[i] = rng.gaussian(10.0, 3.0);
        predicted[i] = actual[i] + rng.gaussian(0.0, 1.0);
    }
    const double base = nmse(predicted, actual);
    for (const auto [scale, shift] : {std::pair{2.5, 7.0}, std::pair{-3.0, -1.0}}) {
        std::vector<double> a2(actual);
        std::vector<double> p2(predicted);
        for (std::size_t i = 0; i < 50; ++i) {
            a2[i] = scale * actual[i] + shift;
            p2[i] = scale * predicted[i] + shift;
        }
        CHECK(nmse(p2, a2) == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("nmse error cases")
{
    const std::vector<double> a{1.0, 2.0};
    const std::vector<double> b{1.0, 2.0, 3.0};
    const std::vector<double> flat{2.0, 2.0, 2.0};
    CHECK_THROWS(nmse(a, b));
    CHECK_THROWS(nmse(flat, flat));
}

TEST_CASE("evaluate scores a fitted model on both partitions")
{
    // exact linear data: OLS is perfect on both sides
    Rng rng(6);
    std::vector<double> col(60);
    std::vector<double> target(60);
    for (std::size_t i = 0; i < 60; ++i) {
        col[i] = rng.uniform(-4.0, 4.0);
        target[i] = 3.0 * col[i] - 2.0;
    }
    const Dataset ds = fixtures::make_dataset({col}, target);
    const SplitPair split = shuffled_split(ds, 0.67, 3);
    const Model m = fit_model(ModelKind::lr, split.train, ForestParams{}, 3);
    const EvalResult res = evaluate(m, split);
    CHECK(res.nmse_train < 1e-12);
    CHECK(res.nmse_test < 1e-12);
}

TEST_CASE("rf with min_leaf 1 overfits the shuffled split")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed + 100);
        const std::size_t n = 200;
        std::vector<std::vector<double>> features(3, std::vector<double>(n));
        std::vector<double> target(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (auto& colv : features)
                colv[r] = rng.gaussian();
            target[r] = features[0][r] + rng.gaussian();
        }
        const Dataset ds = fixtures::make_dataset(std::move(features), std::move(target));
        const SplitPair split = shuffled_split(ds, 0.67, seed);
        const Model m = fit_model(ModelKind::rf, split.train, ForestParams{}, seed);
        const EvalResult res = evaluate(m, split);
        CHECK(res.nmse_train < res.nmse_test);
    }
}

TEST_CASE("restricted grid runs a single cell")
{
    GridConfig grid;
    grid.fractions = {1.0};
    grid.bin_sizes = {};
    grid.splits = {SplitKind::shuffled};
    grid.models = {ModelKind::lr};
    const auto rec = generate_run(tiny_schedule(), ImpellerProfile{}, Impeller::healthy, 1);
    const ExperimentReport report = run_grid(rec, grid, 1);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].ok());
    CHECK(report.rows[0].config_id == "ds_1|shuffled|lr");
    CHECK(report.rows[0].nmse_train > 0.0);
    CHECK(report.rows[0].nmse_test > 0.0);
}

TEST_CASE("full default grid has 108 cells and is deterministic")
{
    const GridConfig grid;
    const auto rec = generate_run(tiny_schedule(), ImpellerProfile{}, Impeller::healthy, 2);
    const ExperimentReport a = run_grid(rec, grid, 7, 1);
    REQUIRE(a.rows.size() == 108);
    const ExperimentReport b = run_grid(rec, grid, 7, 3);
    CHECK(csv::serialize_report(a) == csv::serialize_report(b));

    // oversized bins must fail with a status, not abort the grid
    bool saw_failure = false;
    for (const auto& row : a.rows)
        saw_failure = saw_failure || !row.ok();
    CHECK(saw_failure); // bin 50000 cannot fit the tiny run
}

TEST_CASE("health_eval on identical datasets gives ratio 1")
{
    Rng rng(8);
    std::vector<double> col(90);
    std::vector<double> target(90);
    for (std::size_t i = 0; i < 90; ++i) {
        col[i] = rng.uniform(0.0, 1.0);
        target[i] = 2.0 * col[i] + rng.gaussian(0.0, 0.05);
    }
    const Dataset ds = fixtures::make_dataset({col}, target);
    const Model m = fit_model(ModelKind::lr, ds, ForestParams{}, 1);
    const HealthReport rep = health_eval(m, ds, ds);
    CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.healthy_points.size() == 90);
}

TEST_CASE("damage response is monotone in the amplitude scale")
{
    const auto sched = tiny_schedule();
    const ImpellerProfile healthy;
    const RawRecording rec_h = generate_run(sched, healthy, Impeller::healthy, 5);

    ReductionConfig reduction;
    reduction.kind = ReductionConfig::Kind::bin;
    reduction.bin_size = 100;
    reduction.features = FeatureSet::mean_only();

    GridConfig grid;
    double prev = -1.0;
    for (double scale : {1.0, 2.0, 3.0, 5.0}) {
        const RawRecording rec_d =
            generate_run(sched, healthy.scaled(scale), Impeller::damaged, 5);
        const HealthReport rep =
            run_health(rec_h, rec_d, reduction, ModelKind::lr, grid, 5);
        CHECK(rep.nmse_damaged >= prev);
        prev = rep.nmse_damaged;
    }
}
