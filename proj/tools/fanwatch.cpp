// fanwatch command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fanwatch/config.hpp"
#include "fanwatch/csv.hpp"
#include "fanwatch/eval.hpp"
#include "fanwatch/model_io.hpp"
#include "fanwatch/preprocess.hpp"
#include "fanwatch/rng.hpp"
#include "fanwatch/splits.hpp"
#include "fanwatch/synthgen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;

using namespace fanwatch;

RunConfig resolve_config(const std::string& config_path)
{
    if (!config_path.empty())
        return load_config(config_path);
    if (const char* env = std::getenv("FANWATCH_CONFIG"); env && *env)
        return load_config(env);
    return parse_config(emit_default_config(), "<builtin>");
}

ReductionConfig make_reduction(const std::string& mode, double fraction, std::size_t size,
                               const std::string& features)
{
    ReductionConfig r;
    if (mode == "downsample") {
        r.kind = ReductionConfig::Kind::downsample;
        r.fraction = fraction;
    } else if (mode == "bin") {
        r.kind = ReductionConfig::Kind::bin;
        r.bin_size = size;
        r.features = FeatureSet::parse(features);
    } else {
        throw std::invalid_argument("unknown reduction mode '" + mode + "'");
    }
    return r;
}

Dataset reduce_table(const AlignedTable& cleaned, const ReductionConfig& r)
{
    if (r.kind == ReductionConfig::Kind::downsample)
        return downsample(table_to_dataset(cleaned), r.fraction);
    return bin(cleaned, {r.bin_size, r.features});
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Radial-fan data-reduction toolchain: synthetic runs, reduction,\n"
                 "regression models, NMSE grids and health-state evaluation."};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path,
                   "Config file (defaults to $FANWATCH_CONFIG, then built-in defaults)")
        ->envname("FANWATCH_CONFIG");

    // config
    auto* cmd_config = app.add_subcommand("config", "Emit the default config");
    std::string config_out;
    bool emit_default = false;
    cmd_config->add_flag("--emit-default", emit_default, "Print the documented default config");
    cmd_config->add_option("--out", config_out, "Write to a file instead of stdout");

    // generate
    auto* cmd_gen = app.add_subcommand("generate", "Generate a synthetic test run");
    std::string gen_impeller = "healthy";
    std::uint64_t gen_seed = 0;
    bool gen_seed_set = false;
    std::string gen_out;
    bool gen_multirate = false;
    cmd_gen->add_option("--impeller", gen_impeller, "healthy or damaged")
        ->check(CLI::IsMember({"healthy", "damaged"}));
    cmd_gen->add_option("--seed", gen_seed, "Run seed (default: master_seed from config)")
        ->each([&](const std::string&) { gen_seed_set = true; });
    cmd_gen->add_option("--out", gen_out, "Output CSV path")->required();
    cmd_gen->add_flag("--raw-multirate", gen_multirate,
                      "Write <out>.rpm.csv and <out>.gyro.csv at native rates instead");

    // reduce
    auto* cmd_reduce = app.add_subcommand("reduce", "Reduce a recording to a dataset");
    std::string red_mode;
    double red_fraction = 1.0;
    std::size_t red_size = 0;
    std::string red_features = "mean";
    std::string red_in;
    std::string red_out;
    cmd_reduce->add_option("--mode", red_mode, "downsample or bin")
        ->required()
        ->check(CLI::IsMember({"downsample", "bin"}));
    cmd_reduce->add_option("--fraction", red_fraction, "Downsample fraction in (0, 1]");
    cmd_reduce->add_option("--size", red_size, "Bin size in samples");
    cmd_reduce->add_option("--features", red_features,
                           "Comma list of mean,std,range,median,kurtosis, or 'all'");
    cmd_reduce->add_option("--in", red_in, "Aligned recording CSV")->required();
    cmd_reduce->add_option("--out", red_out, "Output dataset CSV")->required();

    // split
    auto* cmd_split = app.add_subcommand("split", "Split into train/test datasets");
    std::string split_kind = "shuffled";
    std::string split_in;
    std::string split_out_train;
    std::string split_out_test;
    std::uint64_t split_seed = 0;
    double split_ratio = 0.0;
    std::string split_red_mode;
    double split_red_fraction = 1.0;
    std::size_t split_red_size = 0;
    std::string split_red_features = "mean";
    cmd_split->add_option("--split", split_kind, "shuffled or partitioned")
        ->check(CLI::IsMember({"shuffled", "partitioned"}));
    cmd_split->add_option("--in", split_in,
                          "Dataset CSV (shuffled) or aligned recording CSV (partitioned)")
        ->required();
    cmd_split->add_option("--seed", split_seed, "Shuffle seed");
    cmd_split->add_option("--ratio", split_ratio, "Train share (default from config)");
    cmd_split->add_option("--mode", split_red_mode,
                          "Per-plateau reduction for the partitioned split: downsample or bin");
    cmd_split->add_option("--fraction", split_red_fraction, "Downsample fraction");
    cmd_split->add_option("--size", split_red_size, "Bin size");
    cmd_split->add_option("--features", split_red_features, "Bin features");
    cmd_split->add_option("--out-train", split_out_train, "Train dataset CSV")->required();
    cmd_split->add_option("--out-test", split_out_test, "Test dataset CSV")->required();

    // train
    auto* cmd_train = app.add_subcommand("train", "Fit a model on a train dataset");
    std::string train_model = "lr";
    std::string train_in;
    std::string train_out;
    std::uint64_t train_seed = 0;
    cmd_train->add_option("--model", train_model, "lr or rf")
        ->check(CLI::IsMember({"lr", "rf"}));
    cmd_train->add_option("--in", train_in, "Train dataset CSV")->required();
    cmd_train->add_option("--seed", train_seed, "Forest seed");
    cmd_train->add_option("--out", train_out, "Model file")->required();

    // evaluate
    auto* cmd_eval = app.add_subcommand("evaluate", "Score a fitted model");
    std::string eval_model;
    std::string eval_train;
    std::string eval_test;
    cmd_eval->add_option("--model-file", eval_model, "Model file")->required();
    cmd_eval->add_option("--train", eval_train, "Train dataset CSV");
    cmd_eval->add_option("--test", eval_test, "Test dataset CSV");

    // grid
    auto* cmd_grid = app.add_subcommand("grid", "Run the full experiment grid");
    std::string grid_out_dir = ".";
    int grid_jobs = 1;
    std::uint64_t grid_seed = 0;
    bool grid_seed_set = false;
    cmd_grid->add_option("--out-dir", grid_out_dir, "Output directory");
    cmd_grid->add_option("--jobs", grid_jobs, "Worker count")->check(CLI::PositiveNumber);
    cmd_grid->add_option("--seed", grid_seed, "Master seed override")
        ->each([&](const std::string&) { grid_seed_set = true; });

    // health
    auto* cmd_health = app.add_subcommand("health", "Healthy-vs-damaged evaluation");
    std::string health_model;
    std::string health_healthy;
    std::string health_damaged;
    std::string health_out = "health.csv";
    std::string health_scatter = "fig5_health_scatter.csv";
    cmd_health->add_option("--model", health_model, "Model file fitted on healthy data")
        ->required();
    cmd_health->add_option("--healthy", health_healthy, "Healthy dataset CSV")->required();
    cmd_health->add_option("--damaged", health_damaged, "Damaged dataset CSV")->required();
    cmd_health->add_option("--out", health_out, "Health report CSV");
    cmd_health->add_option("--scatter", health_scatter, "Prediction/actual scatter CSV");

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    try {
        cfg = resolve_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }

    try {
        if (cmd_config->parsed()) {
            (void)emit_default;
            if (config_out.empty()) {
                std::cout << emit_default_config();
            } else {
                std::ofstream out(config_out);
                if (!out)
                    throw std::runtime_error("cannot open '" + config_out + "' for writing");
                out << emit_default_config();
            }
        } else if (cmd_gen->parsed()) {
            const Impeller imp =
                gen_impeller == "healthy" ? Impeller::healthy : Impeller::damaged;
            const ImpellerProfile profile =
                imp == Impeller::healthy ? cfg.healthy_profile : cfg.damaged_profile();
            const std::uint64_t seed = gen_seed_set ? gen_seed : cfg.master_seed;
            const RawRecording rec =
                generate_run(cfg.schedule, profile, imp, seed, cfg.sample_budget);
            if (gen_multirate)
                csv::write_multirate(gen_out + ".rpm.csv", gen_out + ".gyro.csv", rec);
            else
                csv::write_aligned_recording(gen_out, forward_fill_align(rec));
        } else if (cmd_reduce->parsed()) {
            const ReductionConfig r =
                make_reduction(red_mode, red_fraction, red_size, red_features);
            const AlignedTable table = csv::read_aligned_recording(red_in, cfg.schedule);
            csv::write_dataset(red_out, reduce_table(remove_ascends(table), r));
        } else if (cmd_split->parsed()) {
            SplitPair pair;
            if (split_kind == "shuffled") {
                const double ratio = split_ratio > 0.0 ? split_ratio : cfg.grid.shuffle_ratio;
                pair = shuffled_split(csv::read_dataset(split_in), ratio, split_seed);
            } else {
                if (split_red_mode.empty())
                    throw std::invalid_argument("partitioned split needs --mode");
                const ReductionConfig r = make_reduction(split_red_mode, split_red_fraction,
                                                         split_red_size, split_red_features);
                const AlignedTable cleaned =
                    remove_ascends(csv::read_aligned_recording(split_in, cfg.schedule));
                pair = build_split(cleaned, r, SplitKind::partitioned, cfg.grid, split_seed);
            }
            csv::write_dataset(split_out_train, pair.train);
            csv::write_dataset(split_out_test, pair.test);
        } else if (cmd_train->parsed()) {
            const Dataset train = csv::read_dataset(train_in);
            const ModelKind kind = train_model == "lr" ? ModelKind::lr : ModelKind::rf;
            save_model(train_out, fit_model(kind, train, cfg.grid.forest, train_seed));
        } else if (cmd_eval->parsed()) {
            const Model model = load_model(eval_model);
            if (eval_train.empty() && eval_test.empty())
                throw std::invalid_argument("evaluate needs --train and/or --test");
            char buf[32];
            if (!eval_train.empty()) {
                const Dataset ds = csv::read_dataset(eval_train);
                std::snprintf(buf, sizeof(buf), "%.17g", nmse(predict(model, ds), ds.target));
                std::cout << "nmse_train = " << buf << '\n';
            }
            if (!eval_test.empty()) {
                const Dataset ds = csv::read_dataset(eval_test);
                std::snprintf(buf, sizeof(buf), "%.17g", nmse(predict(model, ds), ds.target));
                std::cout << "nmse_test = " << buf << '\n';
            }
        } else if (cmd_grid->parsed()) {
            const std::uint64_t seed = grid_seed_set ? grid_seed : cfg.master_seed;
            const RawRecording rec = generate_run(cfg.schedule, cfg.healthy_profile,
                                                  Impeller::healthy, seed, cfg.sample_budget);
            const ExperimentReport report = run_grid(rec, cfg.grid, seed, grid_jobs);
            csv::write_report(grid_out_dir + "/report.csv", report);
            csv::write_figure_bundle(grid_out_dir, report);
        } else if (cmd_health->parsed()) {
            const Model model = load_model(health_model);
            const Dataset healthy = csv::read_dataset(health_healthy);
            const Dataset damaged = csv::read_dataset(health_damaged);
            HealthReport rep = health_eval(model, healthy, damaged);
            rep.config_id = "custom";
            rep.model = std::holds_alternative<LinearModel>(model) ? "lr" : "rf";
            csv::write_health(health_out, health_scatter, rep);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitOk;
}
