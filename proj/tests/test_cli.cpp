// End-to-end tests driving the installed binary through std::system.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "fanwatch/config.hpp"
#include "fanwatch/csv.hpp"
#include "fanwatch/eval.hpp"
#include "fanwatch/rng.hpp"
#include "fanwatch/synthgen.hpp"

using namespace fanwatch;
namespace fs = std::filesystem;

namespace {

const std::string kBin = FANWATCH_BIN;

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
               ("fanwatch_cli_" + std::to_string(static_cast<unsigned>(::getpid())));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const std::string& stdout_file = "/dev/null")
{
    const std::string cmd = kBin + " " + args + " > " + stdout_file + " 2> /dev/null";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// small schedule so subprocess runs stay fast
const char* kTinyConfig =
    "[schedule]\n"
    "plateau_s = 0.6\n"
    "ramp_s = 0.1\n"
    "gyro_rate_hz = 500\n"
    "rpm_rate_hz = 100\n";

std::string write_tiny_config(const TempDir& dir)
{
    const std::string path = dir.file("tiny.cfg");
    std::ofstream(path) << kTinyConfig;
    return path;
}

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

TEST_CASE("cli: emitted default config parses back to the defaults")
{
    TempDir dir;
    const std::string out = dir.file("default.cfg");
    REQUIRE(run("config --emit-default --out " + out) == 0);
    const RunConfig cfg = load_config(out);
    CHECK(cfg.schedule.rpm_step == 370.0);
    CHECK(cfg.schedule.rpm_max == 2960.0);
    CHECK(cfg.grid.reductions().size() == 27);
    CHECK(cfg.master_seed == 1);
}

TEST_CASE("cli: generate is deterministic and shares the rpm column across impellers")
{
    TempDir dir;
    const std::string cfg = write_tiny_config(dir);
    const std::string base = "--config " + cfg + " generate --seed 3 ";
    REQUIRE(run(base + "--impeller healthy --out " + dir.file("h1.csv")) == 0);
    REQUIRE(run(base + "--impeller healthy --out " + dir.file("h2.csv")) == 0);
    CHECK(slurp(dir.file("h1.csv")) == slurp(dir.file("h2.csv")));

    REQUIRE(run(base + "--impeller damaged --out " + dir.file("d1.csv")) == 0);
    const AlignedTable h = csv::read_aligned_recording(dir.file("h1.csv"), tiny_schedule());
    const AlignedTable d = csv::read_aligned_recording(dir.file("d1.csv"), tiny_schedule());
    REQUIRE(h.rows() == d.rows());
    CHECK(h.target == d.target); // same rpm trace
    bool gyros_differ = false;
    for (std::size_t c = 0; c < h.columns.size(); ++c)
        gyros_differ = gyros_differ || h.columns[c] != d.columns[c];
    CHECK(gyros_differ);
}

TEST_CASE("cli: reduce bins the ascend-free rows")
{
    TempDir dir;
    const std::string cfg = write_tiny_config(dir);
    const std::string rec = dir.file("run.csv");
    REQUIRE(run("--config " + cfg + " generate --seed 1 --out " + rec) == 0);

    // roughly 8 plateaus x 0.6 s x 500 Hz ascend-free rows; plateau
    // windows land between samples, so derive the exact count in-process
    const AlignedTable cleaned =
        remove_ascends(csv::read_aligned_recording(rec, tiny_schedule()));
    const std::size_t n = cleaned.rows();
    REQUIRE(n >= 2400);

    const std::string ds_path = dir.file("binned.csv");
    REQUIRE(run("--config " + cfg + " reduce --mode bin --size 100 --features mean --in " +
                rec + " --out " + ds_path) == 0);
    const Dataset binned = csv::read_dataset(ds_path);
    CHECK(binned.rows() == n / 100);
    CHECK(binned.cols() == 24);

    const std::string ds2_path = dir.file("downsampled.csv");
    REQUIRE(run("--config " + cfg + " reduce --mode downsample --fraction 0.25 --in " + rec +
                " --out " + ds2_path) == 0);
    CHECK(csv::read_dataset(ds2_path).rows() == (n + 3) / 4);
}

TEST_CASE("cli: pipeline reproduces a grid cell bit for bit")
{
    TempDir dir;
    const std::string cfg_path = write_tiny_config(dir);
    const RunConfig cfg = load_config(cfg_path);

    // library-side reference cell
    const std::uint64_t master = 9;
    ReductionConfig reduction;
    reduction.kind = ReductionConfig::Kind::downsample;
    reduction.fraction = 0.5;
    const std::string config_id = reduction.id() + "|shuffled|lr";
    CHECK(config_id == "ds_0.5|shuffled|lr");
    const std::uint64_t cell_seed = substream_seed(master, "cell", fnv1a(config_id));

    const RawRecording rec =
        generate_run(cfg.schedule, cfg.healthy_profile, Impeller::healthy, master);
    const AlignedTable cleaned = remove_ascends(forward_fill_align(rec));
    const SplitPair split = build_split(cleaned, reduction, SplitKind::shuffled, cfg.grid, cell_seed);
    const Model model = fit_model(ModelKind::lr, split.train, cfg.grid.forest, cell_seed);
    const EvalResult expect = evaluate(model, split);

    // same cell through the subprocess pipeline
    const std::string base = "--config " + cfg_path + " ";
    REQUIRE(run(base + "generate --seed 9 --out " + dir.file("run.csv")) == 0);
    REQUIRE(run(base + "reduce --mode downsample --fraction 0.5 --in " + dir.file("run.csv") +
                " --out " + dir.file("ds.csv")) == 0);
    REQUIRE(run(base + "split --split shuffled --in " + dir.file("ds.csv") + " --seed " +
                std::to_string(cell_seed) + " --out-train " + dir.file("train.csv") +
                " --out-test " + dir.file("test.csv")) == 0);
    REQUIRE(run(base + "train --model lr --in " + dir.file("train.csv") + " --out " +
                dir.file("model.txt")) == 0);
    REQUIRE(run(base + "evaluate --model-file " + dir.file("model.txt") + " --train " +
                dir.file("train.csv") + " --test " + dir.file("test.csv"),
                dir.file("eval.out")) == 0);

    char expect_out[96];
    std::snprintf(expect_out, sizeof(expect_out), "nmse_train = %.17g\nnmse_test = %.17g\n",
                  expect.nmse_train, expect.nmse_test);
    CHECK(slurp(dir.file("eval.out")) == expect_out);
}

TEST_CASE("cli: partitioned split subcommand matches the library")
{
    TempDir dir;
    const std::string cfg_path = write_tiny_config(dir);
    const RunConfig cfg = load_config(cfg_path);
    const std::string base = "--config " + cfg_path + " ";
    REQUIRE(run(base + "generate --seed 4 --out " + dir.file("run.csv")) == 0);
    REQUIRE(run(base + "split --split partitioned --mode bin --size 100 --features mean --in " +
                dir.file("run.csv") + " --out-train " + dir.file("train.csv") + " --out-test " +
                dir.file("test.csv")) == 0);

    const RawRecording rec =
        generate_run(cfg.schedule, cfg.healthy_profile, Impeller::healthy, 4);
    ReductionConfig reduction;
    reduction.kind = ReductionConfig::Kind::bin;
    reduction.bin_size = 100;
    reduction.features = FeatureSet::mean_only();
    const SplitPair expect = build_split(remove_ascends(forward_fill_align(rec)), reduction,
                                         SplitKind::partitioned, cfg.grid, 0);
    const Dataset train = csv::read_dataset(dir.file("train.csv"));
    const Dataset test = csv::read_dataset(dir.file("test.csv"));
    CHECK(train.target == expect.train.target);
    CHECK(test.target == expect.test.target);
    CHECK(train.features == expect.train.features);
}

TEST_CASE("cli: error exit codes")
{
    TempDir dir;
    // bad config file: exit 2
    CHECK(run("--config /nonexistent.cfg config --emit-default") == 2);
    std::ofstream(dir.file("bad.cfg")) << "[schedule]\nbogus_key = 1\n";
    CHECK(run("--config " + dir.file("bad.cfg") + " config --emit-default") == 2);
    // missing data file: exit 3
    CHECK(run("reduce --mode bin --size 10 --in /nonexistent.csv --out " +
              dir.file("out.csv")) == 3);
    // usage error from the parser: nonzero
    CHECK(run("frobnicate") != 0);
}
