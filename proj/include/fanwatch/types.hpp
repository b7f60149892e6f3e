// Shared data types flowing through the pipeline.
//
// All containers are plain value types: immutable by convention after
// construction and safe to share across workers.

#ifndef FANWATCH_TYPES_HPP
#define FANWATCH_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fanwatch {

// One named sample stream at a fixed rate. Sample i has timestamp
// t0_s + i / rate_hz.
struct Channel {
    std::string name;
    double rate_hz = 0.0;
    double t0_s = 0.0;
    std::vector<double> samples;

    double timestamp(std::size_t i) const { return t0_s + static_cast<double>(i) / rate_hz; }
};

// Test-routine parameters. The speed is stepped from 0 to rpm_max in
// rpm_step increments, holding each plateau for plateau_s and ramping
// linearly for ramp_s in between.
struct ScheduleConfig {
    double rpm_step = 370.0;
    double rpm_max = 2960.0;
    double plateau_s = 10.0;
    double ramp_s = 2.0;
    double gyro_rate_hz = 1000.0;
    double rpm_rate_hz = 100.0;

    // number of non-zero plateaus (8 by default)
    int num_steps() const { return static_cast<int>(rpm_max / rpm_step + 0.5); }
    int num_plateaus() const { return num_steps() + 1; }
    double total_duration_s() const
    {
        return num_plateaus() * plateau_s + num_steps() * ramp_s;
    }
};

enum class Impeller { healthy, damaged };

const char* to_string(Impeller imp);

// One complete test run: 24 gyro channels plus one "rpm" channel at a
// lower rate.
struct RawRecording {
    std::vector<Channel> channels;
    ScheduleConfig schedule;
    Impeller impeller = Impeller::healthy;
    std::uint64_t seed = 0;

    const Channel& rpm() const;
    std::vector<const Channel*> gyros() const; // in recording order
};

// Uniform-grid table at the master (gyro) rate. plateau_index is 0 for
// transient rows (ramps and the zero-speed hold) and k for the plateau
// at k * rpm_step.
struct AlignedTable {
    double master_rate_hz = 0.0;
    std::vector<double> timestamps_s;
    std::vector<std::string> column_names; // gyro feature columns
    std::vector<std::vector<double>> columns; // column-major, all same length
    std::vector<double> target; // rpm
    std::vector<int> plateau_index;

    std::size_t rows() const { return timestamps_s.size(); }
    std::size_t cols() const { return columns.size(); }
};

// Feature matrix + target, the unit consumed by models. Features are
// stored column-major. row_provenance carries the source row index (or
// bin ordinal) each row was derived from.
struct Dataset {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> features; // column-major
    std::vector<double> target;
    std::vector<std::int64_t> row_provenance;

    std::size_t rows() const { return target.size(); }
    std::size_t cols() const { return features.size(); }

    // row-major view of one row
    std::vector<double> row(std::size_t r) const;
};

struct SplitPair {
    Dataset train;
    Dataset test;
};

struct Violation {
    std::string what;
    std::int64_t row = -1; // -1 when not row-specific
};

struct ValidationResult {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Diagnostic check of all AlignedTable invariants; never throws.
ValidationResult validate(const AlignedTable& table);

} // namespace fanwatch

#endif
