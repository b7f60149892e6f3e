// Alignment, ascend removal and the two data-reduction strategies.

#ifndef FANWATCH_PREPROCESS_HPP
#define FANWATCH_PREPROCESS_HPP

#include <string>
#include <vector>

#include "fanwatch/types.hpp"

namespace fanwatch {

enum class BinFeature { mean, std_dev, range, median, kurtosis };

const char* to_string(BinFeature f);

// Non-empty subset of the five bin features, kept in canonical order.
struct FeatureSet {
    std::vector<BinFeature> features;

    static FeatureSet mean_only();
    static FeatureSet mean_std();
    static FeatureSet all();
    // parses "mean,std,range,median,kurtosis" or the shorthand "all"
    static FeatureSet parse(const std::string& spec);

    bool contains(BinFeature f) const;
    std::string name() const; // "mean", "mean_std", "all" or a comma list
};

struct BinConfig {
    std::size_t size = 0; // consecutive aligned samples per bin
    FeatureSet features;
};

// Resamples every channel onto the gyro-rate grid. The rpm value at grid
// time t is the most recent rpm sample with timestamp <= t; grid rows
// before the first rpm sample are dropped. plateau_index comes from the
// recording's schedule.
AlignedTable forward_fill_align(const RawRecording& rec);

// Drops all rows with plateau_index == 0 (ramps and the zero-speed
// hold); order preserved. Throws if nothing remains.
AlignedTable remove_ascends(const AlignedTable& table);

// Gyro columns as features, rpm as target, provenance = row index.
Dataset table_to_dataset(const AlignedTable& table);

// Stride decimation: keeps rows 0, k, 2k, ... with k = round(1/fraction),
// clamped to >= 1. fraction must be in (0, 1].
Dataset downsample(const Dataset& ds, double fraction);

// Consecutive non-overlapping windows of cfg.size rows; the trailing
// incomplete window is dropped. One output column per (gyro column,
// feature) named "<channel>_<feature>"; bin target = mean rpm;
// provenance = bin ordinal.
Dataset bin(const AlignedTable& table, const BinConfig& cfg);

} // namespace fanwatch

#endif
