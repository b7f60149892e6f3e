#include "fanwatch/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fanwatch/stats.hpp"
#include "fanwatch/synthgen.hpp"

namespace fanwatch {

const char* to_string(BinFeature f)
{
    switch (f) {
    case BinFeature::mean: return "mean";
    case BinFeature::std_dev: return "std";
    case BinFeature::range: return "range";
    case BinFeature::median: return "median";
    case BinFeature::kurtosis: return "kurtosis";
    }
    return "?";
}

namespace {

constexpr BinFeature kCanonicalOrder[] = {BinFeature::mean, BinFeature::std_dev,
                                          BinFeature::range, BinFeature::median,
                                          BinFeature::kurtosis};

BinFeature parse_feature(const std::string& tok)
{
    for (BinFeature f : kCanonicalOrder)
        if (tok == to_string(f))
            return f;
    throw std::invalid_argument("unknown bin feature '" + tok + "'");
}

} // namespace

FeatureSet FeatureSet::mean_only() { return {{BinFeature::mean}}; }
FeatureSet FeatureSet::mean_std() { return {{BinFeature::mean, BinFeature::std_dev}}; }
FeatureSet FeatureSet::all()
{
    return {{kCanonicalOrder, kCanonicalOrder + 5}};
}

FeatureSet FeatureSet::parse(const std::string& spec)
{
    if (spec == "all")
        return all();
    std::vector<bool> selected(5, false);
    std::stringstream ss(spec);
    std::string tok;
    bool any = false;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty())
            continue;
        selected[static_cast<std::size_t>(parse_feature(tok))] = true;
        any = true;
    }
    if (!any)
        throw std::invalid_argument("empty feature set");
    FeatureSet fs;
    for (BinFeature f : kCanonicalOrder)
        if (selected[static_cast<std::size_t>(f)])
            fs.features.push_back(f);
    return fs;
}

bool FeatureSet::contains(BinFeature f) const
{
    return std::find(features.begin(), features.end(), f) != features.end();
}

std::string FeatureSet::name() const
{
    if (features.size() == 5)
        return "all";
    if (features.size() == 1 && features[0] == BinFeature::mean)
        return "mean";
    if (features.size() == 2 && features[0] == BinFeature::mean &&
        features[1] == BinFeature::std_dev)
        return "mean_std";
    std::string out;
    for (BinFeature f : features) {
        if (!out.empty())
            out += ',';
        out += to_string(f);
    }
    return out;
}

AlignedTable forward_fill_align(const RawRecording& rec)
{
    const Channel& rpm = rec.rpm();
    if (rpm.samples.empty())
        throw std::invalid_argument("rpm channel is empty");
    const auto gyros = rec.gyros();
    if (gyros.empty())
        throw std::invalid_argument("recording has no gyro channels");
    const double rate = gyros.front()->rate_hz;
    const std::size_t n = gyros.front()->samples.size();
    for (const Channel* g : gyros)
        if (g->rate_hz != rate || g->samples.size() != n)
            throw std::invalid_argument("gyro channels disagree in rate or length");

    AlignedTable table;
    table.master_rate_hz = rate;
    table.column_names.reserve(gyros.size());
    for (const Channel* g : gyros)
        table.column_names.push_back(g->name);

    // skip grid rows before the first rpm sample
    std::size_t first = 0;
    const double t_first_rpm = rpm.timestamp(0);
    while (first < n && gyros.front()->timestamp(first) < t_first_rpm)
        ++first;
    if (first >= n)
        throw std::invalid_argument("no grid rows at or after the first rpm sample");

    const std::size_t rows = n - first;
    table.timestamps_s.resize(rows);
    table.target.resize(rows);
    table.plateau_index.resize(rows);
    table.columns.resize(gyros.size());
    for (auto& col : table.columns)
        col.resize(rows);

    std::size_t j = 0; // last rpm sample with timestamp <= t
    for (std::size_t i = 0; i < rows; ++i) {
        const double t = gyros.front()->timestamp(first + i);
        while (j + 1 < rpm.samples.size() && rpm.timestamp(j + 1) <= t)
            ++j;
        table.timestamps_s[i] = t;
        table.target[i] = rpm.samples[j];
        table.plateau_index[i] = plateau_at(t, rec.schedule);
        for (std::size_t c = 0; c < gyros.size(); ++c)
            table.columns[c][i] = gyros[c]->samples[first + i];
    }
    return table;
}

AlignedTable remove_ascends(const AlignedTable& table)
{
    std::vector<std::size_t> keep;
    keep.reserve(table.rows());
    for (std::size_t i = 0; i < table.rows(); ++i)
        if (table.plateau_index[i] != 0)
            keep.push_back(i);
    if (keep.empty())
        throw std::invalid_argument("ascend removal left no rows");

    AlignedTable out;
    out.master_rate_hz = table.master_rate_hz;
    out.column_names = table.column_names;
    out.timestamps_s.reserve(keep.size());
    out.target.reserve(keep.size());
    out.plateau_index.reserve(keep.size());
    out.columns.resize(table.columns.size());
    for (std::size_t i : keep) {
        out.timestamps_s.push_back(table.timestamps_s[i]);
        out.target.push_back(table.target[i]);
        out.plateau_index.push_back(table.plateau_index[i]);
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out.columns[c].reserve(keep.size());
        for (std::size_t i : keep)
            out.columns[c].push_back(table.columns[c][i]);
    }
    return out;
}

Dataset table_to_dataset(const AlignedTable& table)
{
    Dataset ds;
    ds.column_names = table.column_names;
    ds.features = table.columns;
    ds.target = table.target;
    ds.row_provenance.resize(table.rows());
    for (std::size_t i = 0; i < table.rows(); ++i)
        ds.row_provenance[i] = static_cast<std::int64_t>(i);
    return ds;
}

Dataset downsample(const Dataset& ds, double fraction)
{
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("downsample fraction must be in (0, 1]");
    if (ds.rows() == 0)
        throw std::invalid_argument("downsample of empty dataset");
    const auto stride = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(1.0 / fraction)));

    Dataset out;
    out.column_names = ds.column_names;
    out.features.resize(ds.cols());
    for (std::size_t i = 0; i < ds.rows(); i += stride) {
        out.target.push_back(ds.target[i]);
        out.row_provenance.push_back(ds.row_provenance[i]);
        for (std::size_t c = 0; c < ds.cols(); ++c)
            out.features[c].push_back(ds.features[c][i]);
    }
    return out;
}

Dataset bin(const AlignedTable& table, const BinConfig& cfg)
{
    if (cfg.size == 0)
        throw std::invalid_argument("bin size must be positive");
    if (cfg.features.features.empty())
        throw std::invalid_argument("empty feature set");
    if (cfg.size < 2 &&
        (cfg.features.contains(BinFeature::std_dev) || cfg.features.contains(BinFeature::kurtosis)))
        throw std::invalid_argument("std/kurtosis features need bin size >= 2");
    const std::size_t n_bins = table.rows() / cfg.size;
    if (n_bins == 0)
        throw std::invalid_argument("table shorter than one bin");

    Dataset out;
    for (const auto& ch : table.column_names)
        for (BinFeature f : cfg.features.features)
            out.column_names.push_back(ch + "_" + to_string(f));
    out.features.assign(out.column_names.size(), {});
    for (auto& col : out.features)
        col.reserve(n_bins);
    out.target.reserve(n_bins);
    out.row_provenance.reserve(n_bins);

    for (std::size_t b = 0; b < n_bins; ++b) {
        const std::size_t lo = b * cfg.size;
        std::size_t out_col = 0;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            const std::span<const double> window(table.columns[c].data() + lo, cfg.size);
            for (BinFeature f : cfg.features.features) {
                double v = 0.0;
                switch (f) {
                case BinFeature::mean: v = stats::mean(window); break;
                case BinFeature::std_dev: v = stats::sample_std(window); break;
                case BinFeature::range: v = stats::range(window); break;
                case BinFeature::median: v = stats::median(window); break;
                case BinFeature::kurtosis: v = stats::excess_kurtosis(window); break;
                }
                out.features[out_col++].push_back(v);
            }
        }
        out.target.push_back(
            stats::mean(std::span<const double>(table.target.data() + lo, cfg.size)));
        out.row_provenance.push_back(static_cast<std::int64_t>(b));
    }
    return out;
}

} // namespace fanwatch
