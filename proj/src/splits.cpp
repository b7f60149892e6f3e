#include "fanwatch/splits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fanwatch/rng.hpp"

namespace fanwatch {

namespace {

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& rows)
{
    Dataset out;
    out.column_names = ds.column_names;
    out.features.resize(ds.cols());
    out.target.reserve(rows.size());
    out.row_provenance.reserve(rows.size());
    for (std::size_t i : rows) {
        out.target.push_back(ds.target[i]);
        out.row_provenance.push_back(ds.row_provenance[i]);
    }
    for (std::size_t c = 0; c < ds.cols(); ++c) {
        out.features[c].reserve(rows.size());
        for (std::size_t i : rows)
            out.features[c].push_back(ds.features[c][i]);
    }
    return out;
}

AlignedTable slice(const AlignedTable& table, std::size_t lo, std::size_t hi)
{
    AlignedTable out;
    out.master_rate_hz = table.master_rate_hz;
    out.column_names = table.column_names;
    out.timestamps_s.assign(table.timestamps_s.begin() + lo, table.timestamps_s.begin() + hi);
    out.target.assign(table.target.begin() + lo, table.target.begin() + hi);
    out.plateau_index.assign(table.plateau_index.begin() + lo, table.plateau_index.begin() + hi);
    out.columns.resize(table.columns.size());
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out.columns[c].assign(table.columns[c].begin() + lo, table.columns[c].begin() + hi);
    return out;
}

void append(Dataset& into, const Dataset& ds, std::int64_t provenance_offset)
{
    if (into.column_names.empty()) {
        into.column_names = ds.column_names;
        into.features.resize(ds.cols());
    } else if (into.column_names != ds.column_names) {
        throw std::invalid_argument("segment column names disagree");
    }
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        into.target.push_back(ds.target[i]);
        into.row_provenance.push_back(ds.row_provenance[i] + provenance_offset);
    }
    for (std::size_t c = 0; c < ds.cols(); ++c)
        into.features[c].insert(into.features[c].end(), ds.features[c].begin(),
                                ds.features[c].end());
}

} // namespace

SplitPair shuffled_split(const Dataset& ds, double ratio, std::uint64_t seed)
{
    const std::size_t n = ds.rows();
    if (n < 3)
        throw std::invalid_argument("shuffled_split needs at least 3 rows");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw std::invalid_argument("split ratio must be in (0, 1)");
    const auto n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
    if (n_train == 0 || n_train == n)
        throw std::invalid_argument("split ratio leaves an empty partition");

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(substream_seed(seed, "shuffle", 0));
    rng.shuffle(perm);

    SplitPair out;
    out.train = take_rows(ds, {perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train)});
    out.test = take_rows(ds, {perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end()});
    return out;
}

SplitPair partitioned_split(const AlignedTable& table, const PartitionPlan& plan,
                            const SegmentReducer& reduce)
{
    if (plan.train_steps.empty() || plan.test_steps.empty())
        throw std::invalid_argument("partition plan has an empty side");
    for (const auto* steps : {&plan.train_steps, &plan.test_steps, &plan.excluded_steps})
        if (steps->count(0))
            throw std::invalid_argument("partition plan may not reference plateau 0");
    for (int s : plan.train_steps)
        if (plan.test_steps.count(s) || plan.excluded_steps.count(s))
            throw std::invalid_argument("partition plan sets overlap");
    for (int s : plan.test_steps)
        if (plan.excluded_steps.count(s))
            throw std::invalid_argument("partition plan sets overlap");

    std::set<int> present(table.plateau_index.begin(), table.plateau_index.end());
    for (const auto* steps : {&plan.train_steps, &plan.test_steps})
        for (int s : *steps)
            if (!present.count(s))
                throw std::invalid_argument("plateau " + std::to_string(s) +
                                            " absent from the table");

    SplitPair out;
    std::size_t i = 0;
    const std::size_t n = table.rows();
    while (i < n) {
        std::size_t j = i;
        const int step = table.plateau_index[i];
        while (j < n && table.plateau_index[j] == step)
            ++j;
        Dataset* side = nullptr;
        if (plan.train_steps.count(step))
            side = &out.train;
        else if (plan.test_steps.count(step))
            side = &out.test;
        if (side) {
            const Dataset reduced = reduce(slice(table, i, j));
            append(*side, reduced, static_cast<std::int64_t>(i));
        }
        i = j;
    }
    if (out.train.rows() == 0 || out.test.rows() == 0)
        throw std::invalid_argument("partitioned split produced an empty partition");
    return out;
}

} // namespace fanwatch
