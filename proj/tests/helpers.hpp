// Shared test fixtures and independent oracles. The oracles deliberately
// recompute results through a different route than the library code.

#ifndef FANWATCH_TESTS_HELPERS_HPP
#define FANWATCH_TESTS_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fanwatch/types.hpp"

namespace oracle {

// Brute-force moment statistics, straight from the formulas.
inline double mean(const std::vector<double>& xs)
{
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

inline double central_moment(const std::vector<double>& xs, int order)
{
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs)
        s += std::pow(x - m, order);
    return s / static_cast<double>(xs.size());
}

inline double sample_std(const std::vector<double>& xs)
{
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs)
        s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

inline double range(const std::vector<double>& xs)
{
    return *std::max_element(xs.begin(), xs.end()) -
           *std::min_element(xs.begin(), xs.end());
}

inline double median(std::vector<double> xs)
{
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

inline double excess_kurtosis(const std::vector<double>& xs)
{
    const double m2 = central_moment(xs, 2);
    if (m2 == 0.0)
        return 0.0;
    return central_moment(xs, 4) / (m2 * m2) - 3.0;
}

// Spearman rank correlation, via rank vectors.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b)
{
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> order(v.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&v](std::size_t x, std::size_t y) { return v[x] < v[y]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            r[order[i]] = static_cast<double>(i);
        return r;
    };
    const auto ra = ranks(a);
    const auto rb = ranks(b);
    const double ma = mean(ra);
    const double mb = mean(rb);
    double num = 0.0;
    double da = 0.0;
    double db = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - mb) * (rb[i] - mb);
    }
    return num / std::sqrt(da * db);
}

} // namespace oracle

namespace fixtures {

// Small hand-assembled dataset with the given column-major features.
inline fanwatch::Dataset make_dataset(std::vector<std::vector<double>> features,
                                      std::vector<double> target)
{
    fanwatch::Dataset ds;
    ds.features = std::move(features);
    ds.target = std::move(target);
    for (std::size_t c = 0; c < ds.features.size(); ++c)
        ds.column_names.push_back("f" + std::to_string(c));
    ds.row_provenance.resize(ds.target.size());
    std::iota(ds.row_provenance.begin(), ds.row_provenance.end(), std::int64_t{0});
    return ds;
}

// Uniform-grid table with one feature column per entry of `columns`.
inline fanwatch::AlignedTable make_table(std::vector<std::vector<double>> columns,
                                         std::vector<double> target,
                                         std::vector<int> plateau_index,
                                         double rate_hz = 1000.0)
{
    fanwatch::AlignedTable t;
    t.master_rate_hz = rate_hz;
    t.columns = std::move(columns);
    t.target = std::move(target);
    t.plateau_index = std::move(plateau_index);
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        t.column_names.push_back("g" + std::to_string(c));
    t.timestamps_s.resize(t.target.size());
    for (std::size_t i = 0; i < t.timestamps_s.size(); ++i)
        t.timestamps_s[i] = static_cast<double>(i) / rate_hz;
    return t;
}

} // namespace fixtures

#endif
