#include "fanwatch/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fanwatch::stats {

namespace {

void require_nonempty(std::span<const double> xs)
{
    if (xs.empty())
        throw std::invalid_argument("statistic of empty sequence");
}

} // namespace

double mean(std::span<const double> xs)
{
    require_nonempty(xs);
    double s = 0.0;
    for (double x : xs)
        s += x;
    return s / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs)
{
    require_nonempty(xs);
    if (xs.size() < 2)
        throw std::invalid_argument("sample_std needs at least 2 values");
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - m;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double range(std::span<const double> xs)
{
    require_nonempty(xs);
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return *hi - *lo;
}

double median(std::span<const double> xs)
{
    require_nonempty(xs);
    std::vector<double> tmp(xs.begin(), xs.end());
    const std::size_t n = tmp.size();
    const std::size_t mid = n / 2;
    std::nth_element(tmp.begin(), tmp.begin() + mid, tmp.end());
    double hi = tmp[mid];
    if (n % 2 == 1)
        return hi;
    double lo = *std::max_element(tmp.begin(), tmp.begin() + mid);
    return 0.5 * (lo + hi);
}

double excess_kurtosis(std::span<const double> xs)
{
    require_nonempty(xs);
    if (xs.size() < 2)
        throw std::invalid_argument("excess_kurtosis needs at least 2 values");
    const double m = mean(xs);
    const double n = static_cast<double>(xs.size());
    double m2 = 0.0;
    double m4 = 0.0;
    for (double x : xs) {
        const double d = x - m;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    if (m2 == 0.0)
        return 0.0;
    return m4 / (m2 * m2) - 3.0;
}

} // namespace fanwatch::stats
