// Descriptive statistics used as bin features.

#ifndef FANWATCH_STATS_HPP
#define FANWATCH_STATS_HPP

#include <span>

namespace fanwatch::stats {

// All functions require a non-empty input; sample_std and excess_kurtosis
// additionally require length >= 2. Violations throw std::invalid_argument.

double mean(std::span<const double> xs);

// sample standard deviation, divisor n-1
double sample_std(std::span<const double> xs);

// max - min
double range(std::span<const double> xs);

// middle element for odd n, mean of the two middle elements for even n
double median(std::span<const double> xs);

// excess kurtosis g2 = m4/m2^2 - 3 with central moments over divisor n.
// A zero-variance sequence yields 0 by convention.
double excess_kurtosis(std::span<const double> xs);

} // namespace fanwatch::stats

#endif
