// Ordinary least squares with an intercept term.

#ifndef FANWATCH_LINREG_HPP
#define FANWATCH_LINREG_HPP

#include <string>
#include <vector>

#include "fanwatch/types.hpp"

namespace fanwatch {

struct LinearModel {
    std::vector<double> coefficients; // one per feature column
    double intercept = 0.0;
    std::vector<std::string> column_names;
};

// Minimizes the sum of squared residuals. Rank-deficient feature
// matrices get the minimum-norm solution (rank tolerance 1e-10 relative
// to the largest singular value). No feature standardization.
LinearModel fit_ols(const Dataset& ds);

std::vector<double> predict(const LinearModel& m, const Dataset& ds);

} // namespace fanwatch

#endif
