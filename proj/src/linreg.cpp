#include "fanwatch/linreg.hpp"

#include <stdexcept>

#include <Eigen/Dense>

namespace fanwatch {

LinearModel fit_ols(const Dataset& ds)
{
    const std::size_t n = ds.rows();
    const std::size_t p = ds.cols();
    if (n == 0)
        throw std::invalid_argument("fit_ols on empty dataset");

    Eigen::MatrixXd x(n, p);
    Eigen::VectorXd y(n);
    for (std::size_t c = 0; c < p; ++c)
        for (std::size_t r = 0; r < n; ++r)
            x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = ds.features[c][r];
    for (std::size_t r = 0; r < n; ++r)
        y(static_cast<Eigen::Index>(r)) = ds.target[r];

    // Center, solve min-norm for the slopes, recover the intercept.
    // Centering keeps the minimum-norm property on the slopes alone, so
    // a constant target yields all-zero coefficients.
    const Eigen::RowVectorXd x_mean = x.colwise().mean();
    const double y_mean = y.mean();
    x.rowwise() -= x_mean;
    y.array() -= y_mean;

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(x);
    cod.setThreshold(1e-10);
    const Eigen::VectorXd w = cod.solve(y);

    LinearModel m;
    m.column_names = ds.column_names;
    m.coefficients.assign(w.data(), w.data() + w.size());
    m.intercept = y_mean - x_mean.dot(w);
    return m;
}

std::vector<double> predict(const LinearModel& m, const Dataset& ds)
{
    if (ds.cols() != m.coefficients.size() || ds.column_names != m.column_names)
        throw std::invalid_argument("feature columns do not match the model");
    std::vector<double> out(ds.rows(), m.intercept);
    for (std::size_t c = 0; c < ds.cols(); ++c) {
        const double w = m.coefficients[c];
        const auto& col = ds.features[c];
        for (std::size_t r = 0; r < out.size(); ++r)
            out[r] += w * col[r];
    }
    return out;
}

} // namespace fanwatch
