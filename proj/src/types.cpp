#include "fanwatch/types.hpp"

#include <cmath>
#include <stdexcept>

namespace fanwatch {

const char* to_string(Impeller imp)
{
    return imp == Impeller::healthy ? "healthy" : "damaged";
}

const Channel& RawRecording::rpm() const
{
    for (const auto& c : channels)
        if (c.name == "rpm")
            return c;
    throw std::runtime_error("recording has no rpm channel");
}

std::vector<const Channel*> RawRecording::gyros() const
{
    std::vector<const Channel*> out;
    out.reserve(channels.size());
    for (const auto& c : channels)
        if (c.name != "rpm")
            out.push_back(&c);
    return out;
}

std::vector<double> Dataset::row(std::size_t r) const
{
    std::vector<double> out(cols());
    for (std::size_t c = 0; c < cols(); ++c)
        out[c] = features[c][r];
    return out;
}

ValidationResult validate(const AlignedTable& table)
{
    ValidationResult res;
    const std::size_t n = table.rows();

    if (table.target.size() != n)
        res.violations.push_back({"target length differs from timestamps", -1});
    if (table.plateau_index.size() != n)
        res.violations.push_back({"plateau_index length differs from timestamps", -1});
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        if (table.columns[c].size() != n)
            res.violations.push_back({"column '" + table.column_names[c] + "' length differs", -1});
    if (table.column_names.size() != table.columns.size())
        res.violations.push_back({"column_names length differs from columns", -1});
    if (table.master_rate_hz <= 0.0)
        res.violations.push_back({"master_rate_hz not positive", -1});

    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(table.timestamps_s[i]))
            res.violations.push_back({"non-finite timestamp", static_cast<std::int64_t>(i)});
        if (i < table.target.size() && !std::isfinite(table.target[i]))
            res.violations.push_back({"non-finite target", static_cast<std::int64_t>(i)});
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        for (std::size_t i = 0; i < table.columns[c].size(); ++i)
            if (!std::isfinite(table.columns[c][i]))
                res.violations.push_back(
                    {"non-finite value in '" + table.column_names[c] + "'", static_cast<std::int64_t>(i)});

    if (n >= 2 && table.master_rate_hz > 0.0) {
        const double dt = 1.0 / table.master_rate_hz;
        const double tol = 1e-6 * dt;
        for (std::size_t i = 1; i < n; ++i) {
            const double gap = table.timestamps_s[i] - table.timestamps_s[i - 1];
            if (gap <= 0.0) {
                res.violations.push_back({"non-monotone timestamps", static_cast<std::int64_t>(i)});
            } else if (std::fabs(gap - dt) > tol) {
                res.violations.push_back({"non-uniform timestamp spacing", static_cast<std::int64_t>(i)});
            }
        }
    }
    return res;
}

} // namespace fanwatch
