#include "fanwatch/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fanwatch/rng.hpp"

namespace fanwatch {

namespace {

void check_params(const ForestParams& p)
{
    if (p.n_trees < 1)
        throw std::invalid_argument("n_trees must be >= 1");
    if (!(p.row_fraction > 0.0 && p.row_fraction <= 1.0))
        throw std::invalid_argument("row_fraction must be in (0, 1]");
    if (!(p.feature_fraction > 0.0 && p.feature_fraction <= 1.0))
        throw std::invalid_argument("feature_fraction must be in (0, 1]");
    if (p.min_leaf < 1)
        throw std::invalid_argument("min_leaf must be >= 1");
    if (p.max_depth < 0)
        throw std::invalid_argument("max_depth must be >= 0 (0 = unlimited)");
}

// Pre-sorted CART builder: one index array per feature, kept sorted by
// feature value and stably partitioned at each split, so per-node work
// is linear in the node size.
class TreeBuilder {
public:
    TreeBuilder(const Dataset& ds, const std::vector<std::uint32_t>& sample,
                const ForestParams& params, std::uint64_t rng_seed)
        : ds_(ds), params_(params), rng_(rng_seed)
    {
        const std::size_t p = ds.cols();
        const std::size_t m = sample.size();
        sorted_.resize(p);
        for (std::size_t f = 0; f < p; ++f) {
            sorted_[f] = sample;
            const auto& col = ds.features[f];
            std::stable_sort(sorted_[f].begin(), sorted_[f].end(),
                             [&col](std::uint32_t a, std::uint32_t b) { return col[a] < col[b]; });
        }
        scratch_.resize(m);
        n_subset_ = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(params.feature_fraction * static_cast<double>(p))));
        feature_pool_.resize(p);
        std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
    }

    RegressionTree build()
    {
        RegressionTree tree;
        grow(tree, 0, sorted_.front().size(), 0);
        return tree;
    }

private:
    struct Split {
        bool found = false;
        std::size_t feature = 0;
        double threshold = 0.0;
        double score = 0.0; // sum of S^2/n over children; larger is better
    };

    int grow(RegressionTree& tree, std::size_t lo, std::size_t hi, int depth)
    {
        const std::size_t n = hi - lo;
        double sum = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            sum += ds_.target[sorted_[0][i]];
        const double node_mean = sum / static_cast<double>(n);

        const int id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({});
        tree.nodes[id].value = node_mean;
        tree.nodes[id].count = static_cast<int>(n);

        if (n < 2 * static_cast<std::size_t>(params_.min_leaf))
            return id;
        if (params_.max_depth > 0 && depth >= params_.max_depth)
            return id;
        bool pure = true;
        const double first = ds_.target[sorted_[0][lo]];
        for (std::size_t i = lo + 1; i < hi && pure; ++i)
            pure = ds_.target[sorted_[0][i]] == first;
        if (pure)
            return id;

        const Split best = find_split(lo, hi, sum);
        if (!best.found)
            return id;

        const std::size_t mid = partition(lo, hi, best.feature, best.threshold);
        tree.nodes[id].feature = static_cast<int>(best.feature);
        tree.nodes[id].threshold = best.threshold;
        const int left = grow(tree, lo, mid, depth + 1);
        const int right = grow(tree, mid, hi, depth + 1);
        tree.nodes[id].left = left;
        tree.nodes[id].right = right;
        return id;
    }

    Split find_split(std::size_t lo, std::size_t hi, double total_sum)
    {
        const std::size_t n = hi - lo;
        const double parent_score = total_sum * total_sum / static_cast<double>(n);
        const std::size_t min_leaf = static_cast<std::size_t>(params_.min_leaf);

        // sample the feature subset, then evaluate in ascending order so
        // equal scores resolve to the lowest feature / smallest threshold
        std::vector<std::size_t> chosen;
        if (n_subset_ >= feature_pool_.size()) {
            chosen = feature_pool_;
        } else {
            for (std::size_t i = 0; i < n_subset_; ++i) {
                const std::size_t j =
                    i + static_cast<std::size_t>(rng_.below(feature_pool_.size() - i));
                std::swap(feature_pool_[i], feature_pool_[j]);
            }
            chosen.assign(feature_pool_.begin(),
                          feature_pool_.begin() + static_cast<std::ptrdiff_t>(n_subset_));
            std::sort(chosen.begin(), chosen.end());
        }

        // scores of features that induce the same row bipartition are
        // mathematically equal but differ by summation order; require a
        // relative improvement so such quasi-ties resolve to the lowest
        // feature index instead of floating-point noise
        constexpr double kTieEps = 1e-10;
        Split best;
        best.score = parent_score;
        for (std::size_t f : chosen) {
            const auto& idx = sorted_[f];
            const auto& col = ds_.features[f];
            double left_sum = 0.0;
            for (std::size_t i = lo; i + 1 < hi; ++i) {
                left_sum += ds_.target[idx[i]];
                const double v = col[idx[i]];
                const double v_next = col[idx[i + 1]];
                if (v == v_next)
                    continue;
                const std::size_t n_left = i - lo + 1;
                const std::size_t n_right = n - n_left;
                if (n_left < min_leaf || n_right < min_leaf)
                    continue;
                const double right_sum = total_sum - left_sum;
                const double score = left_sum * left_sum / static_cast<double>(n_left) +
                                     right_sum * right_sum / static_cast<double>(n_right);
                if (score > best.score * (1.0 + kTieEps)) {
                    best.found = true;
                    best.feature = f;
                    best.threshold = v + 0.5 * (v_next - v);
                    best.score = score;
                }
            }
        }
        return best;
    }

    // stable partition of every per-feature index range by the split
    // predicate; returns the first right-side position
    std::size_t partition(std::size_t lo, std::size_t hi, std::size_t feature, double threshold)
    {
        const auto& col = ds_.features[feature];
        std::size_t mid = lo;
        for (std::size_t f = 0; f < sorted_.size(); ++f) {
            auto& idx = sorted_[f];
            std::size_t l = lo;
            std::size_t r = 0;
            for (std::size_t i = lo; i < hi; ++i) {
                if (col[idx[i]] <= threshold)
                    idx[l++] = idx[i];
                else
                    scratch_[r++] = idx[i];
            }
            std::copy(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(r),
                      idx.begin() + static_cast<std::ptrdiff_t>(l));
            mid = l;
        }
        return mid;
    }

    const Dataset& ds_;
    const ForestParams& params_;
    Rng rng_;
    std::vector<std::vector<std::uint32_t>> sorted_;
    std::vector<std::uint32_t> scratch_;
    std::vector<std::size_t> feature_pool_;
    std::size_t n_subset_ = 1;
};

} // namespace

double RegressionTree::predict_row(const std::vector<double>& row) const
{
    int id = 0;
    while (!nodes[static_cast<std::size_t>(id)].is_leaf()) {
        const TreeNode& node = nodes[static_cast<std::size_t>(id)];
        id = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
    return nodes[static_cast<std::size_t>(id)].value;
}

RegressionTree fit_tree(const Dataset& ds, const std::vector<std::uint32_t>& sample,
                        const ForestParams& params, std::uint64_t rng_seed)
{
    check_params(params);
    if (sample.empty() || ds.rows() == 0 || ds.cols() == 0)
        throw std::invalid_argument("fit_tree on empty input");
    if (sample.size() < static_cast<std::size_t>(params.min_leaf))
        throw std::invalid_argument("fit_tree needs at least min_leaf rows");
    TreeBuilder builder(ds, sample, params, rng_seed);
    return builder.build();
}

ForestModel fit_rf(const Dataset& ds, const ForestParams& params)
{
    check_params(params);
    if (ds.rows() == 0 || ds.cols() == 0)
        throw std::invalid_argument("fit_rf on empty dataset");

    const std::size_t n = ds.rows();
    const auto n_sample = static_cast<std::size_t>(
        std::ceil(params.row_fraction * static_cast<double>(n)));

    ForestModel model;
    model.params = params;
    model.column_names = ds.column_names;
    model.trees.reserve(static_cast<std::size_t>(params.n_trees));
    for (int t = 0; t < params.n_trees; ++t) {
        const std::uint64_t tree_seed =
            substream_seed(params.seed, "tree", static_cast<std::uint64_t>(t));
        Rng boot(tree_seed);
        std::vector<std::uint32_t> sample(n_sample);
        for (auto& s : sample)
            s = static_cast<std::uint32_t>(boot.below(n));
        // split randomness continues on the same substream, after the
        // bootstrap draws
        model.trees.push_back(fit_tree(ds, sample, params, boot.next_u64()));
    }
    return model;
}

std::vector<double> predict(const ForestModel& m, const Dataset& ds)
{
    if (ds.cols() != m.column_names.size() || ds.column_names != m.column_names)
        throw std::invalid_argument("feature columns do not match the model");
    std::vector<double> out(ds.rows(), 0.0);
    std::vector<double> row(ds.cols());
    for (std::size_t r = 0; r < ds.rows(); ++r) {
        for (std::size_t c = 0; c < ds.cols(); ++c)
            row[c] = ds.features[c][r];
        double s = 0.0;
        for (const auto& tree : m.trees)
            s += tree.predict_row(row);
        out[r] = s / static_cast<double>(m.trees.size());
    }
    return out;
}

} // namespace fanwatch
