// Random forest regression: bagged variance-reduction regression trees
// with per-split random feature subsets.

#ifndef FANWATCH_FOREST_HPP
#define FANWATCH_FOREST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fanwatch/types.hpp"

namespace fanwatch {

struct ForestParams {
    int n_trees = 50;
    double row_fraction = 1.0;      // bootstrap fraction, sampled with replacement
    double feature_fraction = 0.33; // per-split subset, at least 1 feature
    int min_leaf = 1;
    int max_depth = 0; // 0 = unlimited
    std::uint64_t seed = 0;
};

// Flat arena; feature < 0 marks a leaf. Routing rule: value <= threshold
// goes left.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0; // leaf mean
    int count = 0;      // rows that reached the node during fitting

    bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
    std::vector<TreeNode> nodes;

    double predict_row(const std::vector<double>& row) const;
};

struct ForestModel {
    std::vector<RegressionTree> trees;
    ForestParams params;
    std::vector<std::string> column_names;
};

// CART: greedily minimizes the sum of child squared deviations over
// midpoint thresholds between consecutive distinct values, evaluating a
// random ceil(feature_fraction * p) feature subset per node. Ties break
// to the lowest feature index, then the smallest threshold.
// `sample` lists the (possibly repeated) dataset rows the tree trains on.
RegressionTree fit_tree(const Dataset& ds, const std::vector<std::uint32_t>& sample,
                        const ForestParams& params, std::uint64_t rng_seed);

// Pure function of (ds, params); tree t draws its bootstrap sample and
// split randomness from a substream keyed by (params.seed, t).
ForestModel fit_rf(const Dataset& ds, const ForestParams& params);

std::vector<double> predict(const ForestModel& m, const Dataset& ds);

} // namespace fanwatch

#endif
