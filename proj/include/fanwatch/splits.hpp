// Train/test partitions: the shuffled 67/33 split and the
// rpm-step-partitioned split.

#ifndef FANWATCH_SPLITS_HPP
#define FANWATCH_SPLITS_HPP

#include <cstdint>
#include <functional>
#include <set>

#include "fanwatch/types.hpp"

namespace fanwatch {

struct PartitionPlan {
    std::set<int> train_steps = {1, 3, 5, 7};
    std::set<int> test_steps = {2, 4, 6};
    std::set<int> excluded_steps = {8};
};

// Seeded uniform permutation; first floor(ratio*n) rows train, rest test.
SplitPair shuffled_split(const Dataset& ds, double ratio, std::uint64_t seed);

// Applies `reduce` per contiguous plateau segment (so bins never straddle
// plateaus), then groups the reduced rows by plan membership. Provenance
// is offset per segment to stay globally unique: by the segment's start
// row for row-preserving pipelines, by the running bin count otherwise.
using SegmentReducer = std::function<Dataset(const AlignedTable&)>;
SplitPair partitioned_split(const AlignedTable& table, const PartitionPlan& plan,
                            const SegmentReducer& reduce);

} // namespace fanwatch

#endif
