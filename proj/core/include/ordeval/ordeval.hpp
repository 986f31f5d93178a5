#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ordeval/dataset.hpp"

namespace ordeval {

/// Paired-comparison tally behind one reinforcement factor. The factor is
/// undefined until at least one pair has been observed.
struct Tally {
    std::size_t pairs = 0;
    std::size_t successes = 0;

    bool defined() const { return pairs > 0; }
    double ratio() const {
        return static_cast<double>(successes) / static_cast<double>(pairs);
    }

    bool operator==(const Tally&) const = default;
};

/// Reinforcement factors of one attribute: `up[j - scale.min]` is the upward
/// factor at value j (probability the response improves among neighbors with
/// a higher attribute value), `down` the downward mirror. Aggregates pool
/// pairs across values, so they equal the pair-count-weighted mean.
struct AttributeProfile {
    std::string name;
    Scale scale;
    std::vector<Tally> up;
    std::vector<Tally> down;
    Tally up_aggregate;
    Tally down_aggregate;

    bool operator==(const AttributeProfile&) const = default;
};

/// Per labeled row, the indices of its k nearest labeled rows, ascending by
/// distance with ties broken by ascending row index.
using NeighborTable = std::vector<std::vector<std::size_t>>;

/// Mean over attributes of |v_i - v_j| / (scale.max - scale.min); a pair
/// with either value missing contributes 0.5. The response never enters,
/// which is what lets resampling reuse the neighbor table.
double distance(const OrdinalDataset& ds, std::size_t i, std::size_t j);

/// k is clamped to [1, n - 1]; throws TooFewRows when fewer than two rows.
NeighborTable build_neighbor_table(const OrdinalDataset& labeled, int k);

/// Tally reinforcement factors over (row, neighbor) pairs using the supplied
/// response column, which must align with `labeled.rows`. Passing a permuted
/// copy of the responses yields one resample of the null distribution.
std::vector<AttributeProfile> tally_profiles(const OrdinalDataset& labeled,
                                             const NeighborTable& table,
                                             const std::vector<CellValue>& responses);

struct OrdEvalResult {
    std::vector<AttributeProfile> attributes;
    int k_used = 0;
};

OrdEvalResult run_ordeval(const OrdinalDataset& labeled, int k);

}  // namespace ordeval
