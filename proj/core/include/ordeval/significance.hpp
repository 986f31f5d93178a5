#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordeval/ordeval.hpp"

namespace ordeval {

/// Box-whisker summary of a factor's permutation null distribution.
/// Invariant: whisker_low <= q1 <= median <= q3 <= whisker_high.
struct ConfidenceBox {
    double whisker_low = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double whisker_high = 0.0;

    bool operator==(const ConfidenceBox&) const = default;
};

struct CellSignificance {
    std::optional<ConfidenceBox> box;  // absent when the cell is unassessable
    std::size_t undefined_count = 0;   // resamples with no pairs for this cell
    bool significant = false;

    bool assessable() const { return box.has_value(); }
};

struct AttributeSignificance {
    std::string name;
    std::vector<CellSignificance> up;    // by value slot, as in AttributeProfile
    std::vector<CellSignificance> down;
    CellSignificance up_aggregate;
    CellSignificance down_aggregate;
};

struct SignificanceParams {
    int resamples = 200;  // permutations of the response column
    double alpha = 0.05;
    std::uint64_t seed = 0;
};

/// Nearest-rank percentile: the ceil(p * m)-th smallest sample (1-based,
/// clamped to at least 1). `sorted` must be ascending and non-empty.
double nearest_rank(const std::vector<double>& sorted, double p);

/// Permutation test of the observed factors. Each resample shuffles a copy
/// of the response column with its own seeded engine and retallies against
/// the unchanged neighbor table. A cell is unassessable when its factor was
/// undefined in at least half of the resamples; such cells get no box and
/// are never significant. Otherwise a factor is significant when it is
/// defined and strictly exceeds the alpha/2 upper whisker of its null box.
std::vector<AttributeSignificance> estimate_significance(
    const OrdinalDataset& labeled, const NeighborTable& table,
    const std::vector<AttributeProfile>& observed,
    const SignificanceParams& params);

}  // namespace ordeval
