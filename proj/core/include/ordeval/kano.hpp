#pragma once

#include <string>
#include <vector>

#include "ordeval/significance.hpp"

namespace ordeval {

enum class KanoType { performance, basic, excitement, negligible };

std::string kano_label(KanoType type);

inline constexpr double kDefaultTau = 0.6;

/// Aggregate-factor rule: both factors at or above tau means performance,
/// downward only means basic, upward only means excitement, neither means
/// negligible. An undefined aggregate counts as below tau.
KanoType classify(const Tally& up_aggregate, const Tally& down_aggregate,
                  double tau = kDefaultTau);

struct KanoClassification {
    std::string name;
    KanoType type = KanoType::negligible;
    Tally up_aggregate;
    Tally down_aggregate;
};

std::vector<KanoClassification> classify_attributes(
    const std::vector<AttributeProfile>& profiles, double tau = kDefaultTau);

enum class Direction { down, up };

/// A value-level cell worth acting on: either statistically significant or
/// carrying a defined factor of at least tau.
struct ThresholdHit {
    std::string attribute;
    std::size_t attribute_index = 0;
    int value = 0;
    Direction direction = Direction::down;
    double probability = 0.0;
    std::size_t pair_count = 0;
    bool significant = false;
};

/// Each qualifying cell appears once, ordered by attribute index, then
/// value, then direction with down before up. `significance` must align
/// with `profiles`.
std::vector<ThresholdHit> detect_thresholds(
    const std::vector<AttributeProfile>& profiles,
    const std::vector<AttributeSignificance>& significance,
    double tau = kDefaultTau);

}  // namespace ordeval
