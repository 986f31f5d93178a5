#include "ordeval/kano.hpp"

namespace ordeval {

std::string kano_label(KanoType type) {
    switch (type) {
        case KanoType::performance: return "performance";
        case KanoType::basic: return "basic";
        case KanoType::excitement: return "excitement";
        case KanoType::negligible: return "negligible";
    }
    return "negligible";
}

KanoType classify(const Tally& up_aggregate, const Tally& down_aggregate,
                  double tau) {
    const bool up_high = up_aggregate.defined() && up_aggregate.ratio() >= tau;
    const bool down_high =
        down_aggregate.defined() && down_aggregate.ratio() >= tau;
    if (up_high && down_high) return KanoType::performance;
    if (down_high) return KanoType::basic;
    if (up_high) return KanoType::excitement;
    return KanoType::negligible;
}

std::vector<KanoClassification> classify_attributes(
    const std::vector<AttributeProfile>& profiles, double tau) {
    std::vector<KanoClassification> result;
    result.reserve(profiles.size());
    for (const AttributeProfile& p : profiles) {
        KanoClassification c;
        c.name = p.name;
        c.type = classify(p.up_aggregate, p.down_aggregate, tau);
        c.up_aggregate = p.up_aggregate;
        c.down_aggregate = p.down_aggregate;
        result.push_back(std::move(c));
    }
    return result;
}

std::vector<ThresholdHit> detect_thresholds(
    const std::vector<AttributeProfile>& profiles,
    const std::vector<AttributeSignificance>& significance, double tau) {
    if (significance.size() != profiles.size())
        throw MismatchedShapes("significance must align with profiles");

    std::vector<ThresholdHit> hits;
    for (std::size_t a = 0; a < profiles.size(); ++a) {
        const AttributeProfile& p = profiles[a];
        const AttributeSignificance& sig = significance[a];
        if (sig.up.size() != p.up.size() || sig.down.size() != p.down.size())
            throw MismatchedShapes("significance must align with profiles");
        for (std::size_t s = 0; s < p.up.size(); ++s) {
            // Value order within an attribute, down before up at each value.
            auto consider = [&](const Tally& t, const CellSignificance& cs,
                                Direction dir) {
                const bool qualifies =
                    cs.significant || (t.defined() && t.ratio() >= tau);
                if (!qualifies) return;
                ThresholdHit hit;
                hit.attribute = p.name;
                hit.attribute_index = a;
                hit.value = p.scale.min + static_cast<int>(s);
                hit.direction = dir;
                hit.probability = t.defined() ? t.ratio() : 0.0;
                hit.pair_count = t.pairs;
                hit.significant = cs.significant;
                hits.push_back(std::move(hit));
            };
            consider(p.down[s], sig.down[s], Direction::down);
            consider(p.up[s], sig.up[s], Direction::up);
        }
    }
    return hits;
}

}  // namespace ordeval
