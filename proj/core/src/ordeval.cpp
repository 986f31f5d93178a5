#include "ordeval/ordeval.hpp"

#include <algorithm>
#include <cmath>

namespace ordeval {

double distance(const OrdinalDataset& ds, std::size_t i, std::size_t j) {
    double sum = 0.0;
    const std::size_t a_count = ds.n_attributes();
    for (std::size_t a = 0; a < a_count; ++a) {
        const CellValue& vi = ds.rows[i][a];
        const CellValue& vj = ds.rows[j][a];
        if (!vi || !vj) {
            sum += 0.5;
            continue;
        }
        int span = ds.scales[a].max - ds.scales[a].min;
        if (span > 0) sum += std::abs(*vi - *vj) / static_cast<double>(span);
    }
    return sum / static_cast<double>(a_count);
}

NeighborTable build_neighbor_table(const OrdinalDataset& labeled, int k) {
    const std::size_t n = labeled.n_rows();
    if (n < 2) throw TooFewRows("need at least two rows to find neighbors");
    const std::size_t kk = static_cast<std::size_t>(
        std::clamp<long long>(k, 1, static_cast<long long>(n) - 1));

    NeighborTable table(n);
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(n - 1);
    for (std::size_t r = 0; r < n; ++r) {
        order.clear();
        for (std::size_t h = 0; h < n; ++h) {
            if (h == r) continue;
            order.emplace_back(distance(labeled, r, h), h);
        }
        std::sort(order.begin(), order.end());
        table[r].reserve(kk);
        for (std::size_t i = 0; i < kk; ++i) table[r].push_back(order[i].second);
    }
    return table;
}

std::vector<AttributeProfile> tally_profiles(const OrdinalDataset& labeled,
                                             const NeighborTable& table,
                                             const std::vector<CellValue>& responses) {
    if (responses.size() != labeled.n_rows() || table.size() != labeled.n_rows())
        throw MismatchedShapes("responses and neighbor table must match row count");

    std::vector<AttributeProfile> profiles;
    profiles.reserve(labeled.n_attributes());
    for (std::size_t a = 0; a < labeled.n_attributes(); ++a) {
        AttributeProfile p;
        p.name = labeled.attribute_names[a];
        p.scale = labeled.scales[a];
        p.up.assign(p.scale.size(), Tally{});
        p.down.assign(p.scale.size(), Tally{});
        profiles.push_back(std::move(p));
    }

    for (std::size_t r = 0; r < labeled.n_rows(); ++r) {
        if (!responses[r]) continue;
        const int cr = *responses[r];
        for (std::size_t h : table[r]) {
            if (!responses[h]) continue;
            const int ch = *responses[h];
            for (std::size_t a = 0; a < labeled.n_attributes(); ++a) {
                const CellValue& vr = labeled.rows[r][a];
                const CellValue& vh = labeled.rows[h][a];
                if (!vr || !vh) continue;
                AttributeProfile& p = profiles[a];
                const std::size_t slot = static_cast<std::size_t>(*vr - p.scale.min);
                if (*vh > *vr) {
                    p.up[slot].pairs += 1;
                    if (ch > cr) p.up[slot].successes += 1;
                } else if (*vh < *vr) {
                    p.down[slot].pairs += 1;
                    if (ch < cr) p.down[slot].successes += 1;
                }
            }
        }
    }

    for (AttributeProfile& p : profiles) {
        for (const Tally& t : p.up) {
            p.up_aggregate.pairs += t.pairs;
            p.up_aggregate.successes += t.successes;
        }
        for (const Tally& t : p.down) {
            p.down_aggregate.pairs += t.pairs;
            p.down_aggregate.successes += t.successes;
        }
    }
    return profiles;
}

OrdEvalResult run_ordeval(const OrdinalDataset& labeled, int k) {
    OrdEvalResult result;
    NeighborTable table = build_neighbor_table(labeled, k);
    result.k_used = static_cast<int>(table.front().size());
    result.attributes = tally_profiles(labeled, table, labeled.responses);
    return result;
}

}  // namespace ordeval
