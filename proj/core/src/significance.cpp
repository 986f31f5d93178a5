#include "ordeval/significance.hpp"

#include <algorithm>
#include <cmath>

#include "ordeval/rng.hpp"

namespace ordeval {
namespace {

// Accumulates the null distribution of one factor across resamples.
struct CellSamples {
    std::vector<double> values;
    std::size_t undefined = 0;

    void add(const Tally& t) {
        if (t.defined())
            values.push_back(t.ratio());
        else
            undefined += 1;
    }
};

CellSignificance summarize(CellSamples& samples, const Tally& observed,
                           int resamples, double alpha) {
    CellSignificance cell;
    cell.undefined_count = samples.undefined;
    if (2 * samples.undefined >= static_cast<std::size_t>(resamples)) return cell;

    std::sort(samples.values.begin(), samples.values.end());
    ConfidenceBox box;
    box.whisker_low = nearest_rank(samples.values, alpha / 2.0);
    box.q1 = nearest_rank(samples.values, 0.25);
    box.median = nearest_rank(samples.values, 0.5);
    box.q3 = nearest_rank(samples.values, 0.75);
    box.whisker_high = nearest_rank(samples.values, 1.0 - alpha / 2.0);
    cell.significant = observed.defined() && observed.ratio() > box.whisker_high;
    cell.box = box;
    return cell;
}

}  // namespace

double nearest_rank(const std::vector<double>& sorted, double p) {
    const std::size_t m = sorted.size();
    auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(m)));
    if (rank < 1) rank = 1;
    if (rank > m) rank = m;
    return sorted[rank - 1];
}

std::vector<AttributeSignificance> estimate_significance(
    const OrdinalDataset& labeled, const NeighborTable& table,
    const std::vector<AttributeProfile>& observed,
    const SignificanceParams& params) {
    if (params.resamples < 1) throw InvalidSpec("resamples must be at least 1");
    if (!(params.alpha > 0.0 && params.alpha < 1.0))
        throw InvalidSpec("alpha must lie in (0, 1)");
    if (observed.size() != labeled.n_attributes())
        throw MismatchedShapes("observed profiles must match attribute count");

    const std::size_t a_count = observed.size();
    std::vector<std::vector<CellSamples>> up(a_count), down(a_count);
    std::vector<CellSamples> up_agg(a_count), down_agg(a_count);
    for (std::size_t a = 0; a < a_count; ++a) {
        up[a].resize(observed[a].up.size());
        down[a].resize(observed[a].down.size());
    }

    std::vector<CellValue> permuted;
    for (int b = 0; b < params.resamples; ++b) {
        auto eng = rng::make_engine(params.seed, static_cast<std::uint64_t>(b));
        permuted = labeled.responses;
        rng::shuffle(permuted, eng);
        auto null_profiles = tally_profiles(labeled, table, permuted);
        for (std::size_t a = 0; a < a_count; ++a) {
            const AttributeProfile& p = null_profiles[a];
            for (std::size_t s = 0; s < p.up.size(); ++s) up[a][s].add(p.up[s]);
            for (std::size_t s = 0; s < p.down.size(); ++s) down[a][s].add(p.down[s]);
            up_agg[a].add(p.up_aggregate);
            down_agg[a].add(p.down_aggregate);
        }
    }

    std::vector<AttributeSignificance> result(a_count);
    for (std::size_t a = 0; a < a_count; ++a) {
        const AttributeProfile& obs = observed[a];
        AttributeSignificance& sig = result[a];
        sig.name = obs.name;
        sig.up.reserve(obs.up.size());
        sig.down.reserve(obs.down.size());
        for (std::size_t s = 0; s < obs.up.size(); ++s)
            sig.up.push_back(
                summarize(up[a][s], obs.up[s], params.resamples, params.alpha));
        for (std::size_t s = 0; s < obs.down.size(); ++s)
            sig.down.push_back(
                summarize(down[a][s], obs.down[s], params.resamples, params.alpha));
        sig.up_aggregate = summarize(up_agg[a], obs.up_aggregate,
                                     params.resamples, params.alpha);
        sig.down_aggregate = summarize(down_agg[a], obs.down_aggregate,
                                       params.resamples, params.alpha);
    }
    return result;
}

}  // namespace ordeval
