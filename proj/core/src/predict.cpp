#include "ordeval/predict.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "ordeval/rng.hpp"

namespace ordeval {
namespace {

// Gains below this are floating-point residue of a zero-gain split.
constexpr double kGainEpsilon = 1e-12;

std::vector<std::size_t> labeled_indices(const OrdinalDataset& ds) {
    std::vector<std::size_t> idx;
    for (std::size_t r = 0; r < ds.n_rows(); ++r)
        if (ds.responses[r]) idx.push_back(r);
    return idx;
}

double entropy(const std::vector<std::size_t>& counts, std::size_t total) {
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

// Natural ascending order for row ids: numeric when both are digit strings.
bool row_id_less(const std::string& a, const std::string& b) {
    auto digits = [](const std::string& s) {
        return !s.empty() &&
               std::all_of(s.begin(), s.end(),
                           [](unsigned char c) { return c >= '0' && c <= '9'; });
    };
    if (digits(a) && digits(b)) {
        std::string_view sa = a, sb = b;
        while (sa.size() > 1 && sa.front() == '0') sa.remove_prefix(1);
        while (sb.size() > 1 && sb.front() == '0') sb.remove_prefix(1);
        if (sa.size() != sb.size()) return sa.size() < sb.size();
        if (sa != sb) return sa < sb;
    }
    return a < b;
}

}  // namespace

int argmax_low(const std::vector<double>& distribution, const Scale& response_scale) {
    std::size_t best = 0;
    for (std::size_t s = 1; s < distribution.size(); ++s)
        if (distribution[s] > distribution[best]) best = s;
    return response_scale.min + static_cast<int>(best);
}

NBModel train_naive_bayes(const OrdinalDataset& labeled) {
    auto idx = labeled_indices(labeled);
    if (idx.empty()) throw EmptyTrainingSet();

    NBModel model;
    model.response_scale = labeled.response_scale;
    model.attribute_scales = labeled.scales;
    const std::size_t n_classes = labeled.response_scale.size();
    const std::size_t n_attrs = labeled.n_attributes();

    std::vector<std::size_t> class_count(n_classes, 0);
    // value_count[a][c][v], present[a][c]: rows missing attribute a are
    // excluded from attribute a's counts only.
    std::vector<std::vector<std::vector<std::size_t>>> value_count(n_attrs);
    std::vector<std::vector<std::size_t>> present(n_attrs);
    for (std::size_t a = 0; a < n_attrs; ++a) {
        value_count[a].assign(n_classes,
                              std::vector<std::size_t>(labeled.scales[a].size(), 0));
        present[a].assign(n_classes, 0);
    }

    for (std::size_t r : idx) {
        const std::size_t c =
            static_cast<std::size_t>(*labeled.responses[r] - model.response_scale.min);
        class_count[c] += 1;
        for (std::size_t a = 0; a < n_attrs; ++a) {
            const CellValue& v = labeled.rows[r][a];
            if (!v) continue;
            present[a][c] += 1;
            value_count[a][c][*v - labeled.scales[a].min] += 1;
        }
    }

    model.priors.resize(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c)
        model.priors[c] = static_cast<double>(class_count[c] + 1) /
                          static_cast<double>(idx.size() + n_classes);

    model.conditionals.resize(n_attrs);
    for (std::size_t a = 0; a < n_attrs; ++a) {
        const std::size_t n_values = labeled.scales[a].size();
        model.conditionals[a].assign(n_classes, std::vector<double>(n_values));
        for (std::size_t c = 0; c < n_classes; ++c)
            for (std::size_t v = 0; v < n_values; ++v)
                model.conditionals[a][c][v] =
                    static_cast<double>(value_count[a][c][v] + 1) /
                    static_cast<double>(present[a][c] + n_values);
    }
    return model;
}

Prediction predict_nb(const NBModel& model, const Row& row) {
    const std::size_t n_classes = model.priors.size();
    std::vector<double> log_score(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) log_score[c] = std::log(model.priors[c]);
    for (std::size_t a = 0; a < row.size(); ++a) {
        const CellValue& v = row[a];
        if (!v || !model.attribute_scales[a].contains(*v)) continue;
        const std::size_t slot = static_cast<std::size_t>(*v - model.attribute_scales[a].min);
        for (std::size_t c = 0; c < n_classes; ++c)
            log_score[c] += std::log(model.conditionals[a][c][slot]);
    }

    const double peak = *std::max_element(log_score.begin(), log_score.end());
    Prediction out;
    out.distribution.resize(n_classes);
    double total = 0.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
        out.distribution[c] = std::exp(log_score[c] - peak);
        total += out.distribution[c];
    }
    for (double& p : out.distribution) p /= total;
    out.value = argmax_low(out.distribution, model.response_scale);
    return out;
}

namespace {

struct TreeBuilder {
    const OrdinalDataset& ds;
    const TreeParams& params;
    std::vector<TreeNode>& nodes;

    std::size_t leaf(const std::vector<std::size_t>& rows) {
        TreeNode node;
        node.n_rows = rows.size();
        std::vector<std::size_t> counts(ds.response_scale.size(), 0);
        for (std::size_t r : rows)
            counts[*ds.responses[r] - ds.response_scale.min] += 1;
        node.distribution.resize(counts.size());
        for (std::size_t c = 0; c < counts.size(); ++c)
            node.distribution[c] =
                static_cast<double>(counts[c]) / static_cast<double>(rows.size());
        nodes.push_back(std::move(node));
        return nodes.size() - 1;
    }

    std::size_t build(const std::vector<std::size_t>& rows,
                      std::vector<bool>& used, int depth) {
        std::vector<std::size_t> counts(ds.response_scale.size(), 0);
        for (std::size_t r : rows)
            counts[*ds.responses[r] - ds.response_scale.min] += 1;
        const bool pure =
            std::count_if(counts.begin(), counts.end(),
                          [](std::size_t c) { return c > 0; }) <= 1;
        if (pure || (params.max_depth >= 0 && depth >= params.max_depth))
            return leaf(rows);

        int best_attr = -1;
        double best_ratio = 0.0;
        std::vector<std::vector<std::size_t>> best_groups;
        std::size_t best_heaviest = 0;

        for (std::size_t a = 0; a < ds.n_attributes(); ++a) {
            if (used[a]) continue;
            const Scale& scale = ds.scales[a];
            std::vector<std::vector<std::size_t>> groups(scale.size());
            std::vector<std::size_t> missing;
            for (std::size_t r : rows) {
                const CellValue& v = ds.rows[r][a];
                if (v)
                    groups[*v - scale.min].push_back(r);
                else
                    missing.push_back(r);
            }
            std::size_t present = rows.size() - missing.size();
            if (present == 0) continue;

            // Gain over rows with the attribute present.
            std::vector<std::size_t> parent_counts(counts.size(), 0);
            double child_term = 0.0;
            for (const auto& g : groups) {
                if (g.empty()) continue;
                std::vector<std::size_t> gc(counts.size(), 0);
                for (std::size_t r : g) {
                    std::size_t c = *ds.responses[r] - ds.response_scale.min;
                    gc[c] += 1;
                    parent_counts[c] += 1;
                }
                child_term += static_cast<double>(g.size()) /
                              static_cast<double>(present) * entropy(gc, g.size());
            }
            double gain = entropy(parent_counts, present) - child_term;
            if (gain <= kGainEpsilon) continue;
            double split_info = 0.0;
            for (const auto& g : groups) {
                if (g.empty()) continue;
                double p = static_cast<double>(g.size()) / static_cast<double>(present);
                split_info -= p * std::log2(p);
            }
            if (split_info <= 0.0) continue;

            // Heaviest child by present rows, ties to the lower value; rows
            // missing the attribute train inside it.
            std::size_t heaviest = 0;
            for (std::size_t s = 1; s < groups.size(); ++s)
                if (groups[s].size() > groups[heaviest].size()) heaviest = s;
            for (std::size_t r : missing) groups[heaviest].push_back(r);

            std::size_t viable = 0;
            for (const auto& g : groups)
                if (g.size() >= static_cast<std::size_t>(params.min_leaf)) viable += 1;
            if (viable < 2) continue;

            double ratio = gain / split_info;
            if (best_attr < 0 || ratio > best_ratio) {
                best_attr = static_cast<int>(a);
                best_ratio = ratio;
                best_groups = std::move(groups);
                best_heaviest = heaviest;
            }
        }
        if (best_attr < 0) return leaf(rows);

        TreeNode node;
        node.split_attribute = best_attr;
        node.n_rows = rows.size();
        node.heaviest_slot = best_heaviest;
        node.children.assign(best_groups.size(), 0);
        used[best_attr] = true;
        std::vector<bool> filled(best_groups.size(), false);
        for (std::size_t s = 0; s < best_groups.size(); ++s) {
            if (best_groups[s].empty()) continue;
            node.children[s] = build(best_groups[s], used, depth + 1);
            filled[s] = true;
        }
        used[best_attr] = false;
        for (std::size_t s = 0; s < best_groups.size(); ++s)
            if (!filled[s]) node.children[s] = node.children[best_heaviest];
        nodes.push_back(std::move(node));
        return nodes.size() - 1;
    }
};

}  // namespace

TreeModel train_decision_tree(const OrdinalDataset& labeled, const TreeParams& params) {
    auto idx = labeled_indices(labeled);
    if (idx.empty()) throw EmptyTrainingSet();
    if (params.min_leaf < 1) throw InvalidSpec("min_leaf must be at least 1");

    TreeModel model;
    model.response_scale = labeled.response_scale;
    model.attribute_scales = labeled.scales;
    model.params = params;
    std::vector<bool> used(labeled.n_attributes(), false);
    TreeBuilder builder{labeled, params, model.nodes};
    model.root = builder.build(idx, used, 0);
    return model;
}

Prediction predict_tree(const TreeModel& model, const Row& row) {
    const TreeNode* node = &model.nodes[model.root];
    while (node->split_attribute >= 0) {
        const std::size_t a = static_cast<std::size_t>(node->split_attribute);
        const Scale& scale = model.attribute_scales[a];
        const CellValue& v = row[a];
        const std::size_t slot =
            (v && scale.contains(*v)) ? static_cast<std::size_t>(*v - scale.min)
                                      : node->heaviest_slot;
        node = &model.nodes[node->children[slot]];
    }
    Prediction out;
    out.distribution = node->distribution;
    out.value = argmax_low(out.distribution, model.response_scale);
    return out;
}

Learner nb_learner() {
    return [](const OrdinalDataset& train) -> Predictor {
        auto model = std::make_shared<NBModel>(train_naive_bayes(train));
        return [model](const Row& row) { return predict_nb(*model, row); };
    };
}

Learner tree_learner(TreeParams params) {
    return [params](const OrdinalDataset& train) -> Predictor {
        auto model = std::make_shared<TreeModel>(train_decision_tree(train, params));
        return [model](const Row& row) { return predict_tree(*model, row); };
    };
}

CVReport cross_validate(const OrdinalDataset& labeled, const Learner& learner,
                        int folds, std::uint64_t seed) {
    if (folds < 2) throw InvalidSpec("folds must be at least 2");
    auto idx = labeled_indices(labeled);
    if (idx.size() < static_cast<std::size_t>(folds))
        throw TooFewRows("need at least one row per fold");

    // Strata in ascending response value, one shared engine, round-robin
    // deal restarting at fold 0 per stratum.
    std::map<int, std::vector<std::size_t>> strata;
    for (std::size_t r : idx) strata[*labeled.responses[r]].push_back(r);
    auto eng = rng::make_engine(seed);
    std::vector<int> fold_of(labeled.n_rows(), -1);
    for (auto& [value, rows] : strata) {
        rng::shuffle(rows, eng);
        for (std::size_t i = 0; i < rows.size(); ++i)
            fold_of[rows[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
    }

    CVReport report;
    report.folds = folds;
    report.seed = seed;
    report.fold_stats.resize(folds);

    OrdinalDataset shell = labeled;
    for (int f = 0; f < folds; ++f) {
        OrdinalDataset train = shell;
        train.rows.clear();
        train.responses.clear();
        train.row_ids.clear();
        std::vector<std::size_t> test;
        for (std::size_t r : idx) {
            if (fold_of[r] == f) {
                test.push_back(r);
            } else {
                train.rows.push_back(labeled.rows[r]);
                train.responses.push_back(labeled.responses[r]);
                train.row_ids.push_back(labeled.row_ids[r]);
            }
        }
        Predictor predict = learner(train);
        FoldStats& stats = report.fold_stats[f];
        stats.n = test.size();
        for (std::size_t r : test) {
            Prediction p = predict(labeled.rows[r]);
            int truth = *labeled.responses[r];
            if (p.value == truth) stats.exact += 1;
            if (std::abs(p.value - truth) <= 1) stats.within_one += 1;
        }
    }

    std::size_t exact = 0, within = 0;
    for (const FoldStats& s : report.fold_stats) {
        exact += s.exact;
        within += s.within_one;
    }
    report.exact_accuracy = static_cast<double>(exact) / static_cast<double>(idx.size());
    report.within_one_accuracy =
        static_cast<double>(within) / static_cast<double>(idx.size());

    std::vector<std::size_t> class_count(labeled.response_scale.size(), 0);
    for (std::size_t r : idx)
        class_count[*labeled.responses[r] - labeled.response_scale.min] += 1;
    report.majority_baseline =
        static_cast<double>(*std::max_element(class_count.begin(), class_count.end())) /
        static_cast<double>(idx.size());
    return report;
}

std::vector<RankedUnit> rank_targets(const Predictor& model,
                                     const OrdinalDataset& unlabeled) {
    std::vector<RankedUnit> units;
    units.reserve(unlabeled.n_rows());
    for (std::size_t r = 0; r < unlabeled.n_rows(); ++r)
        units.push_back({unlabeled.row_ids[r], model(unlabeled.rows[r])});
    std::sort(units.begin(), units.end(),
              [](const RankedUnit& a, const RankedUnit& b) {
                  if (a.prediction.value != b.prediction.value)
                      return a.prediction.value > b.prediction.value;
                  return row_id_less(a.row_id, b.row_id);
              });
    return units;
}

}  // namespace ordeval
