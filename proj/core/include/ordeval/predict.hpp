#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ordeval/dataset.hpp"

namespace ordeval {

/// Point prediction plus the full distribution over response scale values
/// (indexed by value - response_scale.min, sums to 1).
struct Prediction {
    int value = 0;
    std::vector<double> distribution;
};

/// Argmax over class slots with ties broken toward the lower response value.
int argmax_low(const std::vector<double>& distribution, const Scale& response_scale);

/// Naive Bayes with Laplace-1 smoothing on priors and conditionals. A row
/// missing an attribute neither contributes to that attribute's counts nor
/// consults it at prediction time.
struct NBModel {
    Scale response_scale;
    std::vector<Scale> attribute_scales;
    std::vector<double> priors;  // per class slot, sums to 1
    // conditionals[a][c][v]: P(value slot v | class slot c) for attribute a
    std::vector<std::vector<std::vector<double>>> conditionals;
};

NBModel train_naive_bayes(const OrdinalDataset& labeled);
Prediction predict_nb(const NBModel& model, const Row& row);

struct TreeParams {
    int min_leaf = 2;
    int max_depth = -1;  // negative = unbounded
};

/// Multiway decision tree: each internal node splits one attribute with a
/// child per scale value; an attribute is tested at most once per path.
/// Values unseen at a node alias the heaviest child, so every row routes to
/// a leaf.
struct TreeNode {
    int split_attribute = -1;           // -1 marks a leaf
    std::vector<std::size_t> children;  // per value slot, indices into nodes
    std::size_t heaviest_slot = 0;      // child with the most training rows
    std::vector<double> distribution;   // leaf class distribution
    std::size_t n_rows = 0;
};

struct TreeModel {
    Scale response_scale;
    std::vector<Scale> attribute_scales;
    std::vector<TreeNode> nodes;
    std::size_t root = 0;
    TreeParams params;
};

/// Greedy growth maximizing gain ratio; stops on purity, max depth, or when
/// no split leaves at least two children with min_leaf rows and positive
/// gain. Rows missing the split attribute follow the heaviest child.
TreeModel train_decision_tree(const OrdinalDataset& labeled,
                              const TreeParams& params = {});
Prediction predict_tree(const TreeModel& model, const Row& row);

using Predictor = std::function<Prediction(const Row&)>;
using Learner = std::function<Predictor(const OrdinalDataset& train)>;

Learner nb_learner();
Learner tree_learner(TreeParams params = {});

struct FoldStats {
    std::size_t n = 0;
    std::size_t exact = 0;
    std::size_t within_one = 0;

    bool operator==(const FoldStats&) const = default;
};

struct CVReport {
    int folds = 0;
    double exact_accuracy = 0.0;
    double within_one_accuracy = 0.0;  // |predicted - true| <= 1 counts as hit
    double majority_baseline = 0.0;    // modal response frequency, full set
    std::vector<FoldStats> fold_stats;
    std::uint64_t seed = 0;

    bool operator==(const CVReport&) const = default;
};

/// Stratified k-fold: rows are grouped by response value; each stratum is
/// shuffled with the shared seeded engine (strata in ascending value order)
/// and dealt round-robin starting at fold 0, so per-stratum fold sizes
/// differ by at most one. Accuracies pool hits across folds.
CVReport cross_validate(const OrdinalDataset& labeled, const Learner& learner,
                        int folds, std::uint64_t seed);

struct RankedUnit {
    std::string row_id;
    Prediction prediction;
};

/// Predictions for every unlabeled row, sorted by predicted value descending
/// with ties broken by ascending row id (numeric when both ids are digits).
std::vector<RankedUnit> rank_targets(const Predictor& model,
                                     const OrdinalDataset& unlabeled);

}  // namespace ordeval
