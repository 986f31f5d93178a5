#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ordeval/predict.hpp"

using namespace ordeval;

namespace {

OrdinalDataset make_ds(std::vector<Scale> scales, Scale response_scale,
                       std::vector<std::pair<Row, CellValue>> data) {
    OrdinalDataset ds;
    for (std::size_t a = 0; a < scales.size(); ++a) {
        ds.attribute_names.push_back("q" + std::to_string(a + 1));
        ds.scales.push_back(scales[a]);
        ds.column_order.push_back(ds.attribute_names.back());
    }
    ds.response_name = "resp";
    ds.response_scale = response_scale;
    ds.column_order.push_back("resp");
    for (auto& [row, resp] : data) {
        ds.rows.push_back(row);
        ds.responses.push_back(resp);
        ds.row_ids.push_back(std::to_string(ds.rows.size()));
    }
    return ds;
}

// two binary attributes, binary response 1..2
OrdinalDataset xor_ds() {
    std::vector<std::pair<Row, CellValue>> data;
    for (int i = 0; i < 3; ++i) data.push_back({{1, 1}, 1});
    for (int i = 0; i < 2; ++i) data.push_back({{1, 2}, 2});
    for (int i = 0; i < 3; ++i) data.push_back({{2, 1}, 2});
    for (int i = 0; i < 2; ++i) data.push_back({{2, 2}, 1});
    return make_ds({Scale{1, 2}, Scale{1, 2}}, Scale{1, 2}, data);
}

}  // namespace

TEST_CASE("argmax breaks ties toward the lower value") {
    Scale s{1, 3};
    CHECK(argmax_low({0.2, 0.5, 0.3}, s) == 2);
    CHECK(argmax_low({0.4, 0.4, 0.2}, s) == 1);
    CHECK(argmax_low({0.1, 0.2, 0.7}, s) == 3);
    CHECK(argmax_low({0.5, 0.5}, Scale{0, 1}) == 0);
}

TEST_CASE("naive Bayes matches the hand-computed four-row example") {
    auto ds = make_ds({Scale{1, 2}, Scale{1, 2}}, Scale{1, 2},
                      {{{1, 1}, 1}, {{1, 2}, 1}, {{2, 1}, 2}, {{2, 2}, 2}});
    NBModel model = train_naive_bayes(ds);

    REQUIRE(model.priors.size() == 2);
    CHECK(model.priors[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(model.priors[1] == doctest::Approx(0.5).epsilon(1e-12));
    // first attribute is perfectly aligned with the class, smoothed to 3/4
    CHECK(model.conditionals[0][0][0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(model.conditionals[0][0][1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(model.conditionals[0][1][0] == doctest::Approx(0.25).epsilon(1e-12));
    // second attribute carries no signal
    CHECK(model.conditionals[1][0][0] == doctest::Approx(0.5).epsilon(1e-12));

    Prediction p = predict_nb(model, {1, 2});
    CHECK(p.value == 1);
    CHECK(p.distribution[0] == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(p.distribution[1] == doctest::Approx(0.25).epsilon(1e-9));

    Prediction q = predict_nb(model, {2, 1});
    CHECK(q.value == 2);
    CHECK(q.distribution[1] == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("a missing attribute is ignored at prediction time") {
    auto ds = make_ds({Scale{1, 2}, Scale{1, 2}}, Scale{1, 2},
                      {{{1, 1}, 1}, {{1, 2}, 1}, {{2, 1}, 2}, {{2, 2}, 2}});
    NBModel model = train_naive_bayes(ds);
    Prediction p = predict_nb(model, {std::nullopt, 2});
    CHECK(p.distribution[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.value == 1);  // tie goes to the lower value

    // a value outside the attribute scale is treated the same way
    Prediction q = predict_nb(model, {7, 2});
    CHECK(q.distribution == p.distribution);
}

TEST_CASE("missing training cells shrink only that attribute's counts") {
    auto ds = make_ds({Scale{1, 2}}, Scale{1, 2},
                      {{{1}, 1}, {{std::nullopt}, 1}, {{2}, 2}});
    NBModel model = train_naive_bayes(ds);
    CHECK(model.priors[0] == doctest::Approx(0.6).epsilon(1e-12));  // (2+1)/(3+2)
    CHECK(model.priors[1] == doctest::Approx(0.4).epsilon(1e-12));
    // class 1 has one present cell: (1+1)/(1+2) and (0+1)/(1+2)
    CHECK(model.conditionals[0][0][0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(model.conditionals[0][0][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("posteriors are normalized across many probes") {
    auto ds = make_ds({Scale{1, 3}, Scale{1, 4}, Scale{1, 2}}, Scale{1, 3},
                      {{{1, 4, 2}, 1},
                       {{2, 3, 1}, 2},
                       {{3, 1, 1}, 3},
                       {{1, 2, 2}, 2},
                       {{3, 4, std::nullopt}, 3},
                       {{2, std::nullopt, 1}, 1}});
    NBModel model = train_naive_bayes(ds);
    std::mt19937_64 eng(1234);
    for (int probe = 0; probe < 1000; ++probe) {
        Row row(3);
        for (std::size_t a = 0; a < 3; ++a) {
            int pick = static_cast<int>(eng() % 5);
            if (pick == 4)
                row[a] = std::nullopt;
            else
                row[a] = model.attribute_scales[a].min +
                         pick % model.attribute_scales[a].size();
        }
        Prediction p = predict_nb(model, row);
        double sum = 0.0;
        for (double d : p.distribution) {
            CHECK(d >= 0.0);
            sum += d;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.value == argmax_low(p.distribution, model.response_scale));
    }
}

TEST_CASE("training needs at least one labeled row") {
    auto ds = make_ds({Scale{1, 2}}, Scale{1, 2},
                      {{{1}, std::nullopt}, {{2}, std::nullopt}});
    CHECK_THROWS_AS(train_naive_bayes(ds), EmptyTrainingSet);
    CHECK_THROWS_AS(train_decision_tree(ds), EmptyTrainingSet);
}

TEST_CASE("the tree solves xor by splitting the higher-gain attribute first") {
    auto ds = xor_ds();
    TreeModel model = train_decision_tree(ds);
    const TreeNode& root = model.nodes[model.root];
    REQUIRE(root.split_attribute == 0);  // the second attribute has zero gain alone

    auto predict_value = [&](int x, int y) { return predict_tree(model, {x, y}).value; };
    CHECK(predict_value(1, 1) == 1);
    CHECK(predict_value(1, 2) == 2);
    CHECK(predict_value(2, 1) == 2);
    CHECK(predict_value(2, 2) == 1);

    // both children split the remaining attribute into pure leaves
    for (std::size_t slot = 0; slot < 2; ++slot) {
        const TreeNode& child = model.nodes[root.children[slot]];
        CHECK(child.split_attribute == 1);
        for (std::size_t cslot = 0; cslot < 2; ++cslot) {
            const TreeNode& leaf = model.nodes[child.children[cslot]];
            CHECK(leaf.split_attribute == -1);
            CHECK(*std::max_element(leaf.distribution.begin(),
                                    leaf.distribution.end()) == 1.0);
        }
    }
}

TEST_CASE("min_leaf blocks splits that would starve a child") {
    auto ds = make_ds({Scale{1, 2}}, Scale{1, 2}, {{{1}, 1}, {{1}, 1}, {{2}, 2}});
    TreeModel fat = train_decision_tree(ds, {.min_leaf = 2});
    CHECK(fat.nodes[fat.root].split_attribute == -1);
    CHECK(predict_tree(fat, {2}).value == 1);  // majority of the single leaf

    TreeModel thin = train_decision_tree(ds, {.min_leaf = 1});
    CHECK(thin.nodes[thin.root].split_attribute == 0);
    CHECK(predict_tree(thin, {2}).value == 2);

    CHECK_THROWS_AS(train_decision_tree(ds, {.min_leaf = 0}), InvalidSpec);
}

TEST_CASE("max_depth zero forces a single leaf") {
    auto ds = xor_ds();
    TreeModel stump = train_decision_tree(ds, {.max_depth = 0});
    CHECK(stump.nodes.size() == 1);
    CHECK(stump.nodes[stump.root].split_attribute == -1);
    CHECK(stump.nodes[stump.root].n_rows == 10);

    TreeModel one = train_decision_tree(ds, {.max_depth = 1});
    const TreeNode& root = one.nodes[one.root];
    CHECK(root.split_attribute == 0);
    CHECK(one.nodes[root.children[0]].split_attribute == -1);
    CHECK(one.nodes[root.children[1]].split_attribute == -1);
}

TEST_CASE("rows missing the split attribute follow the heaviest child") {
    std::vector<std::pair<Row, CellValue>> data;
    for (int i = 0; i < 6; ++i) data.push_back({{1}, 1});
    for (int i = 0; i < 3; ++i) data.push_back({{2}, 2});
    data.push_back({{std::nullopt}, 2});
    auto ds = make_ds({Scale{1, 2}}, Scale{1, 2}, data);
    TreeModel model = train_decision_tree(ds);
    const TreeNode& root = model.nodes[model.root];
    REQUIRE(root.split_attribute == 0);
    CHECK(root.heaviest_slot == 0);  // six present rows beat three

    // the missing row lands in the heavy child and dilutes its purity
    const TreeNode& heavy = model.nodes[root.children[0]];
    CHECK(heavy.n_rows == 7);
    CHECK(predict_tree(model, {std::nullopt}).value ==
          predict_tree(model, {1}).value);
    CHECK(predict_tree(model, {std::nullopt}).distribution ==
          predict_tree(model, {1}).distribution);
}

TEST_CASE("scale values unseen in training alias the heaviest child") {
    std::vector<std::pair<Row, CellValue>> data;
    for (int i = 0; i < 4; ++i) data.push_back({{1}, 1});
    for (int i = 0; i < 2; ++i) data.push_back({{2}, 2});
    auto ds = make_ds({Scale{1, 3}}, Scale{1, 2}, data);  // value 3 never occurs
    TreeModel model = train_decision_tree(ds);
    const TreeNode& root = model.nodes[model.root];
    REQUIRE(root.split_attribute == 0);
    CHECK(root.children[2] == root.children[root.heaviest_slot]);
    CHECK(predict_tree(model, {3}).value == predict_tree(model, {1}).value);
    // so does a value outside the scale entirely
    CHECK(predict_tree(model, {99}).value == predict_tree(model, {1}).value);
}

TEST_CASE("an attribute is tested at most once per path") {
    // the same attribute stays informative after the first split, but a
    // second test of it must not appear below itself
    auto ds = xor_ds();
    TreeModel model = train_decision_tree(ds, {.min_leaf = 1});
    std::vector<bool> seen;
    auto walk = [&](auto&& self, std::size_t node, std::vector<int> path) -> void {
        const TreeNode& n = model.nodes[node];
        if (n.split_attribute < 0) return;
        for (int a : path) CHECK(a != n.split_attribute);
        path.push_back(n.split_attribute);
        std::vector<std::size_t> kids(n.children.begin(), n.children.end());
        std::sort(kids.begin(), kids.end());
        kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
        for (std::size_t kid : kids) self(self, kid, path);
    };
    walk(walk, model.root, {});
}

TEST_CASE("stratified folds deal every class evenly") {
    std::vector<std::pair<Row, CellValue>> data;
    for (int i = 0; i < 20; ++i) data.push_back({{1 + i % 2}, 1});
    for (int i = 0; i < 10; ++i) data.push_back({{1 + i % 2}, 2});
    for (int i = 0; i < 10; ++i) data.push_back({{1 + i % 2}, 3});
    auto ds = make_ds({Scale{1, 2}}, Scale{1, 3}, data);

    // a constant learner that always answers the modal class
    Learner constant = [](const OrdinalDataset&) -> Predictor {
        return [](const Row&) { return Prediction{1, {1.0, 0.0, 0.0}}; };
    };
    CVReport report = cross_validate(ds, constant, 10, 42);
    CHECK(report.folds == 10);
    CHECK(report.seed == 42);
    CHECK(report.majority_baseline == 0.5);
    CHECK(report.exact_accuracy == 0.5);        // exactly the majority share
    CHECK(report.within_one_accuracy == 0.75);  // classes 1 and 2 are close enough
    REQUIRE(report.fold_stats.size() == 10);
    for (const FoldStats& s : report.fold_stats) {
        CHECK(s.n == 4);  // 2 + 1 + 1 from the three strata
        CHECK(s.exact == 2);
        CHECK(s.within_one == 3);
    }
}

TEST_CASE("cross-validation is reproducible and seed-sensitive") {
    std::vector<std::pair<Row, CellValue>> data;
    std::mt19937_64 eng(777);
    for (int i = 0; i < 60; ++i) {
        int x = 1 + static_cast<int>(eng() % 3);
        int y = 1 + static_cast<int>(eng() % 3);
        int c = std::min(3, std::max(1, (x + y) / 2));
        data.push_back({{x, y}, c});
    }
    auto ds = make_ds({Scale{1, 3}, Scale{1, 3}}, Scale{1, 3}, data);
    CVReport a = cross_validate(ds, nb_learner(), 10, 11);
    CVReport b = cross_validate(ds, nb_learner(), 10, 11);
    CHECK(a == b);
    CHECK(a.within_one_accuracy >= a.exact_accuracy);

    CVReport tree = cross_validate(ds, tree_learner(), 10, 11);
    CHECK(tree.within_one_accuracy >= tree.exact_accuracy);
}

TEST_CASE("cross-validation validates its inputs") {
    auto ds = make_ds({Scale{1, 2}}, Scale{1, 2},
                      {{{1}, 1}, {{2}, 2}, {{1}, 1}, {{2}, std::nullopt}});
    CHECK_THROWS_AS(cross_validate(ds, nb_learner(), 1, 0), InvalidSpec);
    CHECK_THROWS_AS(cross_validate(ds, nb_learner(), 4, 0), TooFewRows);
    CHECK_NOTHROW(cross_validate(ds, nb_learner(), 3, 0));
}

TEST_CASE("unlabeled rows never reach the folds") {
    std::vector<std::pair<Row, CellValue>> data;
    for (int i = 0; i < 12; ++i) data.push_back({{1 + i % 2}, 1 + i % 2});
    auto with_extra = data;
    with_extra.push_back({{1}, std::nullopt});
    with_extra.push_back({{2}, std::nullopt});
    auto clean = make_ds({Scale{1, 2}}, Scale{1, 2}, data);
    auto noisy = make_ds({Scale{1, 2}}, Scale{1, 2}, with_extra);
    CHECK(cross_validate(clean, nb_learner(), 4, 3) ==
          cross_validate(noisy, nb_learner(), 4, 3));
}

TEST_CASE("ranking sorts by predicted value then natural row id") {
    auto ds = make_ds({Scale{1, 3}}, Scale{1, 3},
                      {{{3}, std::nullopt},
                       {{1}, std::nullopt},
                       {{3}, std::nullopt},
                       {{2}, std::nullopt},
                       {{3}, std::nullopt}});
    ds.row_ids = {"10", "7", "9", "2", "u3"};

    Predictor by_value = [](const Row& row) {
        int v = row[0].value_or(1);
        std::vector<double> dist(3, 0.0);
        dist[v - 1] = 1.0;
        return Prediction{v, dist};
    };
    auto ranked = rank_targets(by_value, ds);
    REQUIRE(ranked.size() == 5);
    CHECK(ranked[0].prediction.value == 3);
    CHECK(ranked[0].row_id == "9");   // 9 < 10 numerically
    CHECK(ranked[1].row_id == "10");
    CHECK(ranked[2].row_id == "u3");  // digits beat letters bytewise
    CHECK(ranked[3].row_id == "2");
    CHECK(ranked[3].prediction.value == 2);
    CHECK(ranked[4].row_id == "7");
    CHECK(ranked[4].prediction.value == 1);
}

TEST_CASE("ranking the unlabeled split covers exactly the unlabeled rows") {
    auto ds = make_ds({Scale{1, 2}}, Scale{1, 2},
                      {{{1}, 1}, {{2}, std::nullopt}, {{2}, 2}});
    Predictor constant = [](const Row&) { return Prediction{1, {1.0, 0.0}}; };
    SplitResult split = split_labeled(ds);
    auto ranked = rank_targets(constant, split.unlabeled);
    REQUIRE(ranked.size() == 1);
    CHECK(ranked[0].row_id == "2");

    CHECK(rank_targets(constant, split_labeled(split.labeled).unlabeled).empty());
}
