#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gbfrs/evaluation.hpp"
#include "oracles.hpp"

using namespace gbfrs;

namespace {

ExperimentConfig quick_config() {
    ExperimentConfig cfg;
    cfg.purity_grid = {0.8, 1.0};
    cfg.noise_levels = {0.0, 0.2};
    cfg.folds = 3;
    cfg.record_timing = false;
    return cfg;
}

}  // namespace

TEST(Knn, MajorityOfThreeNearest) {
    auto train = oracle::make_dataset({{0.0}, {0.1}, {0.3}, {0.9}}, {0, 0, 1, 1});
    auto query = oracle::make_dataset({{0.2}}, {0});
    EXPECT_EQ(knn_predict(train, query, {0}, 3), std::vector<int>{0});
}

TEST(Knn, DistanceTieGoesToSmallerIndex) {
    auto train = oracle::make_dataset({{0.0}, {0.25}, {0.75}, {1.0}}, {1, 0, 1, 0});
    auto query = oracle::make_dataset({{0.5}}, {0});
    EXPECT_EQ(knn_predict(train, query, {0}, 1), std::vector<int>{0});
}

TEST(Knn, VoteTieGoesToSmallerClass) {
    auto train = oracle::make_dataset({{0.0}, {1.0}}, {1, 0});
    auto query = oracle::make_dataset({{0.4}}, {0});
    EXPECT_EQ(knn_predict(train, query, {0}, 2), std::vector<int>{0});
    EXPECT_THROW(knn_predict(train, query, {0}, 3), Error);
}

TEST(Knn, UsesOnlySelectedAttributes) {
    auto train = oracle::make_dataset({{0.0, 1.0}, {1.0, 0.0}}, {0, 1});
    auto query = oracle::make_dataset({{0.1, 0.1}}, {0});
    EXPECT_EQ(knn_predict(train, query, {0}, 1), std::vector<int>{0});
    EXPECT_EQ(knn_predict(train, query, {1}, 1), std::vector<int>{1});
}

TEST(Accuracy, Fraction) {
    EXPECT_DOUBLE_EQ(accuracy(std::vector<int>{0, 1, 1, 0}, std::vector<int>{0, 1, 0, 0}), 0.75);
    EXPECT_THROW(accuracy(std::vector<int>{0}, std::vector<int>{0, 1}), Error);
}

TEST(Config, GridsAndValidation) {
    auto grid = default_purity_grid();
    ASSERT_EQ(grid.size(), 9u);
    EXPECT_DOUBLE_EQ(grid.front(), 0.6);
    EXPECT_DOUBLE_EQ(grid.back(), 1.0);
    EXPECT_EQ(default_noise_levels().size(), 7u);
    ExperimentConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.purity_grid = {0.5, 1.2};
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.folds = 1;
    EXPECT_THROW(cfg.validate(), Error);
    EXPECT_EQ(parse_method("classic-frs"), Method::classic_frs);
    EXPECT_EQ(to_string(Method::all_features), "all-features");
    EXPECT_THROW(parse_noise_kind("gaussian"), Error);
}

TEST(GridSearch, TieGoesToLargerThreshold) {
    // Two far-apart pure clusters: every threshold builds the same balls.
    auto ds = make_two_clusters(60, 1, 0, 8.0, 5);
    auto norm = normalize_min_max(ds);
    auto cfg = quick_config();
    std::vector<double> grid = {0.6, 0.8, 1.0, 0.7};
    auto r = purity_grid_search(norm, grid, 3, cfg);
    ASSERT_EQ(r.accuracies.size(), 4u);
    for (double a : r.accuracies) EXPECT_EQ(a, r.accuracies.front());
    EXPECT_EQ(r.best_threshold, 1.0);
}

TEST(CrossValidate, ShapeStatisticsAndDeterminism) {
    auto ds = make_two_clusters(90, 2, 2, 3.0, 7);
    auto cfg = quick_config();
    cfg.seeds = {1, 2};
    for (Method m : cfg.methods) {
        auto cell = cross_validate(ds, "toy", cfg, m, 0.2);
        ASSERT_EQ(cell.runs.size(), 6u);
        double mean = 0.0;
        for (const auto& r : cell.runs) {
            mean += r.accuracy;
            EXPECT_TRUE(r.test_noise_free);
            if (m == Method::all_features) EXPECT_EQ(r.subset_size, 4u);
            if (m == Method::gbfrs) EXPECT_TRUE(r.purity_threshold == 0.8 || r.purity_threshold == 1.0);
            else EXPECT_EQ(r.purity_threshold, 0.0);
        }
        mean /= 6.0;
        double var = 0.0;
        for (const auto& r : cell.runs) var += (r.accuracy - mean) * (r.accuracy - mean);
        EXPECT_NEAR(cell.mean_accuracy, mean, 1e-15);
        EXPECT_NEAR(cell.std_accuracy, std::sqrt(var / 6.0), 1e-15);  // population std
        EXPECT_EQ(cell.seconds, 0.0);

        auto again = cross_validate(ds, "toy", cfg, m, 0.2);
        for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(again.runs[i].accuracy, cell.runs[i].accuracy);
    }
}

TEST(CrossValidate, DatasetIdChangesStreams) {
    auto ds = make_two_clusters(90, 1, 3, 1.5, 7);
    auto cfg = quick_config();
    auto a = cross_validate(ds, "one", cfg, Method::all_features, 0.2);
    auto b = cross_validate(ds, "two", cfg, Method::all_features, 0.2);
    bool differs = false;
    for (std::size_t i = 0; i < a.runs.size(); ++i) differs |= a.runs[i].accuracy != b.runs[i].accuracy;
    EXPECT_TRUE(differs);
}

TEST(CrossValidate, AttributeNoiseKeepsTestFoldsClean) {
    auto ds = make_two_clusters(60, 2, 1, 3.0, 2);
    auto cfg = quick_config();
    cfg.noise_kind = NoiseKind::attribute;
    auto cell = cross_validate(ds, "toy", cfg, Method::classic_frs, 0.1);
    for (const auto& r : cell.runs) EXPECT_TRUE(r.test_noise_free);
    EXPECT_EQ(cell.noise_kind, NoiseKind::attribute);
}

TEST(Sweep, CellsFollowMethodThenNoiseOrder) {
    auto ds = make_two_clusters(45, 1, 1, 3.0, 4);
    auto cfg = quick_config();
    cfg.methods = {Method::all_features, Method::classic_frs};
    auto report = noise_sweep(ds, "toy", cfg);
    ASSERT_EQ(report.cells.size(), 4u);
    EXPECT_EQ(report.cells[0].method, Method::all_features);
    EXPECT_EQ(report.cells[1].noise, 0.2);
    EXPECT_EQ(report.cells[2].method, Method::classic_frs);
}
