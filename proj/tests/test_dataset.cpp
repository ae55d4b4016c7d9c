#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gbfrs/dataset.hpp"
#include "oracles.hpp"

using namespace gbfrs;

TEST(Csv, ParsesHeaderAndLastColumnLabels) {
    auto ds = parse_csv("x,y,class\n1,2,b\n3,4,a\n5,6,b\n");
    EXPECT_EQ(ds.size(), 3u);
    EXPECT_EQ(ds.dimension(), 2u);
    EXPECT_EQ(ds.attribute_names, (std::vector<std::string>{"x", "y"}));
    EXPECT_EQ(ds.labels, (std::vector<int>{0, 1, 0}));
    EXPECT_EQ(ds.class_names, (std::vector<std::string>{"b", "a"}));
    EXPECT_DOUBLE_EQ(ds.features(2, 1), 6.0);
}

TEST(Csv, LabelColumnByNameAndIndex) {
    const std::string text = "lab,x\nA,0.5\nB,1.5\n";
    auto by_name = parse_csv(text, {true, std::string("lab")});
    auto by_index = parse_csv(text, {true, std::size_t{0}});
    EXPECT_EQ(by_name.labels, by_index.labels);
    EXPECT_DOUBLE_EQ(by_name.features(1, 0), 1.5);
}

TEST(Csv, NoHeader) {
    auto ds = parse_csv("1,2,0\n3,4,1\n", {false, std::string{}});
    EXPECT_EQ(ds.size(), 2u);
    EXPECT_EQ(ds.class_count, 2);
}

TEST(Csv, Rejections) {
    EXPECT_THROW(parse_csv(""), Error);
    EXPECT_THROW(parse_csv("x,class\n"), Error);
    try {
        parse_csv("x,class\nabc,1\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("non-numeric feature 'abc'"), std::string::npos);
    }
    try {
        parse_csv("x,y,class\n1,,1\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("missing value"), std::string::npos);
    }
    EXPECT_THROW(parse_csv("x,y,class\n1,2\n"), Error);
    EXPECT_THROW(parse_csv("x,class\n1,a\n", {true, std::string("nope")}), Error);
    EXPECT_THROW(load_csv("/nonexistent/file.csv"), Error);
}

TEST(Csv, SingleRowWarns) {
    auto ds = parse_csv("x,class\n1,a\n");
    EXPECT_EQ(ds.size(), 1u);
    ASSERT_EQ(ds.warnings.size(), 1u);
}

TEST(Csv, LoadsBundledWine) {
    auto ds = load_csv(std::string(GBFRS_DATA_DIR) + "/wine.csv");
    EXPECT_EQ(ds.size(), 178u);
    EXPECT_EQ(ds.dimension(), 13u);
    EXPECT_EQ(ds.class_count, 3);
}

TEST(Normalize, MapsColumnsToUnitInterval) {
    auto ds = oracle::make_dataset({{0, 5, 2}, {10, 5, 4}, {5, 5, 3}}, {0, 1, 0});
    auto norm = normalize_min_max(ds);
    EXPECT_DOUBLE_EQ(norm.features(2, 0), 0.5);
    EXPECT_DOUBLE_EQ(norm.features(1, 0), 1.0);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(norm.features(i, 1), 0.0);  // constant column
    ASSERT_TRUE(norm.scaler.has_value());

    // Reusing train statistics on held-out rows clips out-of-range values.
    auto held = oracle::make_dataset({{20, 1, 1}}, {0});
    auto applied = apply_min_max(held, *norm.scaler);
    EXPECT_EQ(applied.features(0, 0), 1.0);
    EXPECT_EQ(applied.features(0, 2), 0.0);
}

TEST(LabelNoise, FlipsExactlyTheRequestedCount) {
    std::vector<int> labels(100);
    oracle::Rows rows(100, {0.0});
    for (int i = 0; i < 100; ++i) labels[i] = i % 2;
    auto ds = oracle::make_dataset(rows, labels);
    auto noisy = inject_label_noise(ds, 0.2, 7);
    int changed = 0;
    for (int i = 0; i < 100; ++i) changed += noisy.labels[i] != labels[i];
    EXPECT_EQ(changed, 20);
    EXPECT_EQ(noisy, inject_label_noise(ds, 0.2, 7));
    EXPECT_EQ(inject_label_noise(ds, 0.0, 7), ds);

    // 0.29 * 100 is 28.999999999999996 in floating point; the count must still be 29.
    auto n29 = inject_label_noise(ds, 0.29, 3);
    changed = 0;
    for (int i = 0; i < 100; ++i) changed += n29.labels[i] != labels[i];
    EXPECT_EQ(changed, 29);
}

TEST(LabelNoise, SingleClassIsRejected) {
    auto ds = oracle::make_dataset({{0.0}, {1.0}}, {0, 0});
    try {
        inject_label_noise(ds, 0.5, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "cannot flip single-class labels");
    }
}

TEST(AttributeNoise, StaysInUnitBoxAndWithinRate) {
    std::mt19937_64 rng(5);
    auto ds = oracle::random_dataset(rng, 50, 4, 2);
    auto noisy = inject_attribute_noise(ds, 0.1, 9);
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t k = 0; k < 4; ++k) {
            EXPECT_GE(noisy.features(i, k), 0.0);
            EXPECT_LE(noisy.features(i, k), 1.0);
            EXPECT_LE(std::abs(noisy.features(i, k) - ds.features(i, k)), 0.1 + 1e-15);
        }
    EXPECT_EQ(noisy.labels, ds.labels);
    EXPECT_THROW(inject_attribute_noise(ds, -0.1, 1), Error);
}

TEST(Folds, ElevenIntoFive) {
    oracle::Rows rows(11, {0.0});
    auto ds = oracle::make_dataset(rows, std::vector<int>(11, 0));
    for (bool stratified : {true, false}) {
        auto split = kfold_split(ds, 5, 3, stratified);
        std::vector<std::size_t> sizes;
        for (const auto& f : split.folds) sizes.push_back(f.size());
        EXPECT_EQ(sizes, (std::vector<std::size_t>{3, 2, 2, 2, 2}));
    }
    EXPECT_THROW(kfold_split(ds, 12, 1), Error);
    EXPECT_THROW(kfold_split(ds, 1, 1), Error);
}

TEST(Folds, PartitionAndStratificationProperty) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 10 + rng() % 90;
        const int classes = 2 + static_cast<int>(rng() % 3);
        const std::size_t k = 2 + rng() % 5;
        auto ds = oracle::random_dataset(rng, n, 1, classes);
        auto split = kfold_split(ds, k, rng());
        std::vector<int> seen(n, 0);
        for (std::size_t f = 0; f < k; ++f) {
            for (std::size_t i : split.folds[f]) ++seen[i];
            auto train = split.training_indices(f);
            EXPECT_EQ(train.size() + split.folds[f].size(), n);
        }
        EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
        for (int c = 0; c < classes; ++c) {
            const double share = static_cast<double>(std::count(ds.labels.begin(), ds.labels.end(), c)) / k;
            for (const auto& f : split.folds) {
                const auto in = std::count_if(f.begin(), f.end(), [&](std::size_t i) { return ds.labels[i] == c; });
                EXPECT_LE(std::abs(static_cast<double>(in) - share), 1.0);
            }
        }
    }
}

TEST(Synthetic, TwoClustersIsDeterministicAndBalanced) {
    auto a = make_two_clusters(200, 2, 4, 4.0, 11);
    EXPECT_EQ(a, make_two_clusters(200, 2, 4, 4.0, 11));
    EXPECT_EQ(a.dimension(), 6u);
    EXPECT_EQ(a.class_count, 2);
    EXPECT_EQ(std::count(a.labels.begin(), a.labels.end(), 0), 100);
}
