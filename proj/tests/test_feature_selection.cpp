#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "gbfrs/feature_selection.hpp"
#include "gbfrs/invariants.hpp"
#include "oracles.hpp"

using namespace gbfrs;

TEST(Modes, ParseAndPrint) {
    EXPECT_EQ(parse_selection_mode("gbfrs"), SelectionMode::granular_ball);
    EXPECT_EQ(parse_selection_mode("classic"), SelectionMode::classic_point);
    EXPECT_THROW(parse_selection_mode("rough"), Error);
    EXPECT_EQ(parse_c_mode("schedule"), CMode{});
    EXPECT_EQ(parse_c_mode("fixed:2.5"), (CMode{true, 2.5}));
    EXPECT_EQ(to_string(parse_c_mode("fixed:3")), "fixed:3");
    EXPECT_THROW(parse_c_mode("fixed:"), Error);
    EXPECT_THROW(parse_c_mode("fixed:-1"), Error);
    EXPECT_THROW(parse_c_mode("fixed:2x"), Error);
    EXPECT_THROW(parse_c_mode("linear"), Error);
    EXPECT_EQ((CMode{true, 4.0}).for_size(9), 4.0);
    EXPECT_EQ(CMode{}.for_size(9), 9.0);
}

TEST(Select, SeparatingAttributeAloneThenNoGain) {
    // Attribute 0 splits the classes at distance 1; attribute 1 is noise.
    auto ds = oracle::make_dataset({{0, 0.3}, {0, 0.8}, {1, 0.5}, {1, 0.1}}, {0, 0, 1, 1});
    auto trace = forward_select(granules_of(ds), SelectionMode::classic_point);
    EXPECT_EQ(trace.chosen, (std::vector<std::size_t>{0}));
    ASSERT_EQ(trace.dependency_path.size(), 1u);
    EXPECT_DOUBLE_EQ(trace.dependency_path[0], 1.0);
    EXPECT_EQ(trace.stopped_reason, StopReason::no_gain);
    // Round 2 is rejected on the raw dependency (below 1.0) even though its rescaled gain is positive.
    ASSERT_EQ(trace.best_significance.size(), 2u);
    EXPECT_GT(trace.best_significance[1], 0.0);
}

TEST(Select, IdenticalAttributesPickExactlyOne) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    oracle::Rows rows;
    std::vector<int> labels;
    for (int i = 0; i < 30; ++i) {
        const double x = u(rng);
        rows.push_back({x, x, x, x});
        labels.push_back(x < 0.5 ? 0 : 1);
    }
    auto ds = oracle::make_dataset(rows, labels);
    auto trace = forward_select(granules_of(ds), SelectionMode::classic_point);
    EXPECT_EQ(trace.chosen, (std::vector<std::size_t>{0}));  // ties go to the smallest index
    EXPECT_EQ(trace.stopped_reason, StopReason::no_gain);
}

TEST(Select, TiesGoToSmallestIndex) {
    auto ds = oracle::make_dataset({{0, 0}, {1, 1}}, {0, 1});
    auto trace = forward_select(granules_of(ds), SelectionMode::classic_point);
    ASSERT_FALSE(trace.chosen.empty());
    EXPECT_EQ(trace.chosen.front(), 0u);
}

TEST(Significance, EmptyBaseIsSingleAttributeDependency) {
    auto ds = oracle::make_dataset({{0.0, 0.2}, {0.1, 0.9}, {0.9, 0.4}, {1.0, 0.6}}, {0, 0, 1, 1});
    auto g = granules_of(ds);
    EXPECT_NEAR(significance(0, {}, g), 0.85, 1e-12);
    EXPECT_NEAR(significance_direct(0, {}, g), 0.85, 1e-12);
    EXPECT_THROW(significance(0, {0}, g), Error);
}

TEST(Significance, DuplicateOfSingleAttribute) {
    // Adding an exact copy a' of the only attribute b: the pair distance becomes sqrt(2)|db|,
    // so dep_{b,a'}(C=2) equals dep_b(C=1) and the significance is dep_b(C=1) * (1 - 1/sqrt(2)).
    auto ds = oracle::make_dataset({{0.0, 0.0}, {0.1, 0.1}, {0.9, 0.9}, {1.0, 1.0}}, {0, 0, 1, 1});
    auto g = granules_of(ds);
    const double dep_b1 = weighted_dependency(g, {0}, 1.0).value;
    EXPECT_NEAR(dep_b1, 0.85, 1e-12);
    const double expected = dep_b1 * (1.0 - 1.0 / std::sqrt(2.0));
    EXPECT_NEAR(significance(1, {0}, g), expected, 1e-12);
    EXPECT_NEAR(significance_direct(1, {0}, g), expected, 1e-12);
}

TEST(Reduct, XorNeedsBothAttributes) {
    auto ds = oracle::make_dataset({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, {0, 0, 1, 1});
    auto g = granules_of(ds);
    EXPECT_NEAR(weighted_dependency(g, {0}, 1.0).value, 0.0, 1e-15);
    EXPECT_NEAR(weighted_dependency(g, {0, 1}, 2.0).value, std::sqrt(0.5), 1e-12);
    EXPECT_TRUE(check_reduction({0, 1}, g));
    EXPECT_FALSE(check_reduction({0}, g));  // loses the full-set dependency
}

TEST(Reduct, ConstantColumnIsDispensable) {
    auto ds = oracle::make_dataset({{0.0, 0.5}, {0.1, 0.5}, {0.9, 0.5}, {1.0, 0.5}}, {0, 0, 1, 1});
    auto g = granules_of(ds);
    EXPECT_TRUE(check_reduction({0}, g));
    EXPECT_FALSE(check_reduction({0, 1}, g));
}

TEST(Reduct, DuplicateColumnIsNotIndispensable) {
    // Dropping either copy leaves the scheduled dependency unchanged (0.85 both ways).
    auto ds = oracle::make_dataset({{0.0, 0.0}, {0.1, 0.1}, {0.9, 0.9}, {1.0, 1.0}}, {0, 0, 1, 1});
    auto g = granules_of(ds);
    EXPECT_NEAR(scheduled_dependency(g, {0, 1}), scheduled_dependency(g, {1}), 1e-12);
    EXPECT_FALSE(check_reduction({0, 1}, g));
}

// Property: every route computing significance agrees; accepted steps have positive significance
// and strictly raise the dependency; traces are deterministic and duplicate-free.
TEST(SelectProperty, TraceInvariants) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 2 + rng() % 8;
        auto ds = oracle::random_dataset(rng, 20 + rng() % 100, d, 2 + static_cast<int>(rng() % 3));
        auto gbs = generate(ds, 0.7 + 0.3 * std::uniform_real_distribution<double>(0, 1)(rng), rng());
        auto g = granules_of(gbs);

        auto base = random_subset(d, rng());
        if (base.size() == d) base = base.without(*base.begin());
        for (std::size_t a = 0; a < d; ++a) {
            if (base.contains(a)) continue;
            EXPECT_NEAR(significance(a, base, g), significance_direct(a, base, g), 1e-12);
        }

        for (auto mode : {SelectionMode::granular_ball, SelectionMode::classic_point}) {
            auto trace = forward_select(gbs, ds, mode);
            EXPECT_EQ(trace.chosen, forward_select(gbs, ds, mode).chosen);
            EXPECT_EQ(std::set<std::size_t>(trace.chosen.begin(), trace.chosen.end()).size(), trace.chosen.size());
            for (double s : trace.significance_path) EXPECT_GT(s, 0.0);
            for (std::size_t i = 1; i < trace.dependency_path.size(); ++i)
                EXPECT_GT(trace.dependency_path[i], trace.dependency_path[i - 1]);
            EXPECT_EQ(trace.best_significance.size(),
                      trace.chosen.size() + (trace.stopped_reason == StopReason::no_gain ? 1 : 0));
            if (!trace.chosen.empty()) {
                const auto& G = mode == SelectionMode::granular_ball ? g : granules_of(ds);
                EXPECT_NEAR(trace.dependency_path.back(), scheduled_dependency(G, trace.subset()), 1e-12);
            }
        }
    }
}

TEST(Select, GranularModeOnSingletonsEqualsClassic) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        auto ds = oracle::random_dataset(rng, 40, 5, 2);
        auto singles = singleton_balls(ds);
        auto a = forward_select(singles, ds, SelectionMode::granular_ball);
        auto b = forward_select(singles, ds, SelectionMode::classic_point);
        EXPECT_EQ(a.chosen, b.chosen);
        ASSERT_EQ(a.dependency_path.size(), b.dependency_path.size());
        for (std::size_t i = 0; i < a.dependency_path.size(); ++i)
            EXPECT_NEAR(a.dependency_path[i], b.dependency_path[i], 1e-10);
    }
}

TEST(Select, FixedCModeUsesConstantC) {
    auto ds = oracle::make_dataset({{0, 0.3}, {0, 0.8}, {1, 0.5}, {1, 0.1}}, {0, 0, 1, 1});
    SelectionOptions opts;
    opts.c_mode = parse_c_mode("fixed:2");
    auto trace = forward_select(granules_of(ds), SelectionMode::classic_point, opts);
    ASSERT_FALSE(trace.chosen.empty());
    EXPECT_EQ(trace.chosen.front(), 0u);
    EXPECT_NEAR(trace.dependency_path.front(), 1.0 / std::sqrt(2.0), 1e-12);
    // With C held fixed dependency is monotone, so the noise attribute still adds a little.
    EXPECT_EQ(trace.chosen.size(), 2u);
}
