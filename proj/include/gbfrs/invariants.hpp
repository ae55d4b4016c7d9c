#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gbfrs/dataset.hpp"
#include "gbfrs/fuzzy_rough.hpp"
#include "gbfrs/granular_ball.hpp"

namespace gbfrs {

struct CheckResult {
    std::string name;
    bool passed = true;
    double max_error = 0.0;
    std::string detail;
};

/// Structural problems of a ball set built from `ds`: partition, purity/splittability,
/// center and radius definitions (1e-9), recorded purity and label. Empty when sound.
std::vector<std::string> ball_set_violations(const GranularBallSet& gbs, const Dataset& ds);

/// Largest |projected full center - center of projected members| over all balls and the
/// coordinates of `subset`.
double center_projection_error(const GranularBallSet& gbs, const Dataset& ds, const AttributeSubset& subset);

/// Random nonempty attribute subset of size in [1, d], in random order.
AttributeSubset random_subset(std::size_t d, std::uint64_t seed);

struct CheckOptions {
    std::vector<std::uint64_t> seeds = {1};
    std::vector<double> thresholds = {0.6, 0.8, 1.0};
    std::size_t random_subsets = 20;
    std::size_t nested_pairs = 200;
    double tolerance = 1e-12;
};

/// Runs the property suite (ball construction, singleton-ball equivalence, C scaling, monotonicity
/// under fixed C, self-inclusion, significance routes) on a normalized dataset.
std::vector<CheckResult> run_invariant_checks(const Dataset& ds, const CheckOptions& options = {});

}  // namespace gbfrs
