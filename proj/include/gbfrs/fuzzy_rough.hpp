#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "gbfrs/dataset.hpp"
#include "gbfrs/granular_ball.hpp"

namespace gbfrs {

/// Ordered, duplicate-free list of attribute (column) indices.
class AttributeSubset {
public:
    AttributeSubset() = default;
    explicit AttributeSubset(std::vector<std::size_t> indices);
    AttributeSubset(std::initializer_list<std::size_t> indices)
        : AttributeSubset(std::vector<std::size_t>(indices)) {}

    static AttributeSubset all(std::size_t d);

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    bool contains(std::size_t a) const;

    AttributeSubset with(std::size_t a) const;
    AttributeSubset without(std::size_t a) const;

    /// Throws Error if empty or any index is >= d.
    void check_within(std::size_t d) const;

    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }

    bool operator==(const AttributeSubset&) const = default;

private:
    std::vector<std::size_t> indices_;
};

/// Euclidean distance restricted to the coordinates in `subset`, summed in subset order.
double subset_distance(std::span<const double> x, std::span<const double> y, const AttributeSubset& subset);

struct DependencyResult {
    double value = 0.0;
    /// Plain mean of per_ball (each granule counts once, sizes ignored).
    double value_unweighted = 0.0;
    std::vector<double> per_ball;
    double C = 1.0;
    AttributeSubset subset;
    /// No granule has a differently labelled counterpart; every lower approximation is the
    /// empty-min constant 1 and does not scale with C.
    bool single_class = false;
};

/// Granules over which dependency is evaluated: ball centers (weights = ball sizes) or the
/// raw samples (weights = 1).
struct GranuleTable {
    FeatureMatrix centers;
    std::vector<int> labels;
    std::vector<double> weights;
    std::size_t source_n = 0;

    std::size_t size() const noexcept { return labels.size(); }
};

GranuleTable granules_of(const GranularBallSet& gbs);
GranuleTable granules_of(const Dataset& ds);

/// 1 - dist_B(c_i, c_j) / sqrt(C).
double ball_similarity(const GranularBall& a, const GranularBall& b, const AttributeSubset& subset, double C);

/// Distance to the nearest ball outside `target_class`, over sqrt(C). Returns 1 when every ball
/// belongs to `target_class`.
double lower_approximation(const GranularBallSet& gbs, std::size_t j, int target_class,
                           const AttributeSubset& subset, double C);

/// Largest similarity between ball j and any ball of `target_class`; 0 when the class has no ball.
double upper_approximation(const GranularBallSet& gbs, std::size_t j, int target_class,
                           const AttributeSubset& subset, double C);

/// Per-ball membership in the positive region: lower approximation of each ball's own class.
std::vector<double> positive_region(const GranularBallSet& gbs, const AttributeSubset& subset, double C);

/// Size-weighted dependency sum_i |GB_i| * pos_i / source_n.
DependencyResult weighted_dependency(const GranularBallSet& gbs, const AttributeSubset& subset, double C);
DependencyResult weighted_dependency(const GranuleTable& table, const AttributeSubset& subset, double C);

/// Point-level fuzzy rough dependency: every sample is its own granule.
DependencyResult classic_dependency(const Dataset& ds, const AttributeSubset& subset, double C);

/// Moves a result from its C to `C_new` by the factor sqrt(C / C_new).
DependencyResult rescale_dependency(const DependencyResult& result, double C_new);

/// Incremental evaluator for forward search: keeps squared center distances for a base subset
/// and adds one attribute at a time without recomputing the base part.
class DependencyEngine {
public:
    explicit DependencyEngine(GranuleTable table);

    const GranuleTable& table() const noexcept { return table_; }
    const AttributeSubset& base() const noexcept { return base_; }
    bool single_class() const noexcept { return single_class_; }

    /// Dependency of base + {a} at distance parameter C.
    DependencyResult evaluate_with(std::size_t a, double C) const;
    /// Dependency of the base subset at C. An empty base yields 0.
    DependencyResult evaluate_base(double C) const;
    void commit(std::size_t a);

private:
    DependencyResult finish(std::vector<double> nearest_sq, AttributeSubset subset, double C) const;

    GranuleTable table_;
    AttributeSubset base_;
    std::vector<double> sq_;  // m x m squared distances over base_
    std::vector<std::vector<std::size_t>> foreign_;  // per granule: indices carrying another label
    bool single_class_ = true;
};

}  // namespace gbfrs
