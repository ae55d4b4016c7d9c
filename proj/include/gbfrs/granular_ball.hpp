#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gbfrs/dataset.hpp"

namespace gbfrs {

/// A cluster of training samples summarized by the mean of its members (center) and the
/// mean member-to-center Euclidean distance (radius).
struct GranularBall {
    std::vector<std::size_t> members;  // ascending indices into the source dataset
    std::vector<double> center;
    double radius = 0.0;
    /// Radius after overlap truncation. Equal to `radius` unless two heterogeneous balls
    /// could not be separated by splitting; never affects membership.
    double effective_radius = 0.0;
    double purity = 1.0;
    int majority_label = 0;

    std::size_t size() const noexcept { return members.size(); }

    bool operator==(const GranularBall&) const = default;
};

struct GranularBallSet {
    std::vector<GranularBall> balls;
    std::size_t source_n = 0;
    double purity_threshold = 1.0;

    std::size_t size() const noexcept { return balls.size(); }

    bool operator==(const GranularBallSet&) const = default;
};

struct CenterRadius {
    std::vector<double> center;
    double radius = 0.0;
};

CenterRadius compute_center_radius(std::span<const std::span<const double>> points);
CenterRadius compute_center_radius(const Dataset& ds, std::span<const std::size_t> members);

struct PurityLabel {
    double purity = 1.0;
    int majority_label = 0;
};

/// Majority class and its frequency; ties go to the smallest class id.
PurityLabel purity_and_label(std::span<const int> labels);

/// Builds a ball (center, radius, purity, label) from member indices.
GranularBall make_ball(const Dataset& ds, std::vector<std::size_t> members);

/// A ball can be split only if it holds at least two distinct feature vectors.
bool is_splittable(const GranularBall& ball, const Dataset& ds);

/// Lloyd 2-means over the ball's members, seeded with the two members that lie farthest
/// apart (first such pair in index order). Throws Error("non-splittable") when the ball has
/// fewer than two distinct points.
std::pair<GranularBall, GranularBall> two_means_split(const GranularBall& ball, const Dataset& ds);

/// Plain k-means (k-means++ seeding) returning one index list per cluster. Empty clusters
/// are repaired by moving the farthest point of the largest cluster.
std::vector<std::vector<std::size_t>> kmeans_partition(const Dataset& ds, std::size_t k, std::uint64_t seed,
                                                       std::size_t max_iterations = 100,
                                                       double tolerance = 1e-6);

enum class InitialCount { ceil_sqrt, floor_sqrt };

/// Number of k-means clusters that seed ball generation: sqrt(n) rounded per `rounding`, at least 1.
std::size_t initial_ball_count(std::size_t n, InitialCount rounding = InitialCount::ceil_sqrt);

struct BallOptions {
    InitialCount initial_count = InitialCount::ceil_sqrt;
    /// Put every sample in its own ball and skip clustering altogether.
    bool singleton_balls = false;
    bool remove_overlap = true;
};

GranularBallSet generate(const Dataset& ds, double purity_threshold, std::uint64_t seed,
                         const BallOptions& options = {});

/// One ball per sample (m == n, all radii zero).
GranularBallSet singleton_balls(const Dataset& ds);

/// True when two balls carry different labels and their spheres intersect
/// (center distance < sum of effective radii).
bool heterogeneous_overlap(const GranularBall& a, const GranularBall& b);

/// Splits overlapping heterogeneous balls until no such pair remains or no offender can be
/// split. Whatever overlap survives has its effective radii truncated to half the center
/// distance. Purity >= threshold (or non-splittable) is maintained for every ball.
GranularBallSet remove_heterogeneous_overlap(GranularBallSet gbs, const Dataset& ds);

/// Index of the first heterogeneous pair still overlapping (by effective radius), if any.
std::optional<std::pair<std::size_t, std::size_t>> find_heterogeneous_overlap(const GranularBallSet& gbs);

}  // namespace gbfrs
