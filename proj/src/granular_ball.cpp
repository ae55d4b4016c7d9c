#include "gbfrs/granular_ball.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "gbfrs/random.hpp"

namespace gbfrs {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

bool by_first_member(const GranularBall& a, const GranularBall& b) {
    return a.members.front() < b.members.front();
}

}  // namespace

CenterRadius compute_center_radius(std::span<const std::span<const double>> points) {
    if (points.empty()) throw Error("cannot compute the center of an empty ball");
    const std::size_t d = points.front().size();
    CenterRadius out{std::vector<double>(d, 0.0), 0.0};
    for (const auto& p : points)
        for (std::size_t k = 0; k < d; ++k) out.center[k] += p[k];
    const auto count = static_cast<double>(points.size());
    for (double& c : out.center) c /= count;
    if (points.size() > 1) {
        for (const auto& p : points) out.radius += distance(p, out.center);
        out.radius /= count;
    }
    return out;
}

CenterRadius compute_center_radius(const Dataset& ds, std::span<const std::size_t> members) {
    std::vector<std::span<const double>> points;
    points.reserve(members.size());
    for (std::size_t i : members) points.push_back(ds.features.row(i));
    return compute_center_radius(points);
}

PurityLabel purity_and_label(std::span<const int> labels) {
    if (labels.empty()) throw Error("purity of an empty ball is undefined");
    const int max_label = *std::max_element(labels.begin(), labels.end());
    std::vector<std::size_t> counts(static_cast<std::size_t>(max_label) + 1, 0);
    for (int y : labels) ++counts[static_cast<std::size_t>(y)];
    // max_element returns the first maximum, i.e. the smallest class id on ties.
    auto best = std::max_element(counts.begin(), counts.end());
    return {static_cast<double>(*best) / static_cast<double>(labels.size()),
            static_cast<int>(best - counts.begin())};
}

GranularBall make_ball(const Dataset& ds, std::vector<std::size_t> members) {
    std::sort(members.begin(), members.end());
    GranularBall ball;
    auto cr = compute_center_radius(ds, members);
    std::vector<int> labels;
    labels.reserve(members.size());
    for (std::size_t i : members) labels.push_back(ds.labels[i]);
    auto pl = purity_and_label(labels);
    ball.members = std::move(members);
    ball.center = std::move(cr.center);
    ball.radius = cr.radius;
    ball.effective_radius = cr.radius;
    ball.purity = pl.purity;
    ball.majority_label = pl.majority_label;
    return ball;
}

bool is_splittable(const GranularBall& ball, const Dataset& ds) {
    if (ball.size() < 2) return false;
    auto first = ds.features.row(ball.members.front());
    for (std::size_t i = 1; i < ball.size(); ++i) {
        auto row = ds.features.row(ball.members[i]);
        if (!std::equal(first.begin(), first.end(), row.begin())) return true;
    }
    return false;
}

std::pair<GranularBall, GranularBall> two_means_split(const GranularBall& ball, const Dataset& ds) {
    if (!is_splittable(ball, ds)) throw Error("non-splittable");
    const auto& members = ball.members;
    const std::size_t count = members.size();

    std::size_t seed_a = 0, seed_b = 1;
    double widest = -1.0;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            double d2 = squared_distance(ds.features.row(members[i]), ds.features.row(members[j]));
            if (d2 > widest) {
                widest = d2;
                seed_a = i;
                seed_b = j;
            }
        }
    }

    auto cent_a = std::vector<double>(ds.features.row(members[seed_a]).begin(),
                                      ds.features.row(members[seed_a]).end());
    auto cent_b = std::vector<double>(ds.features.row(members[seed_b]).begin(),
                                      ds.features.row(members[seed_b]).end());
    std::vector<int> side(count, -1);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<int> next(count);
        std::size_t in_b = 0;
        for (std::size_t i = 0; i < count; ++i) {
            auto p = ds.features.row(members[i]);
            next[i] = squared_distance(p, cent_b) < squared_distance(p, cent_a) ? 1 : 0;
            in_b += static_cast<std::size_t>(next[i]);
        }
        if (in_b == 0 || in_b == count) break;  // degenerate update: keep the previous assignment
        if (next == side) break;
        side = std::move(next);
        std::vector<std::size_t> part_a, part_b;
        for (std::size_t i = 0; i < count; ++i) (side[i] ? part_b : part_a).push_back(members[i]);
        cent_a = compute_center_radius(ds, part_a).center;
        cent_b = compute_center_radius(ds, part_b).center;
    }

    std::vector<std::size_t> part_a, part_b;
    for (std::size_t i = 0; i < count; ++i) (side[i] ? part_b : part_a).push_back(members[i]);
    return {make_ball(ds, std::move(part_a)), make_ball(ds, std::move(part_b))};
}

std::vector<std::vector<std::size_t>> kmeans_partition(const Dataset& ds, std::size_t k, std::uint64_t seed,
                                                       std::size_t max_iterations, double tolerance) {
    const std::size_t n = ds.size();
    const std::size_t d = ds.dimension();
    if (k == 0 || k > n) throw Error("k-means needs 1 <= k <= n");

    Rng rng(seed);
    FeatureMatrix centroids(k, d);
    auto set_centroid = [&](std::size_t c, std::size_t sample) {
        auto src = ds.features.row(sample);
        std::copy(src.begin(), src.end(), centroids.row(c).begin());
    };

    // k-means++ seeding.
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    set_centroid(0, pick(rng));
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(ds.features.row(i), centroids.row(c - 1)));
            total += nearest[i];
        }
        std::size_t chosen = n - 1;
        if (total > 0.0) {
            double target = std::uniform_real_distribution<double>(0.0, total)(rng);
            for (std::size_t i = 0; i < n; ++i) {
                target -= nearest[i];
                if (target < 0.0 && nearest[i] > 0.0) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = pick(rng);
        }
        set_centroid(c, chosen);
    }

    std::vector<std::size_t> assign(n, 0);
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                double d2 = squared_distance(ds.features.row(i), centroids.row(c));
                if (d2 < best) {
                    best = d2;
                    assign[i] = c;
                }
            }
        }
        clusters.assign(k, {});
        for (std::size_t i = 0; i < n; ++i) clusters[assign[i]].push_back(i);

        // Repair empty clusters with the farthest point of the currently largest cluster.
        for (std::size_t c = 0; c < k; ++c) {
            if (!clusters[c].empty()) continue;
            auto largest = std::max_element(clusters.begin(), clusters.end(),
                                             [](const auto& a, const auto& b) { return a.size() < b.size(); });
            const auto donor = static_cast<std::size_t>(largest - clusters.begin());
            auto& pool = *largest;
            std::size_t far_pos = 0;
            double far = -1.0;
            for (std::size_t p = 0; p < pool.size(); ++p) {
                double d2 = squared_distance(ds.features.row(pool[p]), centroids.row(donor));
                if (d2 > far) {
                    far = d2;
                    far_pos = p;
                }
            }
            const std::size_t moved = pool[far_pos];
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(far_pos));
            clusters[c].push_back(moved);
            assign[moved] = c;
        }

        double movement = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            auto center = compute_center_radius(ds, clusters[c]).center;
            movement = std::max(movement, std::sqrt(squared_distance(center, centroids.row(c))));
            std::copy(center.begin(), center.end(), centroids.row(c).begin());
        }
        if (movement < tolerance) break;
    }
    return clusters;
}

namespace {

std::vector<GranularBall> split_until_pure(std::vector<GranularBall> work, double threshold, const Dataset& ds) {
    std::deque<GranularBall> queue(std::make_move_iterator(work.begin()), std::make_move_iterator(work.end()));
    std::vector<GranularBall> done;
    while (!queue.empty()) {
        GranularBall ball = std::move(queue.front());
        queue.pop_front();
        if (ball.purity < threshold && is_splittable(ball, ds)) {
            auto [left, right] = two_means_split(ball, ds);
            queue.push_back(std::move(left));
            queue.push_back(std::move(right));
        } else {
            done.push_back(std::move(ball));
        }
    }
    return done;
}

}  // namespace

GranularBallSet singleton_balls(const Dataset& ds) {
    GranularBallSet gbs;
    gbs.source_n = ds.size();
    gbs.purity_threshold = 1.0;
    gbs.balls.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) gbs.balls.push_back(make_ball(ds, {i}));
    return gbs;
}

std::size_t initial_ball_count(std::size_t n, InitialCount rounding) {
    const double root = std::sqrt(static_cast<double>(n));
    auto k = static_cast<std::size_t>(rounding == InitialCount::ceil_sqrt ? std::ceil(root) : std::floor(root));
    return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(n, 1));
}

GranularBallSet generate(const Dataset& ds, double purity_threshold, std::uint64_t seed,
                         const BallOptions& options) {
    if (!(purity_threshold > 0.0 && purity_threshold <= 1.0)) throw Error("purity must be in (0,1]");
    ds.validate();
    if (options.singleton_balls) {
        auto gbs = singleton_balls(ds);
        gbs.purity_threshold = purity_threshold;
        return gbs;
    }

    std::vector<GranularBall> initial;
    for (auto& cluster : kmeans_partition(ds, initial_ball_count(ds.size(), options.initial_count), seed)) initial.push_back(make_ball(ds, std::move(cluster)));

    GranularBallSet gbs;
    gbs.source_n = ds.size();
    gbs.purity_threshold = purity_threshold;
    gbs.balls = split_until_pure(std::move(initial), purity_threshold, ds);
    std::sort(gbs.balls.begin(), gbs.balls.end(), by_first_member);
    if (options.remove_overlap) gbs = remove_heterogeneous_overlap(std::move(gbs), ds);
    return gbs;
}

bool heterogeneous_overlap(const GranularBall& a, const GranularBall& b) {
    if (a.majority_label == b.majority_label) return false;
    return distance(a.center, b.center) < a.effective_radius + b.effective_radius;
}

std::optional<std::pair<std::size_t, std::size_t>> find_heterogeneous_overlap(const GranularBallSet& gbs) {
    for (std::size_t i = 0; i < gbs.size(); ++i)
        for (std::size_t j = i + 1; j < gbs.size(); ++j)
            if (heterogeneous_overlap(gbs.balls[i], gbs.balls[j])) return std::pair{i, j};
    return std::nullopt;
}

GranularBallSet remove_heterogeneous_overlap(GranularBallSet gbs, const Dataset& ds) {
    auto& balls = gbs.balls;
    const std::size_t max_rounds = 10 * std::max<std::size_t>(balls.size(), 1);

    for (std::size_t round = 0; round < max_rounds; ++round) {
        std::vector<char> splittable(balls.size());
        for (std::size_t i = 0; i < balls.size(); ++i) splittable[i] = is_splittable(balls[i], ds);

        // One round: every offending pair nominates a ball to split; each ball splits at most once.
        std::vector<char> marked(balls.size(), 0);
        bool any = false;
        for (std::size_t i = 0; i < balls.size(); ++i) {
            for (std::size_t j = i + 1; j < balls.size(); ++j) {
                if (!heterogeneous_overlap(balls[i], balls[j])) continue;
                const auto& bi = balls[i];
                const auto& bj = balls[j];
                std::size_t first = i, second = j;
                if (bj.purity < bi.purity || (bj.purity == bi.purity && bj.radius > bi.radius)) std::swap(first, second);
                std::size_t offender = splittable[first] ? first : second;
                if (!splittable[offender]) continue;
                marked[offender] = 1;
                any = true;
            }
        }
        if (!any) break;

        std::vector<GranularBall> next;
        next.reserve(balls.size() + 8);
        for (std::size_t i = 0; i < balls.size(); ++i) {
            if (!marked[i]) {
                next.push_back(std::move(balls[i]));
                continue;
            }
            auto [left, right] = two_means_split(balls[i], ds);
            std::vector<GranularBall> children;
            children.push_back(std::move(left));
            children.push_back(std::move(right));
            for (auto& child : split_until_pure(std::move(children), gbs.purity_threshold, ds))
                next.push_back(std::move(child));
        }
        balls = std::move(next);
        std::sort(balls.begin(), balls.end(), by_first_member);
    }

    // Fallback for pairs that no split could separate: shrink the reported radii only.
    for (std::size_t i = 0; i < balls.size(); ++i) {
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            if (!heterogeneous_overlap(balls[i], balls[j])) continue;
            const double half = 0.5 * distance(balls[i].center, balls[j].center);
            balls[i].effective_radius = std::min(balls[i].effective_radius, half);
            balls[j].effective_radius = std::min(balls[j].effective_radius, half);
        }
    }
    return gbs;
}

}  // namespace gbfrs
