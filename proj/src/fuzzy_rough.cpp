#include "gbfrs/fuzzy_rough.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gbfrs {

AttributeSubset::AttributeSubset(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    auto sorted = indices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error("attribute subset contains a duplicate index");
}

AttributeSubset AttributeSubset::all(std::size_t d) {
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return AttributeSubset(std::move(idx));
}

bool AttributeSubset::contains(std::size_t a) const {
    return std::find(indices_.begin(), indices_.end(), a) != indices_.end();
}

AttributeSubset AttributeSubset::with(std::size_t a) const {
    if (contains(a)) throw Error("attribute " + std::to_string(a) + " already in subset");
    auto idx = indices_;
    idx.push_back(a);
    return AttributeSubset(std::move(idx));
}

AttributeSubset AttributeSubset::without(std::size_t a) const {
    auto idx = indices_;
    idx.erase(std::remove(idx.begin(), idx.end(), a), idx.end());
    return AttributeSubset(std::move(idx));
}

void AttributeSubset::check_within(std::size_t d) const {
    if (indices_.empty()) throw Error("attribute subset must be nonempty");
    for (std::size_t a : indices_)
        if (a >= d) throw Error("attribute index " + std::to_string(a) + " out of range");
}

double subset_distance(std::span<const double> x, std::span<const double> y, const AttributeSubset& subset) {
    double s = 0.0;
    for (std::size_t a : subset) {
        const double diff = x[a] - y[a];
        s += diff * diff;
    }
    return std::sqrt(s);
}

GranuleTable granules_of(const GranularBallSet& gbs) {
    GranuleTable t;
    const std::size_t m = gbs.size();
    const std::size_t d = m ? gbs.balls.front().center.size() : 0;
    t.centers = FeatureMatrix(m, d);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& b = gbs.balls[i];
        std::copy(b.center.begin(), b.center.end(), t.centers.row(i).begin());
        t.labels.push_back(b.majority_label);
        t.weights.push_back(static_cast<double>(b.size()));
    }
    t.source_n = gbs.source_n;
    return t;
}

GranuleTable granules_of(const Dataset& ds) {
    GranuleTable t;
    t.centers = ds.features;
    t.labels = ds.labels;
    t.weights.assign(ds.size(), 1.0);
    t.source_n = ds.size();
    return t;
}

double ball_similarity(const GranularBall& a, const GranularBall& b, const AttributeSubset& subset, double C) {
    if (!(C > 0.0)) throw Error("distance parameter C must be positive");
    return 1.0 - subset_distance(a.center, b.center, subset) / std::sqrt(C);
}

double lower_approximation(const GranularBallSet& gbs, std::size_t j, int target_class,
                           const AttributeSubset& subset, double C) {
    if (!(C > 0.0)) throw Error("distance parameter C must be positive");
    const auto& cj = gbs.balls.at(j).center;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& bi : gbs.balls)
        if (bi.majority_label != target_class) nearest = std::min(nearest, subset_distance(bi.center, cj, subset));
    return std::isinf(nearest) ? 1.0 : nearest / std::sqrt(C);
}

double upper_approximation(const GranularBallSet& gbs, std::size_t j, int target_class,
                           const AttributeSubset& subset, double C) {
    if (!(C > 0.0)) throw Error("distance parameter C must be positive");
    const auto& bj = gbs.balls.at(j);
    double best = 0.0;
    bool found = false;
    for (const auto& bi : gbs.balls) {
        if (bi.majority_label != target_class) continue;
        const double s = ball_similarity(bi, bj, subset, C);
        best = found ? std::max(best, s) : s;
        found = true;
    }
    return best;
}

std::vector<double> positive_region(const GranularBallSet& gbs, const AttributeSubset& subset, double C) {
    std::vector<double> pos(gbs.size());
    for (std::size_t j = 0; j < gbs.size(); ++j)
        pos[j] = lower_approximation(gbs, j, gbs.balls[j].majority_label, subset, C);
    return pos;
}

namespace {

DependencyResult aggregate(std::vector<double> per_ball, std::span<const double> weights, std::size_t source_n,
                           const AttributeSubset& subset, double C, bool single_class) {
    if (source_n == 0) throw Error("dependency needs a nonempty source universe");
    DependencyResult r;
    double weighted = 0.0, plain = 0.0;
    for (std::size_t i = 0; i < per_ball.size(); ++i) {
        weighted += weights[i] * per_ball[i];
        plain += per_ball[i];
    }
    r.value = weighted / static_cast<double>(source_n);
    r.value_unweighted = per_ball.empty() ? 0.0 : plain / static_cast<double>(per_ball.size());
    r.per_ball = std::move(per_ball);
    r.C = C;
    r.subset = subset;
    r.single_class = single_class;
    return r;
}

bool has_two_labels(std::span<const int> labels) {
    return std::adjacent_find(labels.begin(), labels.end(), std::not_equal_to<>()) != labels.end();
}

}  // namespace

DependencyResult weighted_dependency(const GranularBallSet& gbs, const AttributeSubset& subset, double C) {
    if (!(C > 0.0)) throw Error("distance parameter C must be positive");
    std::vector<double> weights;
    std::vector<int> labels;
    for (const auto& b : gbs.balls) {
        weights.push_back(static_cast<double>(b.size()));
        labels.push_back(b.majority_label);
    }
    return aggregate(positive_region(gbs, subset, C), weights, gbs.source_n, subset, C, !has_two_labels(labels));
}

DependencyResult weighted_dependency(const GranuleTable& table, const AttributeSubset& subset, double C) {
    if (!(C > 0.0)) throw Error("distance parameter C must be positive");
    const std::size_t m = table.size();
    const double scale = std::sqrt(C);
    std::vector<double> pos(m, 1.0);
    for (std::size_t j = 0; j < m; ++j) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i)
            if (table.labels[i] != table.labels[j])
                nearest = std::min(nearest, subset_distance(table.centers.row(i), table.centers.row(j), subset));
        if (!std::isinf(nearest)) pos[j] = nearest / scale;
    }
    return aggregate(std::move(pos), table.weights, table.source_n, subset, C, !has_two_labels(table.labels));
}

DependencyResult classic_dependency(const Dataset& ds, const AttributeSubset& subset, double C) {
    if (!(C > 0.0)) throw Error("distance parameter C must be positive");
    const std::size_t n = ds.size();
    const double scale = std::sqrt(C);
    std::vector<double> pos(n, 1.0);
    for (std::size_t x = 0; x < n; ++x) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t y = 0; y < n; ++y) {
            if (ds.labels[y] == ds.labels[x]) continue;
            nearest = std::min(nearest, subset_distance(ds.features.row(y), ds.features.row(x), subset));
        }
        if (!std::isinf(nearest)) pos[x] = nearest / scale;
    }
    const std::vector<double> ones(n, 1.0);
    return aggregate(std::move(pos), ones, n, subset, C, !has_two_labels(ds.labels));
}

DependencyResult rescale_dependency(const DependencyResult& result, double C_new) {
    if (!(C_new > 0.0)) throw Error("distance parameter C must be positive");
    DependencyResult out = result;
    out.C = C_new;
    if (result.single_class || C_new == result.C) return out;
    const double factor = std::sqrt(result.C / C_new);
    out.value *= factor;
    out.value_unweighted *= factor;
    for (double& p : out.per_ball) p *= factor;
    return out;
}

DependencyEngine::DependencyEngine(GranuleTable table) : table_(std::move(table)) {
    const std::size_t m = table_.size();
    sq_.assign(m * m, 0.0);
    foreign_.resize(m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (table_.labels[i] != table_.labels[j]) foreign_[j].push_back(i);
    single_class_ = !has_two_labels(table_.labels);
}

DependencyResult DependencyEngine::finish(std::vector<double> nearest_sq, AttributeSubset subset, double C) const {
    const double scale = std::sqrt(C);
    for (double& v : nearest_sq) v = std::isinf(v) ? 1.0 : std::sqrt(v) / scale;
    return aggregate(std::move(nearest_sq), table_.weights, table_.source_n, subset, C, single_class_);
}

DependencyResult DependencyEngine::evaluate_with(std::size_t a, double C) const {
    if (!(C > 0.0)) throw Error("distance parameter C must be positive");
    if (a >= table_.centers.cols()) throw Error("attribute index out of range");
    const std::size_t m = table_.size();
    std::vector<double> nearest(m, std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < m; ++j) {
        const double cj = table_.centers(j, a);
        double best = nearest[j];
        for (std::size_t i : foreign_[j]) {
            const double diff = table_.centers(i, a) - cj;
            best = std::min(best, sq_[i * m + j] + diff * diff);
        }
        nearest[j] = best;
    }
    return finish(std::move(nearest), base_.with(a), C);
}

DependencyResult DependencyEngine::evaluate_base(double C) const {
    if (!(C > 0.0)) throw Error("distance parameter C must be positive");
    const std::size_t m = table_.size();
    if (base_.empty()) {
        DependencyResult r;
        r.per_ball.assign(m, 0.0);
        r.C = C;
        return r;
    }
    std::vector<double> nearest(m, std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i : foreign_[j]) nearest[j] = std::min(nearest[j], sq_[i * m + j]);
    return finish(std::move(nearest), base_, C);
}

void DependencyEngine::commit(std::size_t a) {
    base_ = base_.with(a);
    const std::size_t m = table_.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double diff = table_.centers(i, a) - table_.centers(j, a);
            sq_[i * m + j] += diff * diff;
        }
}

}  // namespace gbfrs
