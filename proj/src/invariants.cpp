#include "gbfrs/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gbfrs/feature_selection.hpp"
#include "gbfrs/random.hpp"

namespace gbfrs {

std::vector<std::string> ball_set_violations(const GranularBallSet& gbs, const Dataset& ds) {
    std::vector<std::string> problems;
    auto report = [&](std::size_t b, const std::string& what) {
        problems.push_back("ball " + std::to_string(b) + ": " + what);
    };
    if (gbs.source_n != ds.size()) problems.push_back("source_n differs from dataset size");

    std::vector<int> owner(ds.size(), -1);
    for (std::size_t b = 0; b < gbs.size(); ++b) {
        const auto& ball = gbs.balls[b];
        if (ball.members.empty()) {
            report(b, "empty");
            continue;
        }
        for (std::size_t i : ball.members) {
            if (i >= ds.size()) {
                report(b, "member out of range");
                continue;
            }
            if (owner[i] != -1) report(b, "sample " + std::to_string(i) + " also in ball " + std::to_string(owner[i]));
            owner[i] = static_cast<int>(b);
        }
        auto cr = compute_center_radius(ds, ball.members);
        double center_err = 0.0;
        for (std::size_t k = 0; k < cr.center.size(); ++k)
            center_err = std::max(center_err, std::abs(cr.center[k] - ball.center[k]));
        if (center_err > 1e-9) report(b, "center is not the member mean");
        if (std::abs(cr.radius - ball.radius) > 1e-9) report(b, "radius is not the mean member distance");

        std::vector<int> labels;
        for (std::size_t i : ball.members) labels.push_back(ds.labels[i]);
        auto pl = purity_and_label(labels);
        if (std::abs(pl.purity - ball.purity) > 1e-12 || pl.majority_label != ball.majority_label)
            report(b, "purity or majority label mismatch");
        if (ball.purity < gbs.purity_threshold && is_splittable(ball, ds))
            report(b, "purity below threshold but still splittable");
    }
    for (std::size_t i = 0; i < owner.size(); ++i)
        if (owner[i] == -1) problems.push_back("sample " + std::to_string(i) + " not covered");
    return problems;
}

double center_projection_error(const GranularBallSet& gbs, const Dataset& ds, const AttributeSubset& subset) {
    double worst = 0.0;
    for (const auto& ball : gbs.balls) {
        std::vector<std::vector<double>> projected;
        for (std::size_t i : ball.members) {
            std::vector<double> p;
            for (std::size_t a : subset) p.push_back(ds.features(i, a));
            projected.push_back(std::move(p));
        }
        std::vector<std::span<const double>> views(projected.begin(), projected.end());
        auto cr = compute_center_radius(views);
        std::size_t k = 0;
        for (std::size_t a : subset) worst = std::max(worst, std::abs(cr.center[k++] - ball.center[a]));
    }
    return worst;
}

AttributeSubset random_subset(std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::size_t> all(d);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::shuffle(all.begin(), all.end(), rng);
    const auto size = std::uniform_int_distribution<std::size_t>(1, d)(rng);
    all.resize(size);
    return AttributeSubset(std::move(all));
}

namespace {

struct Tracker {
    explicit Tracker(std::string name) { result.name = std::move(name); }
    CheckResult result;
    void error(double e, double tol) {
        result.max_error = std::max(result.max_error, e);
        if (!(e <= tol)) result.passed = false;
    }
    void fail(const std::string& why) {
        result.passed = false;
        if (result.detail.empty()) result.detail = why;
    }
};

// Random B1 strictly inside B2 (B1 nonempty), both as index lists.
std::pair<AttributeSubset, AttributeSubset> nested_pair(std::size_t d, Rng& rng) {
    std::vector<std::size_t> all(d);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::shuffle(all.begin(), all.end(), rng);
    const auto outer = std::uniform_int_distribution<std::size_t>(std::min<std::size_t>(2, d), d)(rng);
    const auto inner = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, outer - 1))(rng);
    std::vector<std::size_t> big(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(outer));
    std::vector<std::size_t> small(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(inner));
    return {AttributeSubset(std::move(small)), AttributeSubset(std::move(big))};
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(const Dataset& ds, const CheckOptions& options) {
    ds.validate();
    const std::size_t d = ds.dimension();
    const double tol = options.tolerance;

    Tracker balls{"ball construction (partition, purity, projection, determinism)"};
    Tracker self_zero{"foreign-class lower approximation is zero"};
    Tracker pos_max{"positive region equals max over classes"};
    Tracker scaling{"dependency scales by sqrt(C1/C2)"};
    Tracker sim_mono{"similarity anti-monotone in attributes (fixed C)"};
    Tracker pos_mono{"positive region monotone (fixed C)"};
    Tracker dep_mono{"dependency monotone (fixed C)"};
    Tracker sig_routes{"significance: iterative equals direct"};
    Tracker sig_positive{"accepted attributes have positive significance"};
    Tracker convergence{"best significance: last round <= first round"};

    std::vector<GranularBallSet> sets;
    for (std::uint64_t seed : options.seeds) {
        for (double t : options.thresholds) {
            auto gbs = generate(ds, t, seed);
            auto again = generate(ds, t, seed);
            if (!(gbs == again)) balls.fail("generate is not deterministic");
            auto problems = ball_set_violations(gbs, ds);
            if (!problems.empty()) balls.fail(problems.front());
            balls.error(center_projection_error(gbs, ds, random_subset(d, seed * 31 + 7)), tol);
            sets.push_back(std::move(gbs));
        }
    }

    Rng rng(derive_seed(options.seeds.front(), {stream_id("checks")}));
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto& gbs = sets[s];
        const auto granules = granules_of(gbs);
        const int classes = ds.class_count;

        const auto full = AttributeSubset::all(d);
        const auto own_region = positive_region(gbs, full, static_cast<double>(d));
        for (std::size_t j = 0; j < gbs.size(); ++j) {
            double best = 0.0;
            for (int c = 0; c < classes; ++c) {
                const double low = lower_approximation(gbs, j, c, full, static_cast<double>(d));
                if (c != gbs.balls[j].majority_label && low != 0.0) self_zero.fail("nonzero foreign lower approximation");
                best = std::max(best, low);
            }
            pos_max.error(std::abs(own_region[j] - best), 0.0);
        }

        for (std::size_t r = 0; r < options.random_subsets; ++r) {
            const auto subset = random_subset(d, rng());
            const double c1 = std::uniform_real_distribution<double>(0.5, 2.0 * static_cast<double>(d))(rng);
            const double c2 = std::uniform_real_distribution<double>(0.5, 2.0 * static_cast<double>(d))(rng);
            const auto w1 = weighted_dependency(gbs, subset, c1);
            const auto w2 = weighted_dependency(gbs, subset, c2);
            if (!w1.single_class) scaling.error(std::abs(w2.value - std::sqrt(c1 / c2) * w1.value), tol);

            if (subset.size() < d) {
                std::size_t a = 0;
                while (subset.contains(a)) ++a;
                sig_routes.error(std::abs(significance(a, subset, granules) - significance_direct(a, subset, granules)),
                                 tol);
            }
        }

        const double fixed_C = static_cast<double>(d);
        const std::size_t pairs = std::max<std::size_t>(1, options.nested_pairs / sets.size());
        for (std::size_t p = 0; p < pairs && d >= 2; ++p) {
            auto [small, big] = nested_pair(d, rng);
            for (std::size_t i = 0; i < gbs.size(); ++i)
                for (std::size_t j = i; j < gbs.size(); ++j) {
                    const double diff = ball_similarity(gbs.balls[i], gbs.balls[j], big, fixed_C) -
                                        ball_similarity(gbs.balls[i], gbs.balls[j], small, fixed_C);
                    sim_mono.error(std::max(0.0, diff), tol);
                }
            const auto ps = weighted_dependency(gbs, small, fixed_C);
            const auto pb = weighted_dependency(gbs, big, fixed_C);
            for (std::size_t j = 0; j < gbs.size(); ++j) pos_mono.error(std::max(0.0, ps.per_ball[j] - pb.per_ball[j]), tol);
            dep_mono.error(std::max(0.0, ps.value - pb.value), tol);
        }

        for (auto mode : {SelectionMode::granular_ball, SelectionMode::classic_point}) {
            const auto trace = forward_select(gbs, ds, mode);
            for (double sig : trace.significance_path)
                if (!(sig > 0.0)) sig_positive.fail("non-positive significance on an accepted step");
            if (!trace.best_significance.empty() &&
                trace.best_significance.back() > trace.best_significance.front())
                convergence.fail("last best significance exceeds the first");
            if (mode == SelectionMode::classic_point) break;  // classic traces do not depend on the ball set
        }
    }

    Tracker singletons{"singleton balls reproduce point-level dependency"};
    const auto singles = singleton_balls(ds);
    for (std::size_t r = 0; r < options.random_subsets; ++r) {
        const auto subset = random_subset(d, rng());
        const double C = static_cast<double>(subset.size());
        singletons.error(
            std::abs(weighted_dependency(singles, subset, C).value - classic_dependency(ds, subset, C).value), 1e-10);
    }

    std::vector<CheckResult> out;
    for (auto* t : {&balls, &singletons, &scaling, &sim_mono, &pos_mono, &dep_mono, &self_zero, &pos_max, &sig_routes,
                    &sig_positive, &convergence}) {
        if (t->result.detail.empty()) {
            std::ostringstream os;
            os << "max error " << t->result.max_error;
            t->result.detail = os.str();
        }
        out.push_back(std::move(t->result));
    }
    return out;
}

}  // namespace gbfrs
