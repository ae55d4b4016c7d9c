#include "gbfrs/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numeric>

#include "gbfrs/random.hpp"

namespace gbfrs {

std::string to_string(Method method) {
    switch (method) {
        case Method::gbfrs: return "gbfrs";
        case Method::classic_frs: return "classic-frs";
        case Method::all_features: return "all-features";
    }
    return "unknown";
}

Method parse_method(const std::string& text) {
    if (text == "gbfrs") return Method::gbfrs;
    if (text == "classic-frs" || text == "classic") return Method::classic_frs;
    if (text == "all-features" || text == "all") return Method::all_features;
    throw Error("unknown method '" + text + "'");
}

std::string to_string(NoiseKind kind) { return kind == NoiseKind::label ? "label" : "attribute"; }

NoiseKind parse_noise_kind(const std::string& text) {
    if (text == "label") return NoiseKind::label;
    if (text == "attribute") return NoiseKind::attribute;
    throw Error("noise kind must be 'label' or 'attribute'");
}

std::vector<double> default_purity_grid() {
    std::vector<double> grid;
    for (int pct = 60; pct <= 100; pct += 5) grid.push_back(pct / 100.0);
    return grid;
}

std::vector<double> default_noise_levels() {
    std::vector<double> levels;
    for (int pct = 0; pct <= 30; pct += 5) levels.push_back(pct / 100.0);
    return levels;
}

void ExperimentConfig::validate() const {
    if (folds < 2) throw Error("folds must be at least 2");
    if (inner_folds < 2) throw Error("inner folds must be at least 2");
    if (knn_k < 1) throw Error("knn k must be at least 1");
    if (purity_grid.empty()) throw Error("purity grid must not be empty");
    for (double t : purity_grid)
        if (!(t > 0.0 && t <= 1.0)) throw Error("purity must be in (0,1]");
    if (noise_levels.empty()) throw Error("noise levels must not be empty");
    for (double r : noise_levels)
        if (!(r >= 0.0 && r < 1.0)) throw Error("noise level must be in [0,1)");
    if (seeds.empty()) throw Error("at least one seed is required");
    if (methods.empty()) throw Error("at least one method is required");
    if (c_mode.fixed && !(c_mode.value > 0.0)) throw Error("fixed C must be positive");
}

std::vector<int> knn_predict(const Dataset& train, const Dataset& test, const AttributeSubset& subset, std::size_t k) {
    if (k == 0) throw Error("knn k must be at least 1");
    if (k > train.size()) throw Error("knn k exceeds the training set size");
    subset.check_within(train.dimension());
    const int classes = std::max(train.class_count, test.class_count);

    std::vector<std::pair<double, std::size_t>> dist(train.size());
    std::vector<int> votes(static_cast<std::size_t>(std::max(classes, 1)));
    std::vector<int> out;
    out.reserve(test.size());
    for (std::size_t q = 0; q < test.size(); ++q) {
        for (std::size_t i = 0; i < train.size(); ++i) {
            double s = 0.0;
            for (std::size_t a : subset) {
                const double diff = train.features(i, a) - test.features(q, a);
                s += diff * diff;
            }
            dist[i] = {s, i};
        }
        // Pairs order by (distance, index), which is the required tie-break.
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
        std::fill(votes.begin(), votes.end(), 0);
        for (std::size_t r = 0; r < k; ++r) ++votes[static_cast<std::size_t>(train.labels[dist[r].second])];
        out.push_back(static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin()));
    }
    return out;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size()) throw Error("prediction and truth lengths differ");
    if (truth.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

namespace {

std::uint64_t permille(double rate) { return static_cast<std::uint64_t>(std::llround(rate * 1000.0)); }

AttributeSubset gbfrs_subset(const Dataset& train, double threshold, std::uint64_t seed, const ExperimentConfig& cfg) {
    auto gbs = generate(train, threshold, seed, cfg.ball_options);
    SelectionOptions opts;
    opts.c_mode = cfg.c_mode;
    return forward_select(granules_of(gbs), SelectionMode::granular_ball, opts).subset();
}

}  // namespace

GridSearchResult purity_grid_search(const Dataset& train, std::span<const double> grid, std::uint64_t seed,
                                    const ExperimentConfig& cfg) {
    if (grid.empty()) throw Error("purity grid must not be empty");
    GridSearchResult result;
    result.thresholds.assign(grid.begin(), grid.end());
    if (grid.size() == 1) {
        result.best_threshold = grid.front();
        result.accuracies = {std::numeric_limits<double>::quiet_NaN()};
        return result;
    }

    const std::size_t inner = std::min(cfg.inner_folds, train.size());
    if (inner < 2) {
        result.best_threshold = *std::max_element(grid.begin(), grid.end());
        result.accuracies.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());
        return result;
    }
    const auto split = kfold_split(train, inner, derive_seed(seed, {stream_id("inner-folds")}), cfg.stratified);
    std::vector<Dataset> inner_train, inner_test;
    for (std::size_t f = 0; f < inner; ++f) {
        auto tr = subset_rows(train, split.training_indices(f));
        auto te = subset_rows(train, split.folds[f]);
        auto scaler = fit_min_max(tr);
        inner_train.push_back(apply_min_max(tr, scaler));
        inner_test.push_back(apply_min_max(te, scaler));
    }

    for (std::size_t g = 0; g < grid.size(); ++g) {
        double total = 0.0;
        for (std::size_t f = 0; f < inner; ++f) {
            const auto& tr = inner_train[f];
            const auto subset = gbfrs_subset(tr, grid[g], derive_seed(seed, {stream_id("inner"), f}), cfg);
            const auto pred = knn_predict(tr, inner_test[f], subset, std::min(cfg.knn_k, tr.size()));
            total += accuracy(pred, inner_test[f].labels);
        }
        result.accuracies.push_back(total / static_cast<double>(inner));
    }

    std::size_t best = 0;
    for (std::size_t g = 1; g < grid.size(); ++g) {
        const double a = result.accuracies[g], b = result.accuracies[best];
        if (a > b || (a == b && grid[g] > grid[best])) best = g;
    }
    result.best_threshold = grid[best];
    return result;
}

AttributeSubset select_for_method(const Dataset& train, Method method, const ExperimentConfig& cfg,
                                  std::uint64_t seed, double* threshold) {
    switch (method) {
        case Method::all_features:
            return AttributeSubset::all(train.dimension());
        case Method::classic_frs: {
            SelectionOptions opts;
            opts.c_mode = cfg.c_mode;
            return forward_select(granules_of(train), SelectionMode::classic_point, opts).subset();
        }
        case Method::gbfrs: {
            const double t = purity_grid_search(train, cfg.purity_grid, seed, cfg).best_threshold;
            if (threshold) *threshold = t;
            return gbfrs_subset(train, t, seed, cfg);
        }
    }
    throw Error("unknown method");
}

CellStats cross_validate(const Dataset& ds, const std::string& dataset_id, const ExperimentConfig& cfg,
                         Method method, double noise) {
    cfg.validate();
    ds.validate();
    const auto started = std::chrono::steady_clock::now();
    const std::uint64_t data_stream = stream_id(dataset_id);

    CellStats cell;
    cell.dataset = dataset_id;
    cell.method = method;
    cell.noise_kind = cfg.noise_kind;
    cell.noise = noise;

    for (std::uint64_t seed : cfg.seeds) {
        const auto split = kfold_split(ds, cfg.folds, derive_seed(seed, {data_stream, stream_id("folds")}),
                                       cfg.stratified);
        for (std::size_t f = 0; f < split.size(); ++f) {
            // The noise stream omits the method so every method sees the same corrupted training fold.
            const auto noise_seed = derive_seed(
                seed, {data_stream, stream_id("noise"), stream_id(to_string(cfg.noise_kind)), permille(noise), f});
            const auto method_seed =
                derive_seed(seed, {data_stream, stream_id(to_string(method)), permille(noise), f});

            auto train_raw = subset_rows(ds, split.training_indices(f));
            const auto test_raw = subset_rows(ds, split.folds[f]);
            if (cfg.noise_kind == NoiseKind::label) train_raw = inject_label_noise(train_raw, noise, noise_seed);
            const auto scaler = fit_min_max(train_raw);
            auto train = apply_min_max(train_raw, scaler);
            const auto test = apply_min_max(test_raw, scaler);
            if (cfg.noise_kind == NoiseKind::attribute) train = inject_attribute_noise(train, noise, noise_seed);

            FoldOutcome run;
            run.seed = seed;
            run.fold = f;
            double threshold = 0.0;
            const auto subset = select_for_method(train, method, cfg, method_seed, &threshold);
            const auto pred = knn_predict(train, test, subset, std::min(cfg.knn_k, train.size()));
            run.accuracy = accuracy(pred, test.labels);
            run.subset_size = subset.size();
            run.purity_threshold = threshold;
            run.test_noise_free = test.labels == test_raw.labels;
            cell.runs.push_back(run);
        }
    }

    const auto count = static_cast<double>(cell.runs.size());
    double sum = 0.0, size_sum = 0.0, t_sum = 0.0;
    for (const auto& r : cell.runs) {
        sum += r.accuracy;
        size_sum += static_cast<double>(r.subset_size);
        t_sum += r.purity_threshold;
    }
    cell.mean_accuracy = sum / count;
    double var = 0.0;
    for (const auto& r : cell.runs) var += (r.accuracy - cell.mean_accuracy) * (r.accuracy - cell.mean_accuracy);
    cell.std_accuracy = std::sqrt(var / count);
    cell.mean_subset_size = size_sum / count;
    cell.mean_purity_threshold = t_sum / count;
    if (cfg.record_timing)
        cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return cell;
}

EvaluationReport noise_sweep(const Dataset& ds, const std::string& dataset_id, const ExperimentConfig& cfg) {
    cfg.validate();
    EvaluationReport report;
    report.config = cfg;
    for (Method m : cfg.methods)
        for (double noise : cfg.noise_levels) report.cells.push_back(cross_validate(ds, dataset_id, cfg, m, noise));
    return report;
}

}  // namespace gbfrs
