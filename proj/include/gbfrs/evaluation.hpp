#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gbfrs/dataset.hpp"
#include "gbfrs/feature_selection.hpp"
#include "gbfrs/granular_ball.hpp"

namespace gbfrs {

enum class Method { gbfrs, classic_frs, all_features };
std::string to_string(Method method);
Method parse_method(const std::string& text);

enum class NoiseKind { label, attribute };
std::string to_string(NoiseKind kind);
NoiseKind parse_noise_kind(const std::string& text);

/// 0.60, 0.65, ..., 1.00
std::vector<double> default_purity_grid();
/// 0, 0.05, ..., 0.30
std::vector<double> default_noise_levels();

struct ExperimentConfig {
    std::vector<double> purity_grid = default_purity_grid();
    std::vector<double> noise_levels = default_noise_levels();
    NoiseKind noise_kind = NoiseKind::label;
    std::size_t folds = 5;
    std::size_t inner_folds = 3;
    std::size_t knn_k = 3;
    std::vector<std::uint64_t> seeds = {1};
    std::vector<Method> methods = {Method::gbfrs, Method::classic_frs, Method::all_features};
    CMode c_mode;
    bool stratified = true;
    BallOptions ball_options;
    /// Wall-clock timings make reports non-reproducible byte for byte; off zeroes them.
    bool record_timing = true;

    /// Throws Error on out-of-range settings.
    void validate() const;
};

/// Majority vote among the k nearest training rows (Euclidean over `subset`). Distance ties go
/// to the smaller training index, vote ties to the smaller class id.
std::vector<int> knn_predict(const Dataset& train, const Dataset& test, const AttributeSubset& subset, std::size_t k);

double accuracy(std::span<const int> predicted, std::span<const int> truth);

struct GridSearchResult {
    double best_threshold = 1.0;
    std::vector<double> thresholds;
    std::vector<double> accuracies;
};

/// Chooses the purity threshold whose granular-ball selection gives the best inner k-fold kNN
/// accuracy on `train`. Ties go to the larger threshold.
GridSearchResult purity_grid_search(const Dataset& train, std::span<const double> grid, std::uint64_t seed,
                                    const ExperimentConfig& cfg);

/// Attribute subset chosen by `method` on normalized training data. `threshold` receives the
/// purity threshold used (gbfrs only).
AttributeSubset select_for_method(const Dataset& train, Method method, const ExperimentConfig& cfg,
                                  std::uint64_t seed, double* threshold = nullptr);

struct FoldOutcome {
    std::uint64_t seed = 0;
    std::size_t fold = 0;
    double accuracy = 0.0;
    std::size_t subset_size = 0;
    double purity_threshold = 0.0;  // 0 when the method does not build balls
    bool test_noise_free = true;
};

struct CellStats {
    std::string dataset;
    Method method = Method::all_features;
    NoiseKind noise_kind = NoiseKind::label;
    double noise = 0.0;
    std::vector<FoldOutcome> runs;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    double mean_subset_size = 0.0;
    double mean_purity_threshold = 0.0;
    double seconds = 0.0;
};

/// Outer k-fold CV of one method at one noise level, repeated for every seed in cfg.seeds.
/// Noise touches training folds only; each fold is normalized with its training statistics.
CellStats cross_validate(const Dataset& ds, const std::string& dataset_id, const ExperimentConfig& cfg,
                         Method method, double noise);

struct EvaluationReport {
    ExperimentConfig config;
    std::vector<CellStats> cells;  // ordered by (method as listed in config, noise level)
};

EvaluationReport noise_sweep(const Dataset& ds, const std::string& dataset_id, const ExperimentConfig& cfg);

}  // namespace gbfrs
