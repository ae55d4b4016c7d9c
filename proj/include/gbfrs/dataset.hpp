#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gbfrs {

/// Raised for malformed input or violated preconditions anywhere in the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense row-major n x d matrix of reals.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

    const std::vector<double>& values() const noexcept { return data_; }

    bool operator==(const FeatureMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Per-column statistics captured by min-max normalization, reusable on held-out rows.
struct MinMaxScaler {
    std::vector<double> min;
    std::vector<double> max;

    bool operator==(const MinMaxScaler&) const = default;
};

/// Labeled tabular data. Labels are contiguous class ids in [0, class_count).
struct Dataset {
    FeatureMatrix features;
    std::vector<int> labels;
    std::vector<std::string> attribute_names;
    /// class_names[id] is the original label text; ids follow first appearance in the source.
    std::vector<std::string> class_names;
    int class_count = 0;
    /// Set once the features have been min-max normalized.
    std::optional<MinMaxScaler> scaler;
    /// Non-fatal load diagnostics (e.g. a single-row file).
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t dimension() const noexcept { return features.cols(); }

    /// Throws Error when the structural invariants do not hold.
    void validate() const;

    bool operator==(const Dataset&) const = default;
};

/// Either a zero-based column index or a header name. An empty name selects the last column.
using LabelColumn = std::variant<std::size_t, std::string>;

struct CsvOptions {
    bool header = true;
    LabelColumn label_column = std::string{};
};

Dataset load_csv(const std::string& path, const CsvOptions& options = {});
/// Same as load_csv but reads from an in-memory buffer; `source` names it in error messages.
Dataset parse_csv(const std::string& text, const CsvOptions& options = {},
                  const std::string& source = "<memory>");

MinMaxScaler fit_min_max(const Dataset& ds);
/// Applies x -> (x - min) / (max - min), clipped to [0, 1]. Constant columns become 0.
Dataset apply_min_max(const Dataset& ds, const MinMaxScaler& scaler);
Dataset normalize_min_max(const Dataset& ds);

Dataset inject_label_noise(const Dataset& ds, double rate, std::uint64_t seed);
Dataset inject_attribute_noise(const Dataset& ds, double rate, std::uint64_t seed);

/// Rows of `ds` picked by `indices`, in that order. Class names and count are kept.
Dataset subset_rows(const Dataset& ds, std::span<const std::size_t> indices);

struct FoldSplit {
    std::vector<std::vector<std::size_t>> folds;

    std::size_t size() const noexcept { return folds.size(); }
    /// Indices of every fold except `fold`, ascending.
    std::vector<std::size_t> training_indices(std::size_t fold) const;

    bool operator==(const FoldSplit&) const = default;
};

FoldSplit kfold_split(const Dataset& ds, std::size_t k, std::uint64_t seed, bool stratified = true);

/// Synthetic two-class data: `informative` dimensions carry Gaussian clusters whose means
/// differ by `separation`, the remaining `noise_dims` are uniform [0, 1] noise.
Dataset make_two_clusters(std::size_t n, std::size_t informative, std::size_t noise_dims,
                          double separation, std::uint64_t seed);

}  // namespace gbfrs
