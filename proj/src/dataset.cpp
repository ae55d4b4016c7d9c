#include "gbfrs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "gbfrs/random.hpp"

namespace gbfrs {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error("feature matrix size mismatch");
}

void Dataset::validate() const {
    if (labels.empty()) throw Error("empty dataset");
    if (features.cols() == 0) throw Error("dataset has no feature columns");
    if (features.rows() != labels.size()) throw Error("feature rows and labels differ in length");
    if (attribute_names.size() != features.cols())
        throw Error("attribute name count does not match feature columns");
    if (class_count < 1) throw Error("class count must be positive");
    for (int y : labels)
        if (y < 0 || y >= class_count) throw Error("label outside [0, class_count)");
}

namespace {

std::string trim(std::string_view s) {
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// Comma split honoring double-quoted fields ("" escapes a quote).
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    out.push_back(trim(cell));
    return out;
}

std::optional<double> parse_real(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const char* begin = s.data();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::size_t resolve_label_column(const CsvOptions& options, const std::vector<std::string>& header,
                                 std::size_t arity, const std::string& source) {
    if (const auto* idx = std::get_if<std::size_t>(&options.label_column)) {
        if (*idx >= arity)
            throw Error(source + ": label column " + std::to_string(*idx) + " out of range");
        return *idx;
    }
    const auto& name = std::get<std::string>(options.label_column);
    if (name.empty()) return arity - 1;
    if (options.header) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
    }
    if (std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isdigit(c); })) {
        std::size_t idx = std::stoul(name);
        if (idx < arity) return idx;
    }
    throw Error(source + ": label column '" + name + "' not found");
}

}  // namespace

Dataset parse_csv(const std::string& text, const CsvOptions& options, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
    std::vector<std::string> header;
    std::size_t line_no = 0;
    bool header_pending = options.header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (header_pending) {
            header = std::move(cells);
            header_pending = false;
            continue;
        }
        rows.push_back(std::move(cells));
        line_numbers.push_back(line_no);
    }
    if (rows.empty()) throw Error(source + ": empty dataset");

    const std::size_t arity = options.header ? header.size() : rows.front().size();
    if (arity < 2) throw Error(source + ": need at least one feature column and a label column");
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != arity)
            throw Error(source + ":" + std::to_string(line_numbers[r]) + ": expected " +
                        std::to_string(arity) + " cells, found " + std::to_string(rows[r].size()));
    }
    const std::size_t label_col = resolve_label_column(options, header, arity, source);

    Dataset ds;
    const std::size_t n = rows.size();
    const std::size_t d = arity - 1;
    for (std::size_t c = 0; c < arity; ++c) {
        if (c == label_col) continue;
        ds.attribute_names.push_back(options.header ? header[c] : "a" + std::to_string(c));
    }
    std::vector<double> values;
    values.reserve(n * d);
    std::map<std::string, int> class_ids;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < arity; ++c) {
            const std::string& cell = rows[r][c];
            if (cell.empty())
                throw Error(source + ":" + std::to_string(line_numbers[r]) + ": missing value in column " +
                            std::to_string(c));
            if (c == label_col) continue;
            auto v = parse_real(cell);
            if (!v)
                throw Error(source + ":" + std::to_string(line_numbers[r]) + ": non-numeric feature '" +
                            cell + "' in column " + std::to_string(c));
            values.push_back(*v);
        }
        const std::string& label = rows[r][label_col];
        auto [it, inserted] = class_ids.try_emplace(label, static_cast<int>(ds.class_names.size()));
        if (inserted) ds.class_names.push_back(label);
        ds.labels.push_back(it->second);
    }
    ds.features = FeatureMatrix(n, d, std::move(values));
    ds.class_count = static_cast<int>(ds.class_names.size());
    if (n == 1) ds.warnings.push_back(source + ": dataset has a single row");
    ds.validate();
    return ds;
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), options, path);
}

MinMaxScaler fit_min_max(const Dataset& ds) {
    const std::size_t d = ds.dimension();
    MinMaxScaler s{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    if (ds.size() == 0) return s;
    for (std::size_t c = 0; c < d; ++c) {
        double lo = ds.features(0, c), hi = lo;
        for (std::size_t r = 1; r < ds.size(); ++r) {
            lo = std::min(lo, ds.features(r, c));
            hi = std::max(hi, ds.features(r, c));
        }
        s.min[c] = lo;
        s.max[c] = hi;
    }
    return s;
}

Dataset apply_min_max(const Dataset& ds, const MinMaxScaler& scaler) {
    if (scaler.min.size() != ds.dimension() || scaler.max.size() != ds.dimension())
        throw Error("scaler dimension does not match dataset");
    Dataset out = ds;
    for (std::size_t c = 0; c < ds.dimension(); ++c) {
        const double lo = scaler.min[c];
        const double range = scaler.max[c] - lo;
        for (std::size_t r = 0; r < ds.size(); ++r) {
            double& x = out.features(r, c);
            x = range > 0.0 ? std::clamp((x - lo) / range, 0.0, 1.0) : 0.0;
        }
    }
    out.scaler = scaler;
    return out;
}

Dataset normalize_min_max(const Dataset& ds) { return apply_min_max(ds, fit_min_max(ds)); }

Dataset inject_label_noise(const Dataset& ds, double rate, std::uint64_t seed) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw Error("label noise rate must be in [0, 1]");
    // Guard against products like 0.29 * 100 = 28.999999999999996.
    const auto count = static_cast<std::size_t>(std::floor(rate * static_cast<double>(ds.size()) + 1e-9));
    if (count == 0) return ds;
    if (ds.class_count < 2) throw Error("cannot flip single-class labels");

    Rng rng(seed);
    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    Dataset out = ds;
    std::uniform_int_distribution<int> other(0, ds.class_count - 2);
    for (std::size_t i = 0; i < count; ++i) {
        int& y = out.labels[order[i]];
        int replacement = other(rng);
        if (replacement >= y) ++replacement;
        y = replacement;
    }
    return out;
}

Dataset inject_attribute_noise(const Dataset& ds, double rate, std::uint64_t seed) {
    if (!(rate >= 0.0)) throw Error("attribute noise rate must be non-negative");
    if (rate == 0.0) return ds;
    Rng rng(seed);
    std::uniform_real_distribution<double> perturb(-rate, rate);
    Dataset out = ds;
    for (std::size_t r = 0; r < ds.size(); ++r)
        for (double& x : out.features.row(r)) x = std::clamp(x + perturb(rng), 0.0, 1.0);
    return out;
}

Dataset subset_rows(const Dataset& ds, std::span<const std::size_t> indices) {
    Dataset out;
    out.attribute_names = ds.attribute_names;
    out.class_names = ds.class_names;
    out.class_count = ds.class_count;
    out.scaler = ds.scaler;
    const std::size_t d = ds.dimension();
    std::vector<double> values;
    values.reserve(indices.size() * d);
    for (std::size_t i : indices) {
        if (i >= ds.size()) throw Error("row index out of range");
        auto row = ds.features.row(i);
        values.insert(values.end(), row.begin(), row.end());
        out.labels.push_back(ds.labels[i]);
    }
    out.features = FeatureMatrix(indices.size(), d, std::move(values));
    return out;
}

std::vector<std::size_t> FoldSplit::training_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < folds.size(); ++f)
        if (f != fold) out.insert(out.end(), folds[f].begin(), folds[f].end());
    std::sort(out.begin(), out.end());
    return out;
}

FoldSplit kfold_split(const Dataset& ds, std::size_t k, std::uint64_t seed, bool stratified) {
    const std::size_t n = ds.size();
    if (k < 2) throw Error("fold count must be at least 2");
    if (k > n) throw Error("fold count " + std::to_string(k) + " exceeds sample count " + std::to_string(n));

    Rng rng(seed);
    std::vector<std::size_t> order;
    order.reserve(n);
    if (stratified) {
        // Shuffle within each class, then deal the class-grouped sequence round-robin so
        // every class spreads over the folds within one sample of its share.
        for (int cls = 0; cls < ds.class_count; ++cls) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < n; ++i)
                if (ds.labels[i] == cls) members.push_back(i);
            std::shuffle(members.begin(), members.end(), rng);
            order.insert(order.end(), members.begin(), members.end());
        }
    } else {
        order.resize(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
    }

    FoldSplit split;
    split.folds.resize(k);
    for (std::size_t i = 0; i < n; ++i) split.folds[i % k].push_back(order[i]);
    for (auto& f : split.folds) std::sort(f.begin(), f.end());
    return split;
}

Dataset make_two_clusters(std::size_t n, std::size_t informative, std::size_t noise_dims, double separation,
                          std::uint64_t seed) {
    if (n < 2 || informative + noise_dims == 0) throw Error("two-cluster generator needs n >= 2 and d >= 1");
    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t d = informative + noise_dims;
    Dataset ds;
    std::vector<double> values;
    values.reserve(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        const int y = static_cast<int>(i % 2);
        for (std::size_t c = 0; c < informative; ++c) values.push_back(gauss(rng) + (y == 1 ? separation : 0.0));
        for (std::size_t c = 0; c < noise_dims; ++c) values.push_back(unit(rng));
        ds.labels.push_back(y);
    }
    ds.features = FeatureMatrix(n, d, std::move(values));
    for (std::size_t c = 0; c < d; ++c)
        ds.attribute_names.push_back((c < informative ? "signal" : "noise") + std::to_string(c));
    ds.class_names = {"c0", "c1"};
    ds.class_count = 2;
    return ds;
}

}  // namespace gbfrs
