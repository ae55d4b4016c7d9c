#include "gbfrs/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "gbfrs/evaluation.hpp"
#include "gbfrs/invariants.hpp"
#include "gbfrs/report.hpp"

namespace gbfrs::cli {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

struct Settings {
    std::string input;
    std::string label_col;
    bool header = true;
    std::string out;
    std::string csv;
    std::string balls;
    std::string config;

    double purity = 1.0;
    std::vector<double> purity_grid = default_purity_grid();
    std::string c_mode = "schedule";
    std::string mode = "gbfrs";
    std::string initial_count = "ceil";
    bool singleton = false;
    bool remove_overlap = true;

    std::size_t knn_k = 3;
    std::size_t folds = 5;
    std::size_t inner_folds = 3;
    std::vector<double> noise = default_noise_levels();
    std::string noise_kind = "label";
    std::vector<std::string> methods = {"gbfrs", "classic-frs", "all-features"};
    bool stratified = true;
    bool timing = true;

    std::uint64_t seed = 1;
    std::vector<std::uint64_t> seeds = {1};
};

void add_input_options(CLI::App* sub, Settings& s) {
    sub->add_option("--input", s.input, "CSV file with one sample per row")->required();
    sub->add_option("--label-col", s.label_col, "Label column name or zero-based index (default: last column)");
    sub->add_flag("--header,!--no-header", s.header, "First row holds column names")->default_val(true);
    sub->add_option("--config", s.config, "File of `key = value` lines; flags take precedence");
}

void add_ball_options(CLI::App* sub, Settings& s) {
    sub->add_option("--purity", s.purity, "Purity threshold T in (0,1]")->default_val(1.0);
    sub->add_option("--initial-count", s.initial_count, "Initial ball count rounding of sqrt(n): ceil or floor")
        ->check(CLI::IsMember({"ceil", "floor"}))
        ->default_val("ceil");
    sub->add_flag("--singleton", s.singleton, "One ball per sample (skips clustering)");
    sub->add_flag("--overlap-removal,!--no-overlap-removal", s.remove_overlap,
                  "Split heterogeneous balls that overlap")
        ->default_val(true);
}

std::uint64_t master_seed(std::uint64_t flag_value) {
    const char* env = std::getenv(kSeedEnv);
    if (!env || !*env) return flag_value;
    std::uint64_t v = 0;
    std::string text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageError(std::string(kSeedEnv) + " must be a non-negative integer");
    return v;
}

void check_purity(double t) {
    if (!(t > 0.0 && t <= 1.0)) throw UsageError("purity must be in (0,1]");
}

CsvOptions csv_options(const Settings& s) {
    CsvOptions opt;
    opt.header = s.header;
    if (!s.label_col.empty() &&
        std::all_of(s.label_col.begin(), s.label_col.end(), [](unsigned char c) { return std::isdigit(c); }) &&
        !s.header)
        opt.label_column = static_cast<std::size_t>(std::stoul(s.label_col));
    else
        opt.label_column = s.label_col;
    return opt;
}

BallOptions ball_options(const Settings& s) {
    BallOptions b;
    b.initial_count = s.initial_count == "floor" ? InitialCount::floor_sqrt : InitialCount::ceil_sqrt;
    b.singleton_balls = s.singleton;
    b.remove_overlap = s.remove_overlap;
    return b;
}

CMode c_mode_of(const Settings& s) {
    try {
        return parse_c_mode(s.c_mode);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

json input_config(const Settings& s) {
    return json{{"input", s.input}, {"label_col", s.label_col.empty() ? "<last>" : s.label_col}, {"header", s.header}};
}

json ball_config(const Settings& s) {
    return json{{"purity", s.purity},
                {"initial_count", s.initial_count},
                {"singleton", s.singleton},
                {"remove_overlap", s.remove_overlap}};
}

void write_json(const std::string& path, const json& doc, std::ostream& fallback) {
    const std::string text = doc.dump(2) + "\n";
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

int cmd_generate_balls(const Settings& s, std::ostream& out, std::ostream& err) {
    check_purity(s.purity);
    const std::uint64_t seed = master_seed(s.seed);
    const auto ds = normalize_min_max(load_csv(s.input, csv_options(s)));
    for (const auto& w : ds.warnings) err << "warning: " << w << "\n";
    const auto gbs = generate(ds, s.purity, seed, ball_options(s));

    std::vector<std::size_t> histogram(10, 0);  // purity bins [0,0.1), ..., [0.9,1.0]
    std::size_t smallest = ds.size(), largest = 0;
    for (const auto& b : gbs.balls) {
        ++histogram[std::min<std::size_t>(9, static_cast<std::size_t>(b.purity * 10.0))];
        smallest = std::min(smallest, b.size());
        largest = std::max(largest, b.size());
    }
    const auto problems = ball_set_violations(gbs, ds);
    std::size_t overlaps = 0;
    for (std::size_t i = 0; i < gbs.size(); ++i)
        for (std::size_t j = i + 1; j < gbs.size(); ++j) overlaps += heterogeneous_overlap(gbs.balls[i], gbs.balls[j]);

    json summary{{"ball_count", gbs.size()},
                 {"purity_histogram", histogram},
                 {"min_ball_size", smallest},
                 {"max_ball_size", largest},
                 {"coverage_ok", problems.empty()},
                 {"heterogeneous_overlaps", overlaps}};
    json config = input_config(s);
    config.update(ball_config(s));
    config["seed"] = seed;
    config["out"] = s.out;

    json doc = gbs;
    doc["header"] = run_header(config, seed, file_fingerprint(s.input));
    doc["summary"] = summary;
    write_json(s.out, doc, out);

    std::ostream& text = s.out.empty() ? err : out;
    text << "balls: " << gbs.size() << " (sizes " << smallest << ".." << largest << ") from " << ds.size()
         << " samples, T=" << s.purity << "\n";
    text << "coverage: " << (problems.empty() ? "ok" : "FAILED: " + problems.front()) << "\n";
    text << "purity histogram (0.1 bins):";
    for (auto c : histogram) text << ' ' << c;
    text << "\n";
    return problems.empty() ? kExitOk : kExitRuntime;
}

int cmd_select(const Settings& s, std::ostream& out, std::ostream& err) {
    check_purity(s.purity);
    SelectionMode mode;
    try {
        mode = parse_selection_mode(s.mode);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    SelectionOptions opts;
    opts.c_mode = c_mode_of(s);
    const std::uint64_t seed = master_seed(s.seed);
    const auto ds = normalize_min_max(load_csv(s.input, csv_options(s)));
    for (const auto& w : ds.warnings) err << "warning: " << w << "\n";

    GranularBallSet gbs;
    double threshold = s.purity;
    if (mode == SelectionMode::granular_ball) {
        if (!s.balls.empty()) {
            std::ifstream f(s.balls, std::ios::binary);
            if (!f) throw Error("cannot open file: " + s.balls);
            json parsed;
            try {
                parsed = json::parse(f);
            } catch (const json::exception& e) {
                throw Error(s.balls + ": " + e.what());
            }
            gbs = ball_set_from_json(parsed, ds);
            threshold = gbs.purity_threshold;
        } else {
            gbs = generate(ds, s.purity, seed, ball_options(s));
        }
    }
    const auto trace = forward_select(gbs, ds, mode, opts);

    std::vector<std::string> names;
    for (std::size_t a : trace.chosen) names.push_back(ds.attribute_names[a]);

    json config = input_config(s);
    config.update(ball_config(s));
    config["mode"] = to_string(mode);
    config["c_mode"] = to_string(opts.c_mode);
    config["epsilon"] = opts.epsilon;
    config["balls"] = s.balls;
    config["seed"] = seed;
    config["out"] = s.out;

    json doc = trace;
    doc["header"] = run_header(config, seed, file_fingerprint(s.input));
    doc["purity_threshold"] = threshold;
    doc["seed"] = seed;
    doc["c_mode"] = to_string(opts.c_mode);
    doc["chosen_names"] = names;
    if (mode == SelectionMode::granular_ball) doc["ball_count"] = gbs.size();
    write_json(s.out, doc, out);

    std::ostream& text = s.out.empty() ? err : out;
    text << "selected " << names.size() << " of " << ds.dimension() << " attributes (" << to_string(mode)
         << ", stop: " << to_string(trace.stopped_reason) << "):";
    for (const auto& n : names) text << ' ' << n;
    text << "\n";
    return kExitOk;
}

int cmd_sweep(const Settings& s, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg;
    cfg.purity_grid = s.purity_grid;
    cfg.noise_levels = s.noise;
    cfg.folds = s.folds;
    cfg.inner_folds = s.inner_folds;
    cfg.knn_k = s.knn_k;
    cfg.stratified = s.stratified;
    cfg.record_timing = s.timing;
    cfg.ball_options = ball_options(s);
    cfg.c_mode = c_mode_of(s);
    cfg.seeds = s.seeds;
    if (const char* env = std::getenv(kSeedEnv); env && *env) cfg.seeds = {master_seed(0)};
    cfg.methods.clear();
    try {
        cfg.noise_kind = parse_noise_kind(s.noise_kind);
        for (const auto& m : s.methods) cfg.methods.push_back(parse_method(m));
        cfg.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }

    const auto ds = load_csv(s.input, csv_options(s));
    for (const auto& w : ds.warnings) err << "warning: " << w << "\n";
    const std::string dataset_id = std::filesystem::path(s.input).stem().string();
    const auto report = noise_sweep(ds, dataset_id, cfg);

    json config = input_config(s);
    config["experiment"] = cfg;
    config["out"] = s.out;
    config["csv"] = s.csv;

    json doc = report;
    doc["header"] = run_header(config, cfg.seeds.front(), file_fingerprint(s.input));
    write_json(s.out, doc, out);

    std::string csv_path = s.csv;
    if (csv_path.empty() && !s.out.empty()) csv_path = std::filesystem::path(s.out).replace_extension(".csv").string();
    if (!csv_path.empty()) {
        std::ostringstream head;
        head << "# " << kToolName << ' ' << kToolVersion << " master_seed=" << cfg.seeds.front()
             << " dataset=" << file_fingerprint(s.input) << " config=" << config.dump() << "\n";
        write_text(csv_path, head.str() + report_csv(report));
    }

    std::ostream& text = s.out.empty() ? err : out;
    text << std::fixed << std::setprecision(4);
    for (const auto& c : report.cells)
        text << std::setw(14) << std::left << to_string(c.method) << ' ' << to_string(c.noise_kind) << '='
             << c.noise << "  acc " << c.mean_accuracy << " +- " << c.std_accuracy << "  |B| " << c.mean_subset_size
             << "  n=" << c.runs.size() << "\n";
    return kExitOk;
}

int cmd_check(const Settings& s, std::ostream& out, std::ostream& err) {
    const auto ds = normalize_min_max(load_csv(s.input, csv_options(s)));
    for (const auto& w : ds.warnings) err << "warning: " << w << "\n";
    CheckOptions opts;
    opts.seeds = s.seeds;
    if (const char* env = std::getenv(kSeedEnv); env && *env) opts.seeds = {master_seed(0)};
    const auto results = run_invariant_checks(ds, opts);
    bool ok = true;
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.detail << ")\n";
        ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitRuntime;
}

std::string config_path_from(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].starts_with("--config=")) return args[i].substr(9);
    }
    return {};
}

}  // namespace

std::vector<std::string> config_file_arguments(const std::string& path, const std::vector<std::string>& args) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::vector<std::string> extra;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected `key = value`");
        auto strip = [](std::string v) {
            v.erase(0, v.find_first_not_of(" \t\r"));
            v.erase(v.find_last_not_of(" \t\r") + 1);
            return v;
        };
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.starts_with("--")) key.erase(0, 2);
        const std::string flag = "--" + key;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.starts_with(flag + "=") || (key == "header" && a == "--no-header") ||
                   (key == "overlap-removal" && a == "--no-overlap-removal");
        });
        if (!given) extra.push_back(flag + "=" + value);
    }
    return extra;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Granular-ball fuzzy rough set feature selection"};
    app.name("gbfrs");
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    Settings s;

    auto* gen = app.add_subcommand("generate-balls", "Partition a dataset into granular-balls");
    add_input_options(gen, s);
    add_ball_options(gen, s);
    gen->add_option("--seed", s.seed, "Master seed (env " + std::string(kSeedEnv) + " overrides)")->default_val(1);
    gen->add_option("--out", s.out, "Output JSON path (default: stdout)");

    auto* sel = app.add_subcommand("select", "Forward attribute selection");
    add_input_options(sel, s);
    add_ball_options(sel, s);
    sel->add_option("--mode", s.mode, "gbfrs or classic")->check(CLI::IsMember({"gbfrs", "classic"}))->default_val("gbfrs");
    sel->add_option("--c-mode", s.c_mode, "schedule or fixed:<value>")->default_val("schedule");
    sel->add_option("--balls", s.balls, "Reuse a ball set written by generate-balls");
    sel->add_option("--seed", s.seed, "Master seed (env " + std::string(kSeedEnv) + " overrides)")->default_val(1);
    sel->add_option("--out", s.out, "Output JSON path (default: stdout)");

    auto* sweep = app.add_subcommand("sweep", "Cross-validated noise sweep over methods");
    add_input_options(sweep, s);
    sweep->add_option("--purity-grid", s.purity_grid, "Comma-separated purity thresholds")->delimiter(',');
    sweep->add_option("--initial-count", s.initial_count, "ceil or floor")
        ->check(CLI::IsMember({"ceil", "floor"}))
        ->default_val("ceil");
    sweep->add_flag("--overlap-removal,!--no-overlap-removal", s.remove_overlap, "Split overlapping heterogeneous balls")
        ->default_val(true);
    sweep->add_option("--c-mode", s.c_mode, "schedule or fixed:<value>")->default_val("schedule");
    sweep->add_option("--knn-k", s.knn_k, "Neighbours for kNN")->default_val(3);
    sweep->add_option("--folds", s.folds, "Outer cross-validation folds")->default_val(5);
    sweep->add_option("--inner-folds", s.inner_folds, "Folds of the purity grid search")->default_val(3);
    sweep->add_option("--noise", s.noise, "Comma-separated noise levels")->delimiter(',');
    sweep->add_option("--noise-kind", s.noise_kind, "label or attribute")
        ->check(CLI::IsMember({"label", "attribute"}))
        ->default_val("label");
    sweep->add_option("--methods", s.methods, "Comma-separated: gbfrs,classic-frs,all-features")->delimiter(',');
    sweep->add_option("--seeds", s.seeds, "Comma-separated seeds")->delimiter(',');
    sweep->add_flag("--stratified,!--plain-folds", s.stratified, "Stratify folds by class")->default_val(true);
    sweep->add_flag("--timing,!--no-timing", s.timing, "Record wall-clock seconds per cell")->default_val(true);
    sweep->add_option("--out", s.out, "Report JSON path (default: stdout)");
    sweep->add_option("--csv", s.csv, "Report CSV path (default: --out with .csv)");

    auto* check = app.add_subcommand("check", "Run the invariant suite against a dataset");
    add_input_options(check, s);
    check->add_option("--seeds", s.seeds, "Comma-separated seeds")->delimiter(',');

    std::vector<std::string> effective = args;
    try {
        if (auto cfg_path = config_path_from(args); !cfg_path.empty()) {
            auto extra = config_file_arguments(cfg_path, args);
            effective.insert(effective.end(), extra.begin(), extra.end());
        }
        std::vector<std::string> reversed(effective.rbegin(), effective.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate_balls(s, out, err);
        if (sel->parsed()) return cmd_select(s, out, err);
        if (sweep->parsed()) return cmd_sweep(s, out, err);
        if (check->parsed()) return cmd_check(s, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace gbfrs::cli
