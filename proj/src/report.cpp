#include "gbfrs/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace gbfrs {

void to_json(json& j, const GranularBall& ball) {
    j = json{{"members", ball.members},
             {"center", ball.center},
             {"radius", ball.radius},
             {"effective_radius", ball.effective_radius},
             {"purity", ball.purity},
             {"majority_label", ball.majority_label}};
}

void to_json(json& j, const GranularBallSet& gbs) {
    j = json{{"purity_threshold", gbs.purity_threshold}, {"source_n", gbs.source_n}, {"balls", gbs.balls}};
}

void to_json(json& j, const DependencyResult& r) {
    j = json{{"value", r.value},
             {"value_unweighted", r.value_unweighted},
             {"C", r.C},
             {"subset", r.subset.indices()},
             {"per_ball", r.per_ball}};
}

void to_json(json& j, const SelectionTrace& t) {
    j = json{{"mode", to_string(t.mode)},
             {"chosen", t.chosen},
             {"dependency_path", t.dependency_path},
             {"significance_path", t.significance_path},
             {"best_significance", t.best_significance},
             {"stopped_reason", to_string(t.stopped_reason)}};
}

void to_json(json& j, const ExperimentConfig& cfg) {
    std::vector<std::string> methods;
    for (Method m : cfg.methods) methods.push_back(to_string(m));
    j = json{{"purity_grid", cfg.purity_grid},
             {"noise_levels", cfg.noise_levels},
             {"noise_kind", to_string(cfg.noise_kind)},
             {"folds", cfg.folds},
             {"inner_folds", cfg.inner_folds},
             {"knn_k", cfg.knn_k},
             {"seeds", cfg.seeds},
             {"methods", methods},
             {"c_mode", to_string(cfg.c_mode)},
             {"stratified", cfg.stratified},
             {"initial_count", cfg.ball_options.initial_count == InitialCount::ceil_sqrt ? "ceil" : "floor"},
             {"remove_overlap", cfg.ball_options.remove_overlap},
             {"record_timing", cfg.record_timing}};
}

void to_json(json& j, const CellStats& c) {
    json runs = json::array();
    for (const auto& r : c.runs)
        runs.push_back({{"seed", r.seed},
                        {"fold", r.fold},
                        {"accuracy", r.accuracy},
                        {"subset_size", r.subset_size},
                        {"purity_threshold", r.purity_threshold}});
    j = json{{"dataset", c.dataset},
             {"method", to_string(c.method)},
             {"noise_kind", to_string(c.noise_kind)},
             {"noise", c.noise},
             {"n_runs", c.runs.size()},
             {"mean_accuracy", c.mean_accuracy},
             {"std_accuracy", c.std_accuracy},
             {"mean_subset_size", c.mean_subset_size},
             {"mean_purity_threshold", c.mean_purity_threshold},
             {"seconds", c.seconds},
             {"runs", runs}};
}

void to_json(json& j, const EvaluationReport& report) {
    j = json{{"config", report.config}, {"cells", report.cells}};
}

GranularBallSet ball_set_from_json(const json& j, const Dataset& ds) {
    GranularBallSet gbs;
    try {
        gbs.purity_threshold = j.at("purity_threshold").get<double>();
        gbs.source_n = j.at("source_n").get<std::size_t>();
        for (const auto& jb : j.at("balls")) {
            GranularBall b;
            b.members = jb.at("members").get<std::vector<std::size_t>>();
            b.center = jb.at("center").get<std::vector<double>>();
            b.radius = jb.at("radius").get<double>();
            b.effective_radius = jb.value("effective_radius", b.radius);
            b.purity = jb.at("purity").get<double>();
            b.majority_label = jb.at("majority_label").get<int>();
            gbs.balls.push_back(std::move(b));
        }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed ball set: ") + e.what());
    }
    if (gbs.source_n != ds.size()) throw Error("ball set was built for a dataset of different size");
    std::vector<char> seen(ds.size(), 0);
    for (const auto& b : gbs.balls) {
        if (b.members.empty()) throw Error("ball set contains an empty ball");
        if (b.center.size() != ds.dimension()) throw Error("ball center dimension does not match dataset");
        if (b.majority_label < 0 || b.majority_label >= ds.class_count)
            throw Error("ball label outside the dataset's classes");
        for (std::size_t i : b.members) {
            if (i >= ds.size()) throw Error("ball member index out of range");
            if (seen[i]) throw Error("ball set members overlap");
            seen[i] = 1;
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw Error("ball set does not cover every sample");
    return gbs;
}

std::string report_csv(const EvaluationReport& report) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "dataset,method,noise_kind,noise,knn_k,folds,n_runs,mean_accuracy,std_accuracy,mean_subset_size,"
          "mean_purity_threshold,seconds\n";
    for (const auto& c : report.cells) {
        os << c.dataset << ',' << to_string(c.method) << ',' << to_string(c.noise_kind) << ',' << c.noise << ','
           << report.config.knn_k << ',' << report.config.folds << ',' << c.runs.size() << ',' << c.mean_accuracy
           << ',' << c.std_accuracy << ',' << c.mean_subset_size << ',' << c.mean_purity_threshold << ','
           << c.seconds << '\n';
    }
    return os.str();
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 digest failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

std::string file_fingerprint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return "sha256:" + sha256_hex(buf.str());
}

json run_header(const json& effective_config, std::uint64_t master_seed, const std::string& dataset_fingerprint) {
    return json{{"tool", std::string(kToolName)},
                {"version", std::string(kToolVersion)},
                {"master_seed", master_seed},
                {"dataset_fingerprint", dataset_fingerprint},
                {"config", effective_config}};
}

}  // namespace gbfrs
