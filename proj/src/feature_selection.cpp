#include "gbfrs/feature_selection.hpp"

#include <cmath>
#include <sstream>

namespace gbfrs {

std::string to_string(SelectionMode mode) {
    return mode == SelectionMode::granular_ball ? "gbfrs" : "classic";
}

SelectionMode parse_selection_mode(const std::string& text) {
    if (text == "gbfrs" || text == "granular-ball") return SelectionMode::granular_ball;
    if (text == "classic" || text == "classic-point" || text == "classic-frs") return SelectionMode::classic_point;
    throw Error("unknown selection mode '" + text + "'");
}

std::string to_string(const CMode& mode) {
    if (!mode.fixed) return "schedule";
    std::ostringstream os;
    os << "fixed:" << mode.value;
    return os.str();
}

CMode parse_c_mode(const std::string& text) {
    if (text == "schedule") return {};
    if (text.starts_with("fixed:")) {
        const std::string number = text.substr(6);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(number, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != number.size() || number.empty() || !(v > 0.0))
            throw Error("c-mode fixed value must be a positive number");
        return {true, v};
    }
    throw Error("c-mode must be 'schedule' or 'fixed:<value>'");
}

std::string to_string(StopReason reason) { return reason == StopReason::no_gain ? "no-gain" : "exhausted"; }

double scheduled_dependency(const GranuleTable& granules, const AttributeSubset& subset) {
    if (subset.empty()) return 0.0;
    return weighted_dependency(granules, subset, static_cast<double>(subset.size())).value;
}

double significance(std::size_t a, const AttributeSubset& subset, const GranuleTable& granules) {
    if (subset.contains(a)) throw Error("attribute " + std::to_string(a) + " already in subset");
    const auto grown = subset.with(a);
    const double next_C = static_cast<double>(grown.size());
    const double with_a = weighted_dependency(granules, grown, next_C).value;
    if (subset.empty()) return with_a;
    const auto base = weighted_dependency(granules, subset, static_cast<double>(subset.size()));
    return with_a - rescale_dependency(base, next_C).value;
}

double significance(std::size_t a, const AttributeSubset& subset, const GranularBallSet& gbs) {
    return significance(a, subset, granules_of(gbs));
}

double significance_direct(std::size_t a, const AttributeSubset& subset, const GranuleTable& granules) {
    if (subset.contains(a)) throw Error("attribute " + std::to_string(a) + " already in subset");
    const auto grown = subset.with(a);
    const double C = static_cast<double>(grown.size());
    const double with_a = weighted_dependency(granules, grown, C).value;
    if (subset.empty()) return with_a;
    return with_a - weighted_dependency(granules, subset, C).value;
}

SelectionTrace forward_select(const GranuleTable& granules, SelectionMode mode, const SelectionOptions& options) {
    const std::size_t d = granules.centers.cols();
    DependencyEngine engine(granules);
    SelectionTrace trace;
    trace.mode = mode;

    std::vector<char> taken(d, 0);
    DependencyResult running;  // empty subset: value 0
    running.C = options.c_mode.for_size(1);

    for (std::size_t round = 0; round < d; ++round) {
        const double C = options.c_mode.for_size(round + 1);
        std::size_t best_attr = d;
        DependencyResult best;
        for (std::size_t a = 0; a < d; ++a) {
            if (taken[a]) continue;
            auto r = engine.evaluate_with(a, C);
            if (best_attr == d || r.value > best.value) {
                best_attr = a;
                best = std::move(r);
            }
        }
        const double baseline = round == 0 ? 0.0 : rescale_dependency(running, C).value;
        const double sig = best.value - baseline;
        trace.best_significance.push_back(sig);

        if (!(best.value > running.value + options.epsilon)) {
            trace.stopped_reason = StopReason::no_gain;
            return trace;
        }
        taken[best_attr] = 1;
        engine.commit(best_attr);
        trace.chosen.push_back(best_attr);
        trace.dependency_path.push_back(best.value);
        trace.significance_path.push_back(sig);
        running = std::move(best);
    }
    trace.stopped_reason = StopReason::exhausted;
    return trace;
}

SelectionTrace forward_select(const GranularBallSet& gbs, const Dataset& ds, SelectionMode mode,
                              const SelectionOptions& options) {
    if (mode == SelectionMode::granular_ball) return forward_select(granules_of(gbs), mode, options);
    return forward_select(granules_of(ds), mode, options);
}

bool check_reduction(const AttributeSubset& subset, const GranuleTable& granules) {
    const std::size_t d = granules.centers.cols();
    subset.check_within(d);
    const double dep_b = scheduled_dependency(granules, subset);
    for (std::size_t a : subset) {
        if (!(scheduled_dependency(granules, subset.without(a)) < dep_b)) return false;
    }
    const auto full = AttributeSubset::all(d);
    const double C = static_cast<double>(d);
    const auto base = weighted_dependency(granules, subset, static_cast<double>(subset.size()));
    const double dep_b_common = rescale_dependency(base, C).value;
    const double dep_full = weighted_dependency(granules, full, C).value;
    return std::abs(dep_b_common - dep_full) <= 1e-9;
}

bool check_reduction(const AttributeSubset& subset, const GranularBallSet& gbs) {
    return check_reduction(subset, granules_of(gbs));
}

}  // namespace gbfrs
