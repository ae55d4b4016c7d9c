#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbfrs/fuzzy_rough.hpp"

namespace gbfrs {

enum class SelectionMode { granular_ball, classic_point };

std::string to_string(SelectionMode mode);
SelectionMode parse_selection_mode(const std::string& text);

/// How the distance parameter C follows the subset size. `schedule` uses C = |B|;
/// `fixed` holds C constant (the setting under which dependency is monotone in B).
struct CMode {
    bool fixed = false;
    double value = 1.0;

    double for_size(std::size_t subset_size) const {
        return fixed ? value : static_cast<double>(subset_size);
    }
    bool operator==(const CMode&) const = default;
};

std::string to_string(const CMode& mode);
/// Accepts "schedule" or "fixed:<value>".
CMode parse_c_mode(const std::string& text);

enum class StopReason { no_gain, exhausted };
std::string to_string(StopReason reason);

struct SelectionTrace {
    SelectionMode mode = SelectionMode::granular_ball;
    std::vector<std::size_t> chosen;
    std::vector<double> dependency_path;
    std::vector<double> significance_path;
    /// Significance of the best candidate in every round, including a final rejected round.
    std::vector<double> best_significance;
    StopReason stopped_reason = StopReason::exhausted;

    AttributeSubset subset() const { return AttributeSubset(chosen); }
};

struct SelectionOptions {
    CMode c_mode;
    double epsilon = 1e-9;
};

/// Significance of `a` relative to `subset` via the rescaling identity:
/// dep_{B+a}(C=|B|+1) - sqrt(|B|/(|B|+1)) * dep_B(C=|B|). An empty subset gives dep_{a}(C=1).
double significance(std::size_t a, const AttributeSubset& subset, const GranuleTable& granules);
double significance(std::size_t a, const AttributeSubset& subset, const GranularBallSet& gbs);

/// The same quantity as a direct difference dep_{B+a} - dep_B, both at C = |B| + 1.
double significance_direct(std::size_t a, const AttributeSubset& subset, const GranuleTable& granules);

/// Forward greedy search. Each round adds the candidate with the largest dependency (ties to the
/// smallest index) while it beats the running best by more than epsilon.
SelectionTrace forward_select(const GranuleTable& granules, SelectionMode mode, const SelectionOptions& options = {});
/// Granular-ball mode uses `gbs`; classic mode ignores it and works on the samples of `ds`.
SelectionTrace forward_select(const GranularBallSet& gbs, const Dataset& ds, SelectionMode mode,
                              const SelectionOptions& options = {});

/// Dependency of a subset under the C = |B| schedule; the empty subset scores 0.
double scheduled_dependency(const GranuleTable& granules, const AttributeSubset& subset);

/// True iff every attribute of `subset` is indispensable and the subset keeps the dependency of
/// the full attribute set (compared at C = d, tolerance 1e-9).
bool check_reduction(const AttributeSubset& subset, const GranuleTable& granules);
bool check_reduction(const AttributeSubset& subset, const GranularBallSet& gbs);

}  // namespace gbfrs
