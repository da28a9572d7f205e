#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fedlora/trace.hpp"

namespace fedlora {

enum class RankDirection { HigherBetter, LowerBetter };

// Dense ranking: a value's rank is 1 + the number of strictly better
// distinct values; ties share a rank.
std::vector<int> dense_rank(const std::vector<double>& values, RankDirection direction);

// Missing entries (infeasible / target never reached) carry no rank.
std::vector<std::optional<int>> dense_rank_partial(
    const std::vector<std::optional<double>>& values, RankDirection direction);

// Integer-percent targets: floor(pretrained + f * (centroid - pretrained)).
std::vector<int> derive_targets(double pretrained_acc_pct, double centroid_acc_pct,
                                const std::vector<double>& fractions = {0.5, 0.7, 0.9});

struct Budget {
    std::optional<double> comm_mb;
    std::optional<double> wall_clock_hours;
    std::optional<double> energy_kj;
    std::optional<double> memory_mb;

    void validate() const;
};

struct TargetSpec {
    std::vector<int> targets_pct;  // explicit targets override the derivation
    std::vector<double> fractions = {0.5, 0.7, 0.9};
    std::optional<double> pretrained_acc_pct;
    std::optional<double> centroid_acc_pct;

    std::vector<int> resolve() const;  // explicit targets if present, else derived
};

struct ReportCell {
    std::optional<double> value;
    std::optional<double> delta;  // Protocol C only
    std::optional<int> rank;
};

struct ProtocolReport {
    std::string protocol;  // "A", "B", "C", "overall"
    std::string axis;      // label joining reports in the overall ranking
    std::vector<std::string> metrics;
    struct Row {
        std::string group;  // e.g. target "71%"; empty when unused
        std::string method;
        std::vector<ReportCell> cells;
    };
    std::vector<Row> rows;
};

// Per method: best eval snapshot among rounds whose cumulative ledgers fit
// every cap (memory cap checks the max participant high-water). Accuracy and
// loss are ranked independently.
ProtocolReport eval_protocol_a(const std::vector<std::pair<std::string, Trace>>& traces,
                               const Budget& budget, const std::string& axis = "");

// Per target, per method: cumulative costs at the first eval snapshot with
// accuracy >= target; peak memory is the participant-average high-water up to
// that point. All metrics rank lower-better; never reached -> no rank.
ProtocolReport eval_protocol_b(const std::vector<std::pair<std::string, Trace>>& traces,
                               const TargetSpec& targets, const std::string& axis = "");

// Final-state deltas (perturbed - nominal) per metric, ranked by |delta|
// lower-better; `relative` switches to percent change.
ProtocolReport eval_protocol_c(const std::vector<std::pair<std::string, Trace>>& nominal,
                               const std::vector<std::pair<std::string, Trace>>& perturbed,
                               bool relative = false, const std::string& axis = "");

// Per (method, axis): mean of that report's metric ranks, radar = 4 - mean.
// A method with no ranks on an axis contributes nothing there.
ProtocolReport overall_ranking(const std::vector<ProtocolReport>& reports);

// Final-state metric extraction shared by Protocol C and the CLI.
struct TraceFinals {
    std::optional<double> accuracy_pct;
    double wall_clock_hours = 0.0;
    double comm_mb = 0.0;
    double energy_kj = 0.0;
    double avg_peak_memory_mb = 0.0;
};
TraceFinals trace_finals(const Trace& trace);

}  // namespace fedlora
