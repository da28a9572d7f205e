#include "fedlora/protocols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "fedlora/edge_sim.hpp"
#include "fedlora/errors.hpp"

namespace fedlora {

std::vector<int> dense_rank(const std::vector<double>& values, RankDirection direction) {
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("dense_rank: non-finite value");
    }
    std::vector<int> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::set<double> better;
        for (double v : values) {
            const bool is_better = direction == RankDirection::HigherBetter ? v > values[i]
                                                                            : v < values[i];
            if (is_better) better.insert(v);
        }
        ranks[i] = 1 + static_cast<int>(better.size());
    }
    return ranks;
}

std::vector<std::optional<int>> dense_rank_partial(
    const std::vector<std::optional<double>>& values, RankDirection direction) {
    std::vector<double> present;
    for (const auto& v : values)
        if (v) present.push_back(*v);
    std::vector<int> ranks = dense_rank(present, direction);
    std::vector<std::optional<int>> out(values.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i]) out[i] = ranks[j++];
    return out;
}

std::vector<int> derive_targets(double pretrained_acc_pct, double centroid_acc_pct,
                                const std::vector<double>& fractions) {
    if (pretrained_acc_pct > centroid_acc_pct)
        throw std::invalid_argument("derive_targets: pretrained above centroid");
    std::vector<int> targets;
    for (double f : fractions)
        targets.push_back(static_cast<int>(
            std::floor(pretrained_acc_pct + f * (centroid_acc_pct - pretrained_acc_pct))));
    return targets;
}

void Budget::validate() const {
    auto check = [](const std::optional<double>& v, const char* name) {
        // zero caps are legal (they make every method unrankable)
        if (v && !(*v >= 0.0))
            throw ConfigError(std::string("budget.") + name + ": cap must be >= 0");
    };
    check(comm_mb, "comm_mb");
    check(wall_clock_hours, "wall_clock_hours");
    check(energy_kj, "energy_kj");
    check(memory_mb, "memory_mb");
}

std::vector<int> TargetSpec::resolve() const {
    if (!targets_pct.empty()) {
        if (pretrained_acc_pct && centroid_acc_pct) {
            for (int t : targets_pct) {
                if (t < static_cast<int>(std::floor(*pretrained_acc_pct)) ||
                    static_cast<double>(t) > *centroid_acc_pct)
                    throw ConfigError("targets: " + std::to_string(t) +
                                      "% outside [pretrained, centroid]");
            }
        }
        return targets_pct;
    }
    if (!pretrained_acc_pct || !centroid_acc_pct)
        throw ConfigError("targets: need explicit targets or pretrained/centroid accuracies");
    if (*pretrained_acc_pct > *centroid_acc_pct)
        throw ConfigError("targets: pretrained_acc must be <= centroid_acc");
    return derive_targets(*pretrained_acc_pct, *centroid_acc_pct, fractions);
}

namespace {

// Per-client peak-memory high-water marks replayed record by record.
class PeakTracker {
public:
    void add(const RoundRecord& r) {
        for (const auto& c : r.clients) {
            auto [it, inserted] = peaks_.try_emplace(c.client_id, c.peak_memory_mb);
            if (!inserted) it->second = std::max(it->second, c.peak_memory_mb);
        }
    }
    double max_peak() const {
        double mx = 0.0;
        for (const auto& [id, p] : peaks_) mx = std::max(mx, p);
        return mx;
    }
    double avg_peak() const {
        if (peaks_.empty()) return 0.0;
        double sum = 0.0;
        for (const auto& [id, p] : peaks_) sum += p;
        return sum / static_cast<double>(peaks_.size());
    }

private:
    std::map<std::size_t, double> peaks_;
};

}  // namespace

TraceFinals trace_finals(const Trace& trace) {
    TraceFinals f;
    PeakTracker peaks;
    for (const auto& r : trace.records) {
        peaks.add(r);
        if (r.eval) f.accuracy_pct = r.eval->accuracy * 100.0;
        f.wall_clock_hours = r.cum_wall_clock_hours;
        f.comm_mb = static_cast<double>(r.cum_comm_bytes) / 1e6;
        f.energy_kj = r.cum_energy_kj;
    }
    f.avg_peak_memory_mb = peaks.avg_peak();
    return f;
}

ProtocolReport eval_protocol_a(const std::vector<std::pair<std::string, Trace>>& traces,
                               const Budget& budget, const std::string& axis) {
    budget.validate();
    ProtocolReport report;
    report.protocol = "A";
    report.axis = axis;
    report.metrics = {"best_loss", "best_accuracy_pct"};

    std::vector<std::optional<double>> best_loss(traces.size());
    std::vector<std::optional<double>> best_acc(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const Trace& trace = traces[i].second;
        if (trace.infeasible) continue;
        if (trace.records.empty())
            throw NoDataError("protocol A: trace for '" + traces[i].first + "' has no rounds");
        PeakTracker peaks;
        for (const auto& r : trace.records) {
            peaks.add(r);
            if (!r.eval) continue;
            if (budget.comm_mb &&
                static_cast<double>(r.cum_comm_bytes) / 1e6 > *budget.comm_mb)
                continue;
            if (budget.wall_clock_hours && r.cum_wall_clock_hours > *budget.wall_clock_hours)
                continue;
            if (budget.energy_kj && r.cum_energy_kj > *budget.energy_kj) continue;
            if (budget.memory_mb && peaks.max_peak() > *budget.memory_mb) continue;
            if (!best_loss[i] || r.eval->loss < *best_loss[i]) best_loss[i] = r.eval->loss;
            if (!best_acc[i] || r.eval->accuracy * 100.0 > *best_acc[i])
                best_acc[i] = r.eval->accuracy * 100.0;
        }
    }
    auto loss_ranks = dense_rank_partial(best_loss, RankDirection::LowerBetter);
    auto acc_ranks = dense_rank_partial(best_acc, RankDirection::HigherBetter);
    for (std::size_t i = 0; i < traces.size(); ++i) {
        ProtocolReport::Row row;
        row.method = traces[i].first;
        row.cells.push_back({best_loss[i], std::nullopt, loss_ranks[i]});
        row.cells.push_back({best_acc[i], std::nullopt, acc_ranks[i]});
        report.rows.push_back(std::move(row));
    }
    return report;
}

ProtocolReport eval_protocol_b(const std::vector<std::pair<std::string, Trace>>& traces,
                               const TargetSpec& targets, const std::string& axis) {
    ProtocolReport report;
    report.protocol = "B";
    report.axis = axis;
    report.metrics = {"wall_clock_h", "comm_mb", "energy_kj", "avg_peak_memory_mb"};

    for (int target : targets.resolve()) {
        const std::string group = std::to_string(target) + "%";
        std::vector<std::array<std::optional<double>, 4>> costs(traces.size());
        for (std::size_t i = 0; i < traces.size(); ++i) {
            const Trace& trace = traces[i].second;
            if (trace.infeasible) continue;
            PeakTracker peaks;
            for (const auto& r : trace.records) {
                peaks.add(r);
                if (!r.eval) continue;
                if (r.eval->accuracy * 100.0 >= static_cast<double>(target)) {
                    costs[i] = {r.cum_wall_clock_hours,
                                static_cast<double>(r.cum_comm_bytes) / 1e6, r.cum_energy_kj,
                                peaks.avg_peak()};
                    break;  // first point where the target is achieved
                }
            }
        }
        const std::size_t base_row = report.rows.size();
        for (std::size_t i = 0; i < traces.size(); ++i)
            report.rows.push_back({group, traces[i].first, {}});
        for (std::size_t m = 0; m < 4; ++m) {
            std::vector<std::optional<double>> column(traces.size());
            for (std::size_t i = 0; i < traces.size(); ++i) column[i] = costs[i][m];
            auto ranks = dense_rank_partial(column, RankDirection::LowerBetter);
            for (std::size_t i = 0; i < traces.size(); ++i)
                report.rows[base_row + i].cells.push_back({costs[i][m], std::nullopt, ranks[i]});
        }
    }
    return report;
}

ProtocolReport eval_protocol_c(const std::vector<std::pair<std::string, Trace>>& nominal,
                               const std::vector<std::pair<std::string, Trace>>& perturbed,
                               bool relative, const std::string& axis) {
    if (nominal.size() != perturbed.size())
        throw PairingError("protocol C: nominal and perturbed method sets differ in size");
    for (std::size_t i = 0; i < nominal.size(); ++i) {
        if (nominal[i].first != perturbed[i].first)
            throw PairingError("protocol C: method '" + nominal[i].first +
                               "' paired with '" + perturbed[i].first + "'");
    }

    ProtocolReport report;
    report.protocol = "C";
    report.axis = axis;
    report.metrics = {"accuracy_pct", "wall_clock_h", "comm_mb", "energy_kj",
                      "avg_peak_memory_mb"};

    const std::size_t n = nominal.size();
    std::vector<std::array<std::optional<double>, 5>> values(n);
    std::vector<std::array<std::optional<double>, 5>> deltas(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (nominal[i].second.infeasible || perturbed[i].second.infeasible) continue;
        TraceFinals base = trace_finals(nominal[i].second);
        TraceFinals pert = trace_finals(perturbed[i].second);
        const std::array<std::optional<double>, 5> b = {base.accuracy_pct, base.wall_clock_hours,
                                                        base.comm_mb, base.energy_kj,
                                                        base.avg_peak_memory_mb};
        const std::array<std::optional<double>, 5> p = {pert.accuracy_pct, pert.wall_clock_hours,
                                                        pert.comm_mb, pert.energy_kj,
                                                        pert.avg_peak_memory_mb};
        for (std::size_t m = 0; m < 5; ++m) {
            if (!b[m] || !p[m]) continue;
            values[i][m] = *p[m];
            double d = *p[m] - *b[m];
            if (relative) d = *b[m] != 0.0 ? d / *b[m] * 100.0 : d;
            deltas[i][m] = d;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        ProtocolReport::Row row;
        row.method = nominal[i].first;
        row.cells.resize(5);
        report.rows.push_back(std::move(row));
    }
    for (std::size_t m = 0; m < 5; ++m) {
        std::vector<std::optional<double>> abs_delta(n);
        for (std::size_t i = 0; i < n; ++i)
            if (deltas[i][m]) abs_delta[i] = std::abs(*deltas[i][m]);
        auto ranks = dense_rank_partial(abs_delta, RankDirection::LowerBetter);
        for (std::size_t i = 0; i < n; ++i)
            report.rows[i].cells[m] = {values[i][m], deltas[i][m], ranks[i]};
    }
    return report;
}

ProtocolReport overall_ranking(const std::vector<ProtocolReport>& reports) {
    // axis label -> method -> (rank sum, rank count)
    std::vector<std::string> axes;
    std::vector<std::string> methods;
    std::map<std::string, std::map<std::string, std::pair<double, int>>> acc;
    for (const auto& rep : reports) {
        const std::string axis = rep.axis.empty() ? rep.protocol : rep.axis;
        if (std::find(axes.begin(), axes.end(), axis) == axes.end()) axes.push_back(axis);
        for (const auto& row : rep.rows) {
            if (std::find(methods.begin(), methods.end(), row.method) == methods.end())
                methods.push_back(row.method);
            for (const auto& cell : row.cells) {
                if (!cell.rank) continue;
                auto& entry = acc[axis][row.method];
                entry.first += static_cast<double>(*cell.rank);
                entry.second += 1;
            }
        }
    }

    ProtocolReport out;
    out.protocol = "overall";
    for (const auto& axis : axes) {
        out.metrics.push_back(axis + ":avg_rank");
        out.metrics.push_back(axis + ":radar");
    }
    for (const auto& method : methods) {
        ProtocolReport::Row row;
        row.method = method;
        for (const auto& axis : axes) {
            auto ait = acc.find(axis);
            const auto* entry = (ait != acc.end() && ait->second.count(method))
                                    ? &ait->second.at(method)
                                    : nullptr;
            if (entry && entry->second > 0) {
                const double avg = entry->first / static_cast<double>(entry->second);
                row.cells.push_back({avg, std::nullopt, std::nullopt});
                row.cells.push_back({4.0 - avg, std::nullopt, std::nullopt});
            } else {
                row.cells.push_back({});
                row.cells.push_back({});
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace fedlora
