// Command-line surface: scenario execution, protocol evaluation, report
// aggregation, and curve export.
//
// Exit codes: 0 success, 2 invalid config/arguments, 3 infeasible-only run,
// 4 I/O failure, 1 anything else.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "fedlora/errors.hpp"
#include "fedlora/report.hpp"
#include "fedlora/scenario.hpp"
#include "fedlora/simulate.hpp"
#include "fedlora/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

std::vector<std::pair<std::string, fedlora::Trace>> load_traces(
    const std::vector<std::string>& paths) {
    std::vector<std::pair<std::string, fedlora::Trace>> out;
    for (const auto& p : paths) {
        fedlora::Trace t = fedlora::Trace::read(p);
        out.emplace_back(t.header.method, std::move(t));
    }
    return out;
}

void emit_report(const fedlora::ProtocolReport& report, const std::string& out_prefix,
                 const std::string& format) {
    const std::string csv = fedlora::report_to_csv(report);
    const std::string text = fedlora::report_to_text(report);
    fedlora::write_file(out_prefix + ".csv", csv);
    fedlora::write_file(out_prefix + ".txt", text);
    std::cout << (format == "csv" ? csv : text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic federated-LoRA edge benchmark harness"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "stdout rendition: text or csv")
        ->check(CLI::IsMember({"text", "csv"}));

    // run
    auto* run = app.add_subcommand("run", "execute a scenario and write its trace");
    run->fallthrough();
    
    std::string run_config;
    std::string run_out;
    run->add_option("-c,--config", run_config, "scenario config (JSON)")->required();
    run->add_option("-o,--out", run_out, "trace output path (default <name>.trace.jsonl)");

    // eval-a
    auto* eval_a = app.add_subcommand("eval-a", "quality under budget");
    eval_a->fallthrough();
    
    std::vector<std::string> a_traces;
    std::string a_out = "report_a";
    std::string a_axis;
    double a_comm = -1, a_hours = -1, a_energy = -1, a_memory = -1;
    eval_a->add_option("--trace", a_traces, "trace files, one per method")->required();
    eval_a->add_option("-o,--out", a_out, "report output prefix");
    eval_a->add_option("--axis", a_axis, "axis label for the overall ranking");
    eval_a->add_option("--budget-comm-mb", a_comm, "communication cap (MB)");
    eval_a->add_option("--budget-hours", a_hours, "wall-clock cap (hours)");
    eval_a->add_option("--budget-energy-kj", a_energy, "energy cap (kJ)");
    eval_a->add_option("--budget-memory-mb", a_memory, "peak-memory cap (MB)");

    // eval-b
    auto* eval_b = app.add_subcommand("eval-b", "cost to target");
    eval_b->fallthrough();
    
    std::vector<std::string> b_traces;
    std::string b_out = "report_b";
    std::string b_axis;
    std::vector<int> b_targets;
    double b_pretrained = -1, b_centroid = -1;
    std::vector<double> b_fractions;
    eval_b->add_option("--trace", b_traces, "trace files, one per method")->required();
    eval_b->add_option("-o,--out", b_out, "report output prefix");
    eval_b->add_option("--axis", b_axis, "axis label for the overall ranking");
    eval_b->add_option("--target", b_targets, "explicit accuracy targets (whole percent)");
    eval_b->add_option("--pretrained", b_pretrained, "pretrained accuracy %% (for derivation)");
    eval_b->add_option("--centroid", b_centroid, "centroid accuracy %% (for derivation)");
    eval_b->add_option("--fractions", b_fractions, "derivation fractions (default .5 .7 .9)");

    // eval-c
    auto* eval_c = app.add_subcommand("eval-c", "robustness (nominal vs perturbed)");
    eval_c->fallthrough();
    
    std::vector<std::string> c_nominal, c_perturbed;
    std::string c_out = "report_c";
    std::string c_axis;
    bool c_relative = false;
    eval_c->add_option("--nominal", c_nominal, "nominal traces")->required();
    eval_c->add_option("--perturbed", c_perturbed, "perturbed traces")->required();
    eval_c->add_option("-o,--out", c_out, "report output prefix");
    eval_c->add_option("--axis", c_axis, "axis label for the overall ranking");
    eval_c->add_flag("--relative", c_relative, "rank by percent change instead of absolute");

    // derive-targets
    auto* derive = app.add_subcommand("derive-targets", "derive integer-percent targets");
    derive->fallthrough();
    
    double d_pretrained = 0, d_centroid = 0;
    std::vector<double> d_fractions;
    derive->add_option("--pretrained", d_pretrained, "pretrained accuracy %")->required();
    derive->add_option("--centroid", d_centroid, "centroid accuracy %")->required();
    derive->add_option("--fractions", d_fractions, "fractions (default .5 .7 .9)");

    // report
    auto* overall = app.add_subcommand("report", "overall ranking across report files");
    overall->fallthrough();
    
    std::vector<std::string> r_reports;
    std::string r_out = "report_overall";
    overall->add_option("--report", r_reports, "report CSV files")->required();
    overall->add_option("-o,--out", r_out, "output prefix");

    // curves
    auto* curves = app.add_subcommand("curves", "loss-vs-wall-clock series from a trace");
    curves->fallthrough();
    
    std::string cu_trace, cu_out = "curves.csv";
    curves->add_option("--trace", cu_trace, "trace file")->required();
    curves->add_option("-o,--out", cu_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            fedlora::ScenarioConfig config = fedlora::load_scenario(run_config);
            if (run_out.empty()) run_out = config.name + ".trace.jsonl";
            fedlora::RunSummary summary = fedlora::run_scenario(config, run_out);
            std::cout << summary.trace_path.string() << "\n";
            if (!summary.feasible) {
                std::cerr << "scenario infeasible: memory footprint exceeds device capacity\n";
                return kExitInfeasible;
            }
            return kExitOk;
        }
        if (*eval_a) {
            fedlora::Budget budget;
            if (a_comm >= 0) budget.comm_mb = a_comm;
            if (a_hours >= 0) budget.wall_clock_hours = a_hours;
            if (a_energy >= 0) budget.energy_kj = a_energy;
            if (a_memory >= 0) budget.memory_mb = a_memory;
            auto report = fedlora::eval_protocol_a(load_traces(a_traces), budget, a_axis);
            emit_report(report, a_out, format);
            return kExitOk;
        }
        if (*eval_b) {
            fedlora::TargetSpec targets;
            targets.targets_pct = b_targets;
            if (!b_fractions.empty()) targets.fractions = b_fractions;
            if (b_pretrained >= 0) targets.pretrained_acc_pct = b_pretrained;
            if (b_centroid >= 0) targets.centroid_acc_pct = b_centroid;
            auto report = fedlora::eval_protocol_b(load_traces(b_traces), targets, b_axis);
            emit_report(report, b_out, format);
            return kExitOk;
        }
        if (*eval_c) {
            auto report = fedlora::eval_protocol_c(load_traces(c_nominal),
                                                   load_traces(c_perturbed), c_relative, c_axis);
            emit_report(report, c_out, format);
            return kExitOk;
        }
        if (*derive) {
            std::vector<double> fractions =
                d_fractions.empty() ? std::vector<double>{0.5, 0.7, 0.9} : d_fractions;
            for (int t : fedlora::derive_targets(d_pretrained, d_centroid, fractions))
                std::cout << t << "\n";
            return kExitOk;
        }
        if (*overall) {
            std::vector<fedlora::ProtocolReport> reports;
            for (const auto& p : r_reports)
                reports.push_back(fedlora::report_from_csv(fedlora::read_file(p)));
            auto report = fedlora::overall_ranking(reports);
            emit_report(report, r_out, format);
            return kExitOk;
        }
        if (*curves) {
            fedlora::Trace trace = fedlora::Trace::read(cu_trace);
            fedlora::write_file(cu_out, fedlora::curves_csv(trace));
            std::cout << cu_out << "\n";
            return kExitOk;
        }
    } catch (const fedlora::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const fedlora::VersionError& e) {
        std::cerr << "version error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const fedlora::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
    return kExitOther;
}
