#include "fedlora/simulate.hpp"

#include <algorithm>

#include "fedlora/errors.hpp"
#include "fedlora/perturbations.hpp"

namespace fedlora {

double client_footprint_mb(const ScenarioConfig& config, std::size_t rank) {
    FootprintSpec spec;
    spec.layer_dims = config.model.layer_dims();
    if (config.method.kind == MethodKind::SplitLora)
        spec.layer_dims.resize(config.method.split_layer_index);
    spec.rank = rank;
    spec.batch = config.train.batch_size;
    spec.overhead_mb = config.memory_overhead_mb;
    return memory_footprint(spec);
}

RunSummary run_scenario(const ScenarioConfig& config, const std::filesystem::path& trace_path,
                        const RoundObserver& observer) {
    config.validate();

    const BaseModel teacher = BaseModel::planted_teacher(config.model, config.seed);
    const BaseModel base =
        BaseModel::pretrained_from_teacher(teacher, config.model.pretrain_noise, config.seed);
    const TaskData task = generate_task(teacher, config.task, config.seed);

    std::vector<ClientRecord> pool = build_mix(config.effective_mix(), config.task.num_clients);
    assign_ranks(pool, config.profiles, config.method);

    TraceHeader header;
    header.scenario = config.name;
    header.method = to_string(config.method.kind);
    header.config_hash = scenario_config_hash(config);
    header.seed = config.seed;
    TraceWriter writer(trace_path, header);

    RunSummary summary;
    summary.trace_path = trace_path;

    // OOM feasibility gate: every pool client must fit its device.
    std::vector<double> footprints;
    footprints.reserve(pool.size());
    for (const auto& rec : pool) footprints.push_back(client_footprint_mb(config, rec.rank));
    if (!check_feasibility(footprints, pool, config.profiles)) {
        writer.write_infeasibility_marker("memory footprint exceeds device capacity");
        writer.close();
        summary.feasible = false;
        return summary;
    }

    auto strategy = make_strategy(config.method, base, task, pool, config.train, config.seed,
                                  config.mode == "local_only");

    CostLedger ledger;
    double sim_time_seconds = 0.0;
    double best_eval_accuracy = -1.0;
    std::size_t rounds_since_improvement = 0;

    for (std::size_t round = 0; round < config.rounds; ++round) {
        const double multiplier =
            config.perturbation.kind == PerturbationKind::BandwidthFluctuation
                ? bandwidth_multiplier(sim_time_seconds / 3600.0)
                : 1.0;

        RngStream select_stream = RngStream::derive(config.seed, "select", round);
        const std::vector<std::size_t> selected =
            select_clients(pool.size(), config.clients_per_round, select_stream);

        std::vector<bool> dropped(selected.size(), false);
        if (config.perturbation.kind == PerturbationKind::Dropout) {
            RngStream drop_stream = RngStream::derive(config.seed, "dropout", round);
            dropped = apply_dropout(selected.size(), config.perturbation.dropout_ratio,
                                    drop_stream);
        }

        const std::vector<ClientRoundResult> results =
            strategy->run_round(round, selected, dropped);

        RoundRecord record;
        record.round = round;
        record.selected = selected;
        std::vector<double> durations;
        double loss_weight = 0.0;
        for (const auto& res : results) {
            const ClientRecord& rec = pool[res.client_id];
            const DeviceProfile& profile = config.profiles[rec.device_index];
            const double timeout =
                res.dropped ? config.perturbation.upload_timeout_seconds : 0.0;
            const ClientCosts costs =
                client_costs(profile, res.down_bytes, res.up_bytes,
                             static_cast<double>(res.train_steps), multiplier,
                             footprints[res.client_id], timeout);

            PerClientRecord pc;
            pc.client_id = res.client_id;
            pc.train_seconds = costs.train_seconds;
            pc.comm_seconds = costs.comm_seconds;
            pc.down_bytes = res.down_bytes;
            pc.up_bytes = res.up_bytes;
            pc.activation_bytes_up = res.activation_bytes_up;
            pc.gradient_bytes_down = res.gradient_bytes_down;
            pc.energy_kj = costs.energy_kj;
            pc.peak_memory_mb = costs.peak_memory_mb;
            pc.dropped = res.dropped;
            record.clients.push_back(pc);

            durations.push_back(costs.train_seconds + costs.comm_seconds);
            ledger.add_client(res.client_id, res.down_bytes + res.up_bytes, costs.energy_kj,
                              costs.peak_memory_mb);
            record.train_loss += res.mean_batch_loss * static_cast<double>(res.sample_count);
            loss_weight += static_cast<double>(res.sample_count);
        }
        record.train_loss /= loss_weight;
        record.wall_clock_seconds =
            round_wall_clock(durations, config.server_aggregation_seconds);
        ledger.add_round_wall(record.wall_clock_seconds);
        sim_time_seconds += record.wall_clock_seconds;

        record.adapters_hash = strategy->state_hash();
        if ((round + 1) % config.eval_cadence == 0) {
            const EvalResult eval = strategy->evaluate_now(task.test);
            record.eval = EvalSnapshot{eval.loss, eval.accuracy};
        }
        record.cum_wall_clock_hours = ledger.wall_clock_hours;
        record.cum_comm_bytes = ledger.comm_bytes;
        record.cum_energy_kj = ledger.energy_kj;
        writer.write_record(record);
        summary.rounds_executed = round + 1;

        if (observer) observer(round, *strategy);

        if (config.early_stop && record.eval) {
            if (record.eval->accuracy > best_eval_accuracy + config.early_stop_min_delta) {
                best_eval_accuracy = record.eval->accuracy;
                rounds_since_improvement = 0;
            } else if (++rounds_since_improvement >= config.early_stop_patience) {
                break;
            }
        }
    }
    writer.close();
    return summary;
}

}  // namespace fedlora
