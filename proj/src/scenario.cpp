#include "fedlora/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>

#include <json.hpp>

#include "fedlora/errors.hpp"
#include "fedlora/matrix.hpp"

namespace fedlora {

using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void unknown_key(const std::string& path, const std::string& key) {
    throw ConfigError("unknown key '" + (path.empty() ? key : path + "." + key) + "'");
}

void check_keys(const ordered_json& j, const std::string& path,
                const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) unknown_key(path, it.key());
    }
}

template <typename T>
void read_field(const ordered_json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void parse_method(const ordered_json& j, MethodConfig& m) {
    check_keys(j, "method",
               {"kind", "rank", "alpha", "prox_mu", "hetero_ranks", "sync_period_rounds",
                "split_layer_index", "split_server_adapters"});
    if (j.contains("kind")) m.kind = method_kind_from_string(j.at("kind").get<std::string>());
    read_field(j, "rank", m.rank);
    bool alpha_given = j.contains("alpha");
    read_field(j, "alpha", m.alpha);
    if (!alpha_given) m.alpha = static_cast<double>(m.rank);  // default scaling factor 1
    read_field(j, "prox_mu", m.prox_mu);
    if (j.contains("hetero_ranks"))
        m.hetero_ranks = j.at("hetero_ranks").get<std::map<std::string, std::size_t>>();
    read_field(j, "sync_period_rounds", m.sync_period_rounds);
    read_field(j, "split_layer_index", m.split_layer_index);
    read_field(j, "split_server_adapters", m.split_server_adapters);
}

void parse_model(const ordered_json& j, ModelSpec& m) {
    check_keys(j, "model",
               {"input_dim", "hidden_dims", "num_classes", "activation", "pretrain_noise"});
    read_field(j, "input_dim", m.input_dim);
    read_field(j, "hidden_dims", m.hidden_dims);
    read_field(j, "num_classes", m.num_classes);
    read_field(j, "activation", m.activation);
    read_field(j, "pretrain_noise", m.pretrain_noise);
}

void parse_task(const ordered_json& j, TaskSpec& t) {
    check_keys(j, "task",
               {"num_clients", "samples_per_client", "test_samples", "concentration"});
    read_field(j, "num_clients", t.num_clients);
    read_field(j, "samples_per_client", t.samples_per_client);
    read_field(j, "test_samples", t.test_samples);
    read_field(j, "concentration", t.concentration);
}

void parse_profiles(const ordered_json& j, std::vector<DeviceProfile>& profiles) {
    // Overrides are keyed by device name; unknown names are errors.
    for (auto it = j.begin(); it != j.end(); ++it) {
        DeviceProfile* target = nullptr;
        for (auto& p : profiles)
            if (p.name == it.key()) target = &p;
        if (!target) unknown_key("clients.profiles", it.key());
        check_keys(*it, "clients.profiles." + it.key(),
                   {"steps_per_second", "memory_capacity_mb", "active_power_watts",
                    "comm_power_watts", "bandwidth_mbps"});
        read_field(*it, "steps_per_second", target->steps_per_second);
        read_field(*it, "memory_capacity_mb", target->memory_capacity_mb);
        read_field(*it, "active_power_watts", target->active_power_watts);
        read_field(*it, "comm_power_watts", target->comm_power_watts);
        read_field(*it, "bandwidth_mbps", target->bandwidth_mbps);
    }
}

void parse_clients(const ordered_json& j, ScenarioConfig& c) {
    check_keys(j, "clients", {"mix", "per_round", "profiles"});
    read_field(j, "mix", c.mix_counts);
    read_field(j, "per_round", c.clients_per_round);
    if (j.contains("profiles")) parse_profiles(j.at("profiles"), c.profiles);
}

void parse_training(const ordered_json& j, ScenarioConfig& c) {
    check_keys(j, "training",
               {"rounds", "local_epochs", "batch_size", "learning_rate", "weight_decay",
                "beta1", "beta2", "epsilon", "eval_cadence", "early_stop",
                "early_stop_patience", "early_stop_min_delta", "mode"});
    read_field(j, "rounds", c.rounds);
    read_field(j, "local_epochs", c.train.local_epochs);
    read_field(j, "batch_size", c.train.batch_size);
    read_field(j, "learning_rate", c.train.learning_rate);
    read_field(j, "weight_decay", c.train.weight_decay);
    read_field(j, "beta1", c.train.beta1);
    read_field(j, "beta2", c.train.beta2);
    read_field(j, "epsilon", c.train.epsilon);
    read_field(j, "eval_cadence", c.eval_cadence);
    read_field(j, "early_stop", c.early_stop);
    read_field(j, "early_stop_patience", c.early_stop_patience);
    read_field(j, "early_stop_min_delta", c.early_stop_min_delta);
    read_field(j, "mode", c.mode);
}

void parse_perturbation(const ordered_json& j, PerturbationSpec& p) {
    check_keys(j, "perturbation", {"kind", "ratio", "upload_timeout_seconds", "mix"});
    if (j.contains("kind"))
        p.kind = perturbation_kind_from_string(j.at("kind").get<std::string>());
    read_field(j, "ratio", p.dropout_ratio);
    read_field(j, "upload_timeout_seconds", p.upload_timeout_seconds);
    read_field(j, "mix", p.mix_counts);
}

void parse_budget(const ordered_json& j, Budget& b) {
    check_keys(j, "budget", {"comm_mb", "wall_clock_hours", "energy_kj", "memory_mb"});
    if (j.contains("comm_mb")) b.comm_mb = j.at("comm_mb").get<double>();
    if (j.contains("wall_clock_hours"))
        b.wall_clock_hours = j.at("wall_clock_hours").get<double>();
    if (j.contains("energy_kj")) b.energy_kj = j.at("energy_kj").get<double>();
    if (j.contains("memory_mb")) b.memory_mb = j.at("memory_mb").get<double>();
}

void parse_targets(const ordered_json& j, TargetSpec& t) {
    check_keys(j, "targets", {"targets_pct", "fractions", "pretrained_acc_pct",
                              "centroid_acc_pct"});
    read_field(j, "targets_pct", t.targets_pct);
    read_field(j, "fractions", t.fractions);
    if (j.contains("pretrained_acc_pct"))
        t.pretrained_acc_pct = j.at("pretrained_acc_pct").get<double>();
    if (j.contains("centroid_acc_pct"))
        t.centroid_acc_pct = j.at("centroid_acc_pct").get<double>();
}

}  // namespace

const std::vector<std::size_t>& ScenarioConfig::effective_mix() const {
    if (perturbation.kind == PerturbationKind::HeterogeneityMix) return perturbation.mix_counts;
    return mix_counts;
}

void ScenarioConfig::validate() const {
    if (name.empty()) throw ConfigError("name: must not be empty");
    for (const auto& p : profiles) p.validate("clients.profiles." + p.name);
    if (mix_counts.size() != profiles.size())
        throw ConfigError("clients.mix: need one count per device class (" +
                          std::to_string(profiles.size()) + ")");
    const std::size_t pool =
        std::accumulate(mix_counts.begin(), mix_counts.end(), std::size_t{0});
    if (pool != task.num_clients)
        throw ConfigError("clients.mix: counts sum to " + std::to_string(pool) +
                          " but task.num_clients is " + std::to_string(task.num_clients));
    if (clients_per_round < 1 || clients_per_round > pool)
        throw ConfigError("clients.per_round: must be in [1, pool size " +
                          std::to_string(pool) + "]");
    if (rounds < 1) throw ConfigError("training.rounds: must be >= 1");
    if (eval_cadence < 1) throw ConfigError("training.eval_cadence: must be >= 1");
    if (train.local_epochs < 1) throw ConfigError("training.local_epochs: must be >= 1");
    if (train.batch_size < 1) throw ConfigError("training.batch_size: must be >= 1");
    if (!(train.learning_rate > 0.0)) throw ConfigError("training.learning_rate: must be > 0");
    if (train.weight_decay < 0.0) throw ConfigError("training.weight_decay: must be >= 0");
    if (!(train.beta1 >= 0.0 && train.beta1 < 1.0))
        throw ConfigError("training.beta1: must be in [0, 1)");
    if (!(train.beta2 >= 0.0 && train.beta2 < 1.0))
        throw ConfigError("training.beta2: must be in [0, 1)");
    if (!(train.epsilon > 0.0)) throw ConfigError("training.epsilon: must be > 0");
    if (mode != "federated" && mode != "local_only")
        throw ConfigError("training.mode: must be 'federated' or 'local_only'");
    if (method.prox_mu < 0.0) throw ConfigError("method.prox_mu: must be >= 0");
    if (method.sync_period_rounds < 1)
        throw ConfigError("method.sync_period_rounds: must be >= 1");
    perturbation.validate(task.num_clients, profiles.size());
    if (server_aggregation_seconds < 0.0)
        throw ConfigError("server.aggregation_seconds: must be >= 0");
    if (memory_overhead_mb < 0.0) throw ConfigError("sim.memory_overhead_mb: must be >= 0");
    budget.validate();
}

ScenarioConfig parse_scenario_json(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ScenarioConfig c;
    try {
        check_keys(j, "",
                   {"name", "seed", "method", "model", "task", "clients", "training",
                    "perturbation", "server", "sim", "budget", "targets"});
        read_field(j, "name", c.name);
        read_field(j, "seed", c.seed);
        if (j.contains("method")) parse_method(j.at("method"), c.method);
        if (j.contains("model")) parse_model(j.at("model"), c.model);
        if (j.contains("task")) parse_task(j.at("task"), c.task);
        if (j.contains("clients")) parse_clients(j.at("clients"), c);
        if (j.contains("training")) parse_training(j.at("training"), c);
        if (j.contains("perturbation")) parse_perturbation(j.at("perturbation"), c.perturbation);
        if (j.contains("server")) {
            check_keys(j.at("server"), "server", {"aggregation_seconds"});
            read_field(j.at("server"), "aggregation_seconds", c.server_aggregation_seconds);
        }
        if (j.contains("sim")) {
            check_keys(j.at("sim"), "sim", {"memory_overhead_mb"});
            read_field(j.at("sim"), "memory_overhead_mb", c.memory_overhead_mb);
        }
        if (j.contains("budget")) parse_budget(j.at("budget"), c.budget);
        if (j.contains("targets")) parse_targets(j.at("targets"), c.targets);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config type error: ") + e.what());
    }
    c.validate();
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ScenarioConfig c = parse_scenario_json(text);
    if (const char* env = std::getenv(kSeedEnvVar)) {
        c.seed = std::stoull(env);
    }
    return c;
}

std::string canonical_scenario_json(const ScenarioConfig& c) {
    ordered_json j;
    j["name"] = c.name;
    j["seed"] = c.seed;
    j["method"] = {{"kind", to_string(c.method.kind)},
                   {"rank", c.method.rank},
                   {"alpha", c.method.alpha},
                   {"prox_mu", c.method.prox_mu},
                   {"hetero_ranks", c.method.hetero_ranks},
                   {"sync_period_rounds", c.method.sync_period_rounds},
                   {"split_layer_index", c.method.split_layer_index},
                   {"split_server_adapters", c.method.split_server_adapters}};
    j["model"] = {{"input_dim", c.model.input_dim},
                  {"hidden_dims", c.model.hidden_dims},
                  {"num_classes", c.model.num_classes},
                  {"activation", c.model.activation},
                  {"pretrain_noise", c.model.pretrain_noise}};
    j["task"] = {{"num_clients", c.task.num_clients},
                 {"samples_per_client", c.task.samples_per_client},
                 {"test_samples", c.task.test_samples},
                 {"concentration", c.task.concentration}};
    ordered_json profiles = ordered_json::object();
    for (const auto& p : c.profiles) {
        profiles[p.name] = {{"steps_per_second", p.steps_per_second},
                            {"memory_capacity_mb", p.memory_capacity_mb},
                            {"active_power_watts", p.active_power_watts},
                            {"comm_power_watts", p.comm_power_watts},
                            {"bandwidth_mbps", p.bandwidth_mbps}};
    }
    j["clients"] = {{"mix", c.mix_counts},
                    {"per_round", c.clients_per_round},
                    {"profiles", profiles}};
    j["training"] = {{"rounds", c.rounds},
                     {"local_epochs", c.train.local_epochs},
                     {"batch_size", c.train.batch_size},
                     {"learning_rate", c.train.learning_rate},
                     {"weight_decay", c.train.weight_decay},
                     {"beta1", c.train.beta1},
                     {"beta2", c.train.beta2},
                     {"epsilon", c.train.epsilon},
                     {"eval_cadence", c.eval_cadence},
                     {"early_stop", c.early_stop},
                     {"early_stop_patience", c.early_stop_patience},
                     {"early_stop_min_delta", c.early_stop_min_delta},
                     {"mode", c.mode}};
    j["perturbation"] = {{"kind", to_string(c.perturbation.kind)},
                         {"ratio", c.perturbation.dropout_ratio},
                         {"upload_timeout_seconds", c.perturbation.upload_timeout_seconds},
                         {"mix", c.perturbation.mix_counts}};
    j["server"] = {{"aggregation_seconds", c.server_aggregation_seconds}};
    j["sim"] = {{"memory_overhead_mb", c.memory_overhead_mb}};
    return j.dump();
}

std::uint64_t scenario_config_hash(const ScenarioConfig& config) {
    const std::string canon = canonical_scenario_json(config);
    return fnv1a64(canon.data(), canon.size());
}

}  // namespace fedlora
