#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fedlora/edge_sim.hpp"
#include "fedlora/fed_methods.hpp"
#include "fedlora/lora_model.hpp"
#include "fedlora/perturbations.hpp"
#include "fedlora/protocols.hpp"
#include "fedlora/task.hpp"

namespace fedlora {

// Overrides the config seed when set (CI smoke runs).
inline constexpr const char* kSeedEnvVar = "FEDLORA_SEED";

struct ScenarioConfig {
    std::string name = "default";
    std::uint64_t seed = 42;
    MethodConfig method;
    ModelSpec model;
    TaskSpec task;

    std::vector<std::size_t> mix_counts = {20, 20, 20, 20, 20};
    std::vector<DeviceProfile> profiles = default_device_profiles();
    std::size_t clients_per_round = 10;

    std::size_t rounds = 50;
    TrainConfig train;
    std::size_t eval_cadence = 1;
    bool early_stop = false;
    std::size_t early_stop_patience = 10;
    double early_stop_min_delta = 1e-4;
    std::string mode = "federated";  // or "local_only"

    PerturbationSpec perturbation;
    double server_aggregation_seconds = 1.0;
    double memory_overhead_mb = 64.0;

    Budget budget;              // defaults for eval-a
    TargetSpec targets;         // defaults for eval-b

    // The device mix actually simulated (heterogeneity perturbation replaces
    // the nominal mix; data shards never change with it).
    const std::vector<std::size_t>& effective_mix() const;

    void validate() const;
};

// Strict parse: unknown keys anywhere are errors naming the field path.
ScenarioConfig parse_scenario_json(const std::string& json_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Canonical serialization (every field, fixed order); its hash is the trace
// header's config identity.
std::string canonical_scenario_json(const ScenarioConfig& config);
std::uint64_t scenario_config_hash(const ScenarioConfig& config);

}  // namespace fedlora
