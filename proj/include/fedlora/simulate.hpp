#pragma once

#include <filesystem>
#include <functional>

#include "fedlora/fed_methods.hpp"
#include "fedlora/scenario.hpp"
#include "fedlora/trace.hpp"

namespace fedlora {

struct RunSummary {
    bool feasible = true;
    std::size_t rounds_executed = 0;
    std::filesystem::path trace_path;
};

// Called after each round with the live strategy; tests hook adapter
// trajectories through it.
using RoundObserver = std::function<void(std::size_t round, const Strategy& strategy)>;

// Stage 2+3: feasibility check, then the round loop with online ledger
// updates, each RoundRecord written as it completes. The virtual clock
// advances by the straggler rule; nothing sleeps.
RunSummary run_scenario(const ScenarioConfig& config, const std::filesystem::path& trace_path,
                        const RoundObserver& observer = nullptr);

// Per-client memory footprint for this scenario (depends on the method and
// the client's rank but not on its device).
double client_footprint_mb(const ScenarioConfig& config, std::size_t rank);

}  // namespace fedlora
