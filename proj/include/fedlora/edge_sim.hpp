#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fedlora/rng.hpp"

namespace fedlora {

struct DeviceProfile {
    std::string name;
    double steps_per_second;
    double memory_capacity_mb;   // MB = 2^20 bytes
    double active_power_watts;
    double comm_power_watts;
    double bandwidth_mbps;       // decimal megabits per second

    void validate(const std::string& where) const;
};

// Five classes ordered faster -> slower. The throughput/power numbers are
// synthetic placeholders (config-overridable); only the orderings and the
// memory capacities carry meaning.
std::vector<DeviceProfile> default_device_profiles();

struct ClientRecord {
    std::size_t client_id;
    std::size_t device_index;  // into the profile list
    std::size_t rank;          // adapter rank this client trains at
};

// Uniform sample of `count` distinct clients from [0, pool_size), sorted by
// id (canonical downstream ordering).
std::vector<std::size_t> select_clients(std::size_t pool_size, std::size_t count,
                                        RngStream& stream);

// Synchronous-round straggler rule.
double round_wall_clock(const std::vector<double>& client_durations,
                        double server_aggregation_seconds);

struct ClientCosts {
    double train_seconds = 0.0;
    double comm_seconds = 0.0;
    double energy_kj = 0.0;
    double peak_memory_mb = 0.0;
};

// extra_comm_seconds models a stalled upload (dropout detected by server
// timeout): time and comm power are spent, no bytes complete.
ClientCosts client_costs(const DeviceProfile& profile, std::uint64_t down_bytes,
                         std::uint64_t up_bytes, double train_steps, double bandwidth_multiplier,
                         double peak_memory_mb, double extra_comm_seconds = 0.0);

struct FootprintSpec {
    std::vector<std::pair<std::size_t, std::size_t>> layer_dims;  // counted layers only
    std::size_t rank = 8;
    std::size_t batch = 16;
    double overhead_mb = 64.0;
};

// Client-side training footprint: frozen params + trainable factors +
// their gradients + two optimizer moments + activation buffers, all f64,
// plus the fixed runtime overhead. SplitLoRA passes only its client-side
// layers.
double memory_footprint(const FootprintSpec& spec);

// A method is deployable only if every pool client fits; footprint strictly
// greater than capacity is an OOM (boundary equality still fits).
bool check_feasibility(const std::vector<double>& per_client_footprints_mb,
                       const std::vector<ClientRecord>& pool,
                       const std::vector<DeviceProfile>& profiles);

struct CostLedger {
    double wall_clock_hours = 0.0;
    std::uint64_t comm_bytes = 0;
    double energy_kj = 0.0;
    std::map<std::size_t, double> peak_memory_mb;  // per-client high-water
    std::set<std::size_t> participants;

    double comm_mb() const { return static_cast<double>(comm_bytes) / 1e6; }

    void add_client(std::size_t client_id, std::uint64_t bytes, double energy, double peak_mb);
    void add_round_wall(double seconds) { wall_clock_hours += seconds / 3600.0; }

    // Mean high-water mark over every participant so far.
    double average_peak_memory_mb() const;
    double max_peak_memory_mb() const;
};

}  // namespace fedlora
