#include "fedlora/edge_sim.hpp"

#include <algorithm>
#include <stdexcept>

#include "fedlora/errors.hpp"

namespace fedlora {

void DeviceProfile::validate(const std::string& where) const {
    auto positive = [&](double v, const char* field) {
        if (!(v > 0.0)) throw ConfigError(where + "." + field + ": must be > 0");
    };
    positive(steps_per_second, "steps_per_second");
    positive(memory_capacity_mb, "memory_capacity_mb");
    positive(active_power_watts, "active_power_watts");
    positive(comm_power_watts, "comm_power_watts");
    positive(bandwidth_mbps, "bandwidth_mbps");
}

std::vector<DeviceProfile> default_device_profiles() {
    return {
        {"Jetson", 50.0, 8192.0, 15.0, 3.0, 100.0},
        {"IQOO", 40.0, 16384.0, 8.0, 2.0, 100.0},
        {"P50", 25.0, 8192.0, 6.0, 2.0, 100.0},
        {"Mate20", 15.0, 6144.0, 5.0, 2.0, 100.0},
        {"Nova9", 10.0, 8192.0, 5.0, 2.0, 100.0},
    };
}

std::vector<std::size_t> select_clients(std::size_t pool_size, std::size_t count,
                                        RngStream& stream) {
    if (count > pool_size)
        throw ConfigError("clients_per_round: " + std::to_string(count) + " exceeds pool of " +
                          std::to_string(pool_size));
    return stream.sample_without_replacement(pool_size, count);
}

double round_wall_clock(const std::vector<double>& client_durations,
                        double server_aggregation_seconds) {
    if (client_durations.empty())
        throw std::invalid_argument("round_wall_clock: no client durations");
    double mx = client_durations[0];
    for (double d : client_durations) mx = std::max(mx, d);
    return mx + server_aggregation_seconds;
}

ClientCosts client_costs(const DeviceProfile& profile, std::uint64_t down_bytes,
                         std::uint64_t up_bytes, double train_steps, double bandwidth_multiplier,
                         double peak_memory_mb, double extra_comm_seconds) {
    if (!(bandwidth_multiplier > 0.0) || bandwidth_multiplier > 1.0)
        throw std::invalid_argument("client_costs: bandwidth multiplier must be in (0,1]");
    ClientCosts c;
    const double bits = static_cast<double>(down_bytes + up_bytes) * 8.0;
    c.comm_seconds = bits / (profile.bandwidth_mbps * bandwidth_multiplier * 1e6) +
                     extra_comm_seconds;
    c.train_seconds = train_steps / profile.steps_per_second;
    c.energy_kj = (profile.active_power_watts * c.train_seconds +
                   profile.comm_power_watts * c.comm_seconds) /
                  1000.0;
    c.peak_memory_mb = peak_memory_mb;
    return c;
}

double memory_footprint(const FootprintSpec& spec) {
    std::size_t frozen = 0;
    std::size_t trainable = 0;
    std::size_t activations = spec.layer_dims.empty() ? 0 : spec.layer_dims.front().first;
    for (auto [in, out] : spec.layer_dims) {
        frozen += in * out + out;
        trainable += spec.rank * (in + out);
        activations += spec.rank + out;
    }
    activations *= spec.batch;
    const std::size_t elements = frozen + trainable /*params*/ + trainable /*grads*/ +
                                 2 * trainable /*moments*/ + activations;
    return static_cast<double>(elements) * 8.0 / (1024.0 * 1024.0) + spec.overhead_mb;
}

bool check_feasibility(const std::vector<double>& per_client_footprints_mb,
                       const std::vector<ClientRecord>& pool,
                       const std::vector<DeviceProfile>& profiles) {
    if (per_client_footprints_mb.size() != pool.size())
        throw std::invalid_argument("check_feasibility: footprint/pool size mismatch");
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (per_client_footprints_mb[i] > profiles[pool[i].device_index].memory_capacity_mb)
            return false;
    }
    return true;
}

void CostLedger::add_client(std::size_t client_id, std::uint64_t bytes, double energy,
                            double peak_mb) {
    comm_bytes += bytes;
    energy_kj += energy;
    participants.insert(client_id);
    auto [it, inserted] = peak_memory_mb.try_emplace(client_id, peak_mb);
    if (!inserted) it->second = std::max(it->second, peak_mb);
}

double CostLedger::average_peak_memory_mb() const {
    if (peak_memory_mb.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& [id, peak] : peak_memory_mb) sum += peak;
    return sum / static_cast<double>(peak_memory_mb.size());
}

double CostLedger::max_peak_memory_mb() const {
    double mx = 0.0;
    for (const auto& [id, peak] : peak_memory_mb) mx = std::max(mx, peak);
    return mx;
}

}  // namespace fedlora
