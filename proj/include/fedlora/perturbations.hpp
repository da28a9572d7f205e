#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fedlora/edge_sim.hpp"
#include "fedlora/rng.hpp"

namespace fedlora {

enum class PerturbationKind { None, BandwidthFluctuation, Dropout, HeterogeneityMix };

struct PerturbationSpec {
    PerturbationKind kind = PerturbationKind::None;
    double dropout_ratio = 0.0;                  // in [0, 1)
    double upload_timeout_seconds = 30.0;        // server wait before declaring a drop
    std::vector<std::size_t> mix_counts;         // per device class, must sum to the pool size

    void validate(std::size_t pool_size, std::size_t num_device_classes) const;
};

PerturbationKind perturbation_kind_from_string(const std::string& s);
std::string to_string(PerturbationKind k);

// Piecewise-constant bandwidth schedule with a 1-hour cycle:
// [0,1/3) -> 1, [1/3,2/3) -> 1/2, [2/3,1) -> 1/4, repeating.
double bandwidth_multiplier(double sim_time_hours);

// One Bernoulli(ratio) draw per selected client, in selection order.
std::vector<bool> apply_dropout(std::size_t selected_count, double ratio, RngStream& stream);

// Deterministic pool layout: ids 0..N-1 get device classes in class order by
// count blocks. Ranks are filled in by the strategy setup.
std::vector<ClientRecord> build_mix(const std::vector<std::size_t>& counts_per_class,
                                    std::size_t pool_size);

}  // namespace fedlora
