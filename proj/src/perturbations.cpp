#include "fedlora/perturbations.hpp"

#include <cmath>
#include <numeric>

#include "fedlora/errors.hpp"

namespace fedlora {

void PerturbationSpec::validate(std::size_t pool_size, std::size_t num_device_classes) const {
    if (kind == PerturbationKind::Dropout) {
        if (!(dropout_ratio >= 0.0 && dropout_ratio < 1.0))
            throw ConfigError("perturbation.ratio: must be in [0, 1)");
        if (!(upload_timeout_seconds >= 0.0))
            throw ConfigError("perturbation.upload_timeout_seconds: must be >= 0");
    }
    if (kind == PerturbationKind::HeterogeneityMix) {
        if (mix_counts.size() != num_device_classes)
            throw ConfigError("perturbation.mix: need one count per device class");
        const std::size_t total = std::accumulate(mix_counts.begin(), mix_counts.end(),
                                                  std::size_t{0});
        if (total != pool_size)
            throw ConfigError("perturbation.mix: counts sum to " + std::to_string(total) +
                              ", pool size is " + std::to_string(pool_size));
    }
}

PerturbationKind perturbation_kind_from_string(const std::string& s) {
    if (s == "none") return PerturbationKind::None;
    if (s == "bandwidth_fluctuation") return PerturbationKind::BandwidthFluctuation;
    if (s == "dropout") return PerturbationKind::Dropout;
    if (s == "heterogeneity_mix") return PerturbationKind::HeterogeneityMix;
    throw ConfigError("perturbation.kind: unknown kind '" + s + "'");
}

std::string to_string(PerturbationKind k) {
    switch (k) {
        case PerturbationKind::None: return "none";
        case PerturbationKind::BandwidthFluctuation: return "bandwidth_fluctuation";
        case PerturbationKind::Dropout: return "dropout";
        case PerturbationKind::HeterogeneityMix: return "heterogeneity_mix";
    }
    return "?";
}

double bandwidth_multiplier(double sim_time_hours) {
    if (sim_time_hours < 0.0)
        throw std::invalid_argument("bandwidth_multiplier: negative time");
    const double phase = sim_time_hours - std::floor(sim_time_hours);
    if (phase < 1.0 / 3.0) return 1.0;
    if (phase < 2.0 / 3.0) return 0.5;
    return 0.25;
}

std::vector<bool> apply_dropout(std::size_t selected_count, double ratio, RngStream& stream) {
    if (!(ratio >= 0.0 && ratio < 1.0))
        throw ConfigError("perturbation.ratio: must be in [0, 1)");
    std::vector<bool> dropped(selected_count, false);
    if (ratio == 0.0) return dropped;
    for (std::size_t i = 0; i < selected_count; ++i) dropped[i] = stream.next_double() < ratio;
    return dropped;
}

std::vector<ClientRecord> build_mix(const std::vector<std::size_t>& counts_per_class,
                                    std::size_t pool_size) {
    const std::size_t total =
        std::accumulate(counts_per_class.begin(), counts_per_class.end(), std::size_t{0});
    if (total != pool_size)
        throw ConfigError("clients.mix: counts sum to " + std::to_string(total) +
                          ", pool size is " + std::to_string(pool_size));
    std::vector<ClientRecord> pool;
    pool.reserve(pool_size);
    std::size_t id = 0;
    for (std::size_t cls = 0; cls < counts_per_class.size(); ++cls)
        for (std::size_t i = 0; i < counts_per_class[cls]; ++i)
            pool.push_back({id++, cls, 0});
    return pool;
}

}  // namespace fedlora
