#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace fedlora {

// One master seed expands into named, counter-indexed substreams. Streams are
// derived independently, so introducing a perturbation (its own stream) never
// shifts the randomness consumed by selection, task generation, or init.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t counter = 0);

// xoshiro256++ with explicit, self-contained distributions. std:: distributions
// are implementation-defined, which would make traces toolchain-dependent.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    static RngStream derive(std::uint64_t master, std::string_view label,
                            std::uint64_t counter = 0) {
        return RngStream(derive_seed(master, label, counter));
    }

    std::uint64_t next_u64();

    // Uniform in [0, 1) with 53 random bits.
    double next_double();

    // Uniform integer in [0, bound), unbiased (rejection).
    std::uint64_t next_below(std::uint64_t bound);

    // Standard normal via Box-Muller; generates pairs, caches the second.
    double next_gaussian();

    // Gamma(shape, 1) via Marsaglia-Tsang, boosted for shape < 1.
    double next_gamma(double shape);

    // Symmetric Dirichlet(concentration) over k categories.
    std::vector<double> next_dirichlet(double concentration, std::size_t k);

    // k distinct indices sampled uniformly from [0, n), returned sorted.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::uint64_t state_[4];
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

}  // namespace fedlora
