#pragma once

#include <cstdint>
#include <vector>

#include "fedlora/lora_model.hpp"
#include "fedlora/matrix.hpp"

namespace fedlora {

struct TaskShard {
    Matrix features;                  // [n x input_dim]
    std::vector<std::size_t> labels;  // teacher argmax classes
    std::size_t client_id = 0;
};

struct TaskSpec {
    std::size_t num_clients = 100;
    std::size_t samples_per_client = 64;
    std::size_t test_samples = 1024;
    double concentration = 0.5;  // Dirichlet skew; large -> IID
};

struct TaskData {
    std::vector<TaskShard> shards;
    TaskShard test;

    // Bookkeeping for the disjointness check: each shard is generated from
    // stream ("task.client", client_id); the test set from ("task.test", 0).
    std::vector<std::uint64_t> shard_stream_seeds;
    std::uint64_t test_stream_seed = 0;

    std::size_t total_train_samples() const;
};

// Synthetic non-IID classification task. Shard contents are a pure function
// of (seed, client_id): per-client label proportions come from a symmetric
// Dirichlet, sample counts are equal across clients, and features are drawn
// from the client's own stream until the teacher-labeled class quotas fill.
TaskData generate_task(const BaseModel& teacher, const TaskSpec& spec, std::uint64_t seed);

// Largest-remainder rounding of proportions*total into integer counts
// (ties toward lower index). Exposed for tests.
std::vector<std::size_t> quota_from_proportions(const std::vector<double>& proportions,
                                                std::size_t total);

}  // namespace fedlora
