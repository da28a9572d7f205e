#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fedlora/edge_sim.hpp"
#include "fedlora/lora_model.hpp"
#include "fedlora/task.hpp"

namespace fedlora {

enum class MethodKind { FedAvgLora, FedProxLora, HeteroLora, SplitLora };

MethodKind method_kind_from_string(const std::string& s);
std::string to_string(MethodKind k);

struct MethodConfig {
    MethodKind kind = MethodKind::FedAvgLora;
    std::size_t rank = 8;
    double alpha = 8.0;  // default equals rank (scaling factor 1)
    double prox_mu = 0.01;
    // HeteroLoRA: rank per device class name.
    std::map<std::string, std::size_t> hetero_ranks = {
        {"Jetson", 8}, {"IQOO", 8}, {"P50", 4}, {"Mate20", 4}, {"Nova9", 4}};
    std::size_t sync_period_rounds = 1;
    std::size_t split_layer_index = 1;
    bool split_server_adapters = true;
};

struct TrainConfig {
    std::size_t local_epochs = 1;
    std::size_t batch_size = 1;
    double learning_rate = 2e-4;
    double weight_decay = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    AdapterOptState make_opt_state(const AdapterSet& adapters) const {
        return AdapterOptState::init(adapters, learning_rate, weight_decay, beta1, beta2,
                                     epsilon);
    }
};

struct ClientPayload {
    std::size_t client_id = 0;
    AdapterSet update;
    std::size_t sample_count = 0;
    std::uint64_t payload_bytes = 0;  // always adapter_payload_bytes(update)
};

// The single sizing rule every byte count flows through: f64 elements x 8.
std::uint64_t adapter_payload_bytes(const AdapterSet& adapters);

// Sample-count-weighted mean of equal-shape adapter sets. Payload order is
// canonicalized internally (sort by client id), so the result is
// permutation-invariant.
AdapterSet aggregate_fedavg(std::vector<ClientPayload> payloads);

// Zero-pad A to [r_max x in] (extra rows) and B to [out x r_max] (extra
// columns). alpha rescales to alpha * r_max / r so the effective delta
// (alpha/r) B.A is preserved exactly.
AdapterSet pad_adapters(const AdapterSet& adapters, std::size_t r_max);

// First r rows of A / columns of B; inverse of pad_adapters.
AdapterSet truncate_adapters(const AdapterSet& adapters, std::size_t r);

// Mixed-rank aggregation: pad every payload to r_max, weighted-average as in
// aggregate_fedavg. Clients receive the aggregate truncated to their rank.
AdapterSet aggregate_hetero(std::vector<ClientPayload> payloads, std::size_t r_max);

struct ClientRoundResult {
    std::size_t client_id = 0;
    std::size_t sample_count = 0;
    std::size_t train_steps = 0;
    std::uint64_t down_bytes = 0;
    std::uint64_t up_bytes = 0;
    // SplitLoRA breakdown (already included in the totals above):
    std::uint64_t activation_bytes_up = 0;
    std::uint64_t gradient_bytes_down = 0;
    double mean_batch_loss = 0.0;
    bool dropped = false;
};

// One federated method behind a per-round interface. Strategies are
// deterministic: the only state is the adapter state they carry between
// rounds; collection and aggregation always run in client-id order.
class Strategy {
public:
    virtual ~Strategy() = default;

    // Runs the selected clients' local work for one round and aggregates
    // the surviving uploads. `dropped` aligns with `selected` (sorted ids).
    virtual std::vector<ClientRoundResult> run_round(std::size_t round_index,
                                                     const std::vector<std::size_t>& selected,
                                                     const std::vector<bool>& dropped) = 0;

    // The state a fresh client would receive; evaluation runs against it.
    virtual const AdapterSet& global_adapters() const = 0;

    virtual EvalResult evaluate_now(const TaskShard& test) const;

    virtual std::size_t client_rank(std::size_t client_id) const = 0;

    // Deterministic witness of the adapter state after a round; recorded in
    // the trace so degeneracy equivalences are byte-testable.
    virtual std::uint64_t state_hash() const { return global_adapters().content_hash(); }

protected:
    Strategy(const BaseModel& base, const TaskData& task, const TrainConfig& train)
        : base_(base), task_(task), train_(train) {}

    const BaseModel& base_;
    const TaskData& task_;
    TrainConfig train_;
};

// `pool` must already carry per-client ranks (assign_ranks). `local_only`
// switches off aggregation: clients keep personal adapters and evaluation
// averages over the pool.
std::unique_ptr<Strategy> make_strategy(const MethodConfig& config, const BaseModel& base,
                                        const TaskData& task,
                                        const std::vector<ClientRecord>& pool,
                                        const TrainConfig& train, std::uint64_t seed,
                                        bool local_only = false);

// Fill ClientRecord::rank from the method config (HeteroLoRA consults its
// device-class map; everything else uses the uniform rank).
void assign_ranks(std::vector<ClientRecord>& pool, const std::vector<DeviceProfile>& profiles,
                  const MethodConfig& config);

// Fixed batch schedule: sequential [start, end) row ranges of size
// batch_size, last one possibly short.
std::vector<std::pair<std::size_t, std::size_t>> batch_ranges(std::size_t n,
                                                              std::size_t batch_size);

Matrix shard_rows(const TaskShard& shard, std::size_t begin, std::size_t end);
std::vector<std::size_t> shard_labels(const TaskShard& shard, std::size_t begin, std::size_t end);

}  // namespace fedlora
