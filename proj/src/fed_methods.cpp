#include "fedlora/fed_methods.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fedlora/errors.hpp"
#include "fedlora/kernels.hpp"

namespace fedlora {

MethodKind method_kind_from_string(const std::string& s) {
    if (s == "fedavg_lora") return MethodKind::FedAvgLora;
    if (s == "fedprox_lora") return MethodKind::FedProxLora;
    if (s == "hetero_lora") return MethodKind::HeteroLora;
    if (s == "split_lora") return MethodKind::SplitLora;
    throw ConfigError("method.kind: unknown kind '" + s + "'");
}

std::string to_string(MethodKind k) {
    switch (k) {
        case MethodKind::FedAvgLora: return "fedavg_lora";
        case MethodKind::FedProxLora: return "fedprox_lora";
        case MethodKind::HeteroLora: return "hetero_lora";
        case MethodKind::SplitLora: return "split_lora";
    }
    return "?";
}

std::uint64_t adapter_payload_bytes(const AdapterSet& adapters) {
    return static_cast<std::uint64_t>(adapters.element_count()) * 8;
}

std::vector<std::pair<std::size_t, std::size_t>> batch_ranges(std::size_t n,
                                                              std::size_t batch_size) {
    if (batch_size == 0) throw ConfigError("training.batch_size: must be >= 1");
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t b = 0; b < n; b += batch_size) out.emplace_back(b, std::min(b + batch_size, n));
    return out;
}

Matrix shard_rows(const TaskShard& shard, std::size_t begin, std::size_t end) {
    const std::size_t dim = shard.features.cols();
    Matrix out(end - begin, dim);
    std::copy(shard.features.data() + begin * dim, shard.features.data() + end * dim, out.data());
    return out;
}

std::vector<std::size_t> shard_labels(const TaskShard& shard, std::size_t begin, std::size_t end) {
    return {shard.labels.begin() + static_cast<std::ptrdiff_t>(begin),
            shard.labels.begin() + static_cast<std::ptrdiff_t>(end)};
}

namespace {

// Shared accumulation core. Payloads must already be shape-compatible; the
// canonical client-id order fixes the floating-point summation order.
AdapterSet weighted_mean(std::vector<ClientPayload>&& payloads) {
    std::sort(payloads.begin(), payloads.end(),
              [](const ClientPayload& a, const ClientPayload& b) {
                  return a.client_id < b.client_id;
              });
    double total = 0.0;
    for (const auto& p : payloads) total += static_cast<double>(p.sample_count);
    if (!(total > 0.0)) throw StrategyMisuseError("aggregate: zero total sample count");

    // Weights are normalized before accumulation so an aggregate of one
    // payload reproduces it bit-exactly (w = 1.0).
    AdapterSet out = payloads.front().update;
    for (auto& layer : out.layers) {
        layer.a.fill(0.0);
        layer.b.fill(0.0);
    }
    for (const auto& p : payloads) {
        const double w = static_cast<double>(p.sample_count) / total;
        for (std::size_t l = 0; l < out.layers.size(); ++l) {
            kernels::axpy(w, p.update.layers[l].a.data(), out.layers[l].a.data(),
                          out.layers[l].a.size());
            kernels::axpy(w, p.update.layers[l].b.data(), out.layers[l].b.data(),
                          out.layers[l].b.size());
        }
    }
    return out;
}

}  // namespace

AdapterSet aggregate_fedavg(std::vector<ClientPayload> payloads) {
    if (payloads.empty()) throw StrategyMisuseError("aggregate_fedavg: no payloads");
    for (const auto& p : payloads) {
        if (!p.update.same_shape(payloads.front().update))
            throw StrategyMisuseError(
                "aggregate_fedavg: mixed adapter shapes/ranks; use HeteroLoRA aggregation");
    }
    return weighted_mean(std::move(payloads));
}

AdapterSet pad_adapters(const AdapterSet& adapters, std::size_t r_max) {
    AdapterSet out;
    out.first_layer = adapters.first_layer;
    for (const auto& l : adapters.layers) {
        if (l.rank > r_max)
            throw ConfigError("pad_adapters: rank " + std::to_string(l.rank) + " exceeds r_max " +
                              std::to_string(r_max));
        AdapterLayer p;
        p.rank = r_max;
        p.alpha = l.alpha * static_cast<double>(r_max) / static_cast<double>(l.rank);
        p.a = Matrix(r_max, l.a.cols());
        for (std::size_t r = 0; r < l.rank; ++r)
            for (std::size_t c = 0; c < l.a.cols(); ++c) p.a(r, c) = l.a(r, c);
        p.b = Matrix(l.b.rows(), r_max);
        for (std::size_t r = 0; r < l.b.rows(); ++r)
            for (std::size_t c = 0; c < l.rank; ++c) p.b(r, c) = l.b(r, c);
        out.layers.push_back(std::move(p));
    }
    return out;
}

AdapterSet truncate_adapters(const AdapterSet& adapters, std::size_t r) {
    AdapterSet out;
    out.first_layer = adapters.first_layer;
    for (const auto& l : adapters.layers) {
        if (r > l.rank)
            throw ConfigError("truncate_adapters: target rank exceeds current rank");
        AdapterLayer t;
        t.rank = r;
        t.alpha = l.alpha * static_cast<double>(r) / static_cast<double>(l.rank);
        t.a = Matrix(r, l.a.cols());
        for (std::size_t row = 0; row < r; ++row)
            for (std::size_t c = 0; c < l.a.cols(); ++c) t.a(row, c) = l.a(row, c);
        t.b = Matrix(l.b.rows(), r);
        for (std::size_t row = 0; row < l.b.rows(); ++row)
            for (std::size_t c = 0; c < r; ++c) t.b(row, c) = l.b(row, c);
        out.layers.push_back(std::move(t));
    }
    return out;
}

AdapterSet aggregate_hetero(std::vector<ClientPayload> payloads, std::size_t r_max) {
    if (payloads.empty()) throw StrategyMisuseError("aggregate_hetero: no payloads");
    for (auto& p : payloads) p.update = pad_adapters(p.update, r_max);
    for (const auto& p : payloads) {
        for (std::size_t l = 0; l < p.update.layers.size(); ++l) {
            if (p.update.layers[l].alpha != payloads.front().update.layers[l].alpha)
                throw StrategyMisuseError(
                    "aggregate_hetero: padded alpha scalings disagree; configure alpha "
                    "proportional to rank");
        }
    }
    return weighted_mean(std::move(payloads));
}

EvalResult Strategy::evaluate_now(const TaskShard& test) const {
    return evaluate(base_, global_adapters(), test);
}

void assign_ranks(std::vector<ClientRecord>& pool, const std::vector<DeviceProfile>& profiles,
                  const MethodConfig& config) {
    for (auto& rec : pool) {
        if (config.kind == MethodKind::HeteroLora) {
            const std::string& name = profiles[rec.device_index].name;
            auto it = config.hetero_ranks.find(name);
            if (it == config.hetero_ranks.end())
                throw ConfigError("method.hetero_ranks: no rank for device class '" + name + "'");
            rec.rank = it->second;
        } else {
            rec.rank = config.rank;
        }
    }
}

namespace {

AdapterSet slice_adapters(const AdapterSet& full, std::size_t first, std::size_t count) {
    AdapterSet out;
    out.first_layer = first;
    for (std::size_t i = 0; i < count; ++i) out.layers.push_back(full.layers[first + i]);
    return out;
}

class FedAvgFamilyStrategy : public Strategy {
public:
    FedAvgFamilyStrategy(const MethodConfig& config, const BaseModel& base, const TaskData& task,
                         std::vector<ClientRecord> pool, const TrainConfig& train,
                         std::uint64_t seed, bool local_only)
        : Strategy(base, task, train),
          config_(config),
          pool_(std::move(pool)),
          local_only_(local_only) {
        r_max_ = config.rank;
        if (config.kind == MethodKind::HeteroLora) {
            for (const auto& rec : pool_) r_max_ = std::max(r_max_, rec.rank);
        }
        RngStream init = RngStream::derive(seed, "init");
        const double alpha = config.alpha * static_cast<double>(r_max_) /
                             static_cast<double>(config.rank);
        global_ = AdapterSet::init(base, r_max_, alpha, init);
        if (local_only_) {
            for (const auto& rec : pool_)
                personal_.push_back(truncate_adapters(global_, rec.rank));
        }
    }

    std::vector<ClientRoundResult> run_round(std::size_t round_index,
                                             const std::vector<std::size_t>& selected,
                                             const std::vector<bool>& dropped) override {
        (void)round_index;
        std::vector<ClientRoundResult> results;
        std::vector<ClientPayload> survivors;
        for (std::size_t i = 0; i < selected.size(); ++i) {
            const std::size_t c = selected[i];
            const ClientRecord& rec = pool_.at(c);
            AdapterSet local =
                local_only_ ? personal_[c]
                            : (rec.rank == r_max_ ? global_ : truncate_adapters(global_, rec.rank));
            const std::uint64_t state_bytes = adapter_payload_bytes(local);

            const bool use_prox =
                config_.kind == MethodKind::FedProxLora && config_.prox_mu != 0.0;
            AdapterSet anchor;
            if (use_prox) anchor = local;

            ClientRoundResult r;
            r.client_id = c;
            r.dropped = dropped[i];
            const TaskShard& shard = task_.shards.at(c);
            r.sample_count = shard.features.rows();
            AdapterOptState opt = train_.make_opt_state(local);
            double loss_sum = 0.0;
            for (std::size_t e = 0; e < train_.local_epochs; ++e) {
                for (auto [b0, b1] : batch_ranges(r.sample_count, train_.batch_size)) {
                    ProxTerm prox;
                    if (use_prox) prox = {config_.prox_mu, &anchor};
                    loss_sum += local_train_step(base_, local, shard_rows(shard, b0, b1),
                                                 shard_labels(shard, b0, b1), opt, prox);
                    ++r.train_steps;
                }
            }
            r.mean_batch_loss = loss_sum / static_cast<double>(r.train_steps);
            if (local_only_) {
                personal_[c] = std::move(local);
            } else {
                r.down_bytes = state_bytes;
                if (!r.dropped) {
                    r.up_bytes = state_bytes;
                    survivors.push_back({c, std::move(local), r.sample_count, state_bytes});
                }
            }
            results.push_back(std::move(r));
        }
        if (!local_only_ && !survivors.empty()) {
            global_ = (config_.kind == MethodKind::HeteroLora)
                          ? aggregate_hetero(std::move(survivors), r_max_)
                          : aggregate_fedavg(std::move(survivors));
        }
        return results;
    }

    const AdapterSet& global_adapters() const override { return global_; }

    EvalResult evaluate_now(const TaskShard& test) const override {
        if (!local_only_) return Strategy::evaluate_now(test);
        EvalResult mean;
        for (const auto& adapters : personal_) {
            EvalResult r = evaluate(base_, adapters, test);
            mean.loss += r.loss;
            mean.accuracy += r.accuracy;
        }
        mean.loss /= static_cast<double>(personal_.size());
        mean.accuracy /= static_cast<double>(personal_.size());
        return mean;
    }

    std::size_t client_rank(std::size_t client_id) const override {
        return pool_.at(client_id).rank;
    }

    std::uint64_t state_hash() const override {
        if (!local_only_) return global_.content_hash();
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (const auto& adapters : personal_) {
            const std::uint64_t ah = adapters.content_hash();
            h = fnv1a64(&ah, sizeof(ah), h);
        }
        return h;
    }

private:
    MethodConfig config_;
    std::vector<ClientRecord> pool_;
    bool local_only_;
    std::size_t r_max_;
    AdapterSet global_;
    std::vector<AdapterSet> personal_;
};

class SplitStrategy : public Strategy {
public:
    SplitStrategy(const MethodConfig& config, const BaseModel& base, const TaskData& task,
                  std::vector<ClientRecord> pool, const TrainConfig& train, std::uint64_t seed)
        : Strategy(base, task, train), config_(config), pool_(std::move(pool)) {
        if (config.split_layer_index < 1 || config.split_layer_index >= base.layer_count())
            throw ConfigError("method.split_layer_index: must be in [1, layers)");
        RngStream init = RngStream::derive(seed, "init");
        AdapterSet full = AdapterSet::init(base, config.rank, config.alpha, init);
        synced_client_ = slice_adapters(full, 0, config.split_layer_index);
        server_ = slice_adapters(full, config.split_layer_index,
                                 base.layer_count() - config.split_layer_index);
        server_opt_ = train.make_opt_state(server_);
        client_.assign(pool_.size(), synced_client_);
        client_version_.assign(pool_.size(), 0);
        rebuild_combined();
    }

    std::vector<ClientRoundResult> run_round(std::size_t round_index,
                                             const std::vector<std::size_t>& selected,
                                             const std::vector<bool>& dropped) override {
        const bool sync_round = (round_index + 1) % config_.sync_period_rounds == 0;
        const std::uint64_t adapter_bytes = adapter_payload_bytes(synced_client_);
        std::vector<ClientRoundResult> results;
        std::vector<ClientPayload> survivors;
        for (std::size_t i = 0; i < selected.size(); ++i) {
            const std::size_t c = selected[i];
            ClientRoundResult r;
            r.client_id = c;
            r.dropped = dropped[i];
            if (client_version_[c] < synced_version_) {
                client_[c] = synced_client_;
                client_version_[c] = synced_version_;
                r.down_bytes += adapter_bytes;
            }
            AdapterSet& local = client_[c];
            const TaskShard& shard = task_.shards.at(c);
            r.sample_count = shard.features.rows();
            AdapterOptState opt = train_.make_opt_state(local);
            double loss_sum = 0.0;
            for (std::size_t e = 0; e < train_.local_epochs; ++e) {
                for (auto [b0, b1] : batch_ranges(r.sample_count, train_.batch_size)) {
                    Matrix bx = shard_rows(shard, b0, b1);
                    SpanCache client_cache;
                    Matrix act = forward_span(base_, local, bx, &client_cache);
                    const std::uint64_t tensor_bytes =
                        static_cast<std::uint64_t>(act.size()) * 8;

                    SpanCache server_cache;
                    Matrix logits = forward_span(base_, server_, act, &server_cache);
                    LossGrad lg = softmax_cross_entropy(logits, shard_labels(shard, b0, b1));
                    SpanGrads sg = backward_span(base_, server_, server_cache, lg.grad_logits,
                                                 /*want_grad_input=*/true);
                    if (config_.split_server_adapters) {
                        for (std::size_t l = 0; l < server_.layers.size(); ++l) {
                            adamw_update(server_.layers[l].a, sg.a[l], server_opt_.a_states[l]);
                            adamw_update(server_.layers[l].b, sg.b[l], server_opt_.b_states[l]);
                        }
                    }
                    SpanGrads cg = backward_span(base_, local, client_cache, sg.grad_input);
                    for (std::size_t l = 0; l < local.layers.size(); ++l) {
                        adamw_update(local.layers[l].a, cg.a[l], opt.a_states[l]);
                        adamw_update(local.layers[l].b, cg.b[l], opt.b_states[l]);
                    }
                    r.activation_bytes_up += tensor_bytes;
                    r.gradient_bytes_down += tensor_bytes;
                    loss_sum += lg.loss;
                    ++r.train_steps;
                }
            }
            r.mean_batch_loss = loss_sum / static_cast<double>(r.train_steps);
            r.up_bytes += r.activation_bytes_up;
            r.down_bytes += r.gradient_bytes_down;
            if (sync_round && !r.dropped) {
                r.up_bytes += adapter_bytes;
                survivors.push_back({c, local, r.sample_count, adapter_bytes});
            }
            results.push_back(std::move(r));
        }
        if (sync_round && !survivors.empty()) {
            synced_client_ = aggregate_fedavg(std::move(survivors));
            ++synced_version_;
        }
        rebuild_combined();
        return results;
    }

    const AdapterSet& global_adapters() const override { return combined_; }

    std::size_t client_rank(std::size_t client_id) const override {
        (void)client_id;
        return config_.rank;
    }

private:
    void rebuild_combined() {
        combined_.first_layer = 0;
        combined_.layers = synced_client_.layers;
        combined_.layers.insert(combined_.layers.end(), server_.layers.begin(),
                                server_.layers.end());
    }

    MethodConfig config_;
    std::vector<ClientRecord> pool_;
    AdapterSet synced_client_;  // layers [0, split)
    AdapterSet server_;         // layers [split, L)
    AdapterOptState server_opt_;
    std::vector<AdapterSet> client_;
    std::vector<std::size_t> client_version_;
    std::size_t synced_version_ = 0;
    AdapterSet combined_;
};

}  // namespace

std::unique_ptr<Strategy> make_strategy(const MethodConfig& config, const BaseModel& base,
                                        const TaskData& task,
                                        const std::vector<ClientRecord>& pool,
                                        const TrainConfig& train, std::uint64_t seed,
                                        bool local_only) {
    if (config.kind == MethodKind::SplitLora) {
        if (local_only)
            throw ConfigError("mode: local_only is not defined for split_lora");
        return std::make_unique<SplitStrategy>(config, base, task, pool, train, seed);
    }
    return std::make_unique<FedAvgFamilyStrategy>(config, base, task, pool, train, seed,
                                                  local_only);
}

}  // namespace fedlora
