#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fedlora/matrix.hpp"
#include "fedlora/numerics.hpp"
#include "fedlora/rng.hpp"

namespace fedlora {

struct ModelSpec {
    std::size_t input_dim = 32;
    std::vector<std::size_t> hidden_dims = {32, 32};
    std::size_t num_classes = 8;
    std::string activation = "tanh";  // only tanh is implemented; kept as a config tag
    double pretrain_noise = 1.5;      // scale of the teacher->pretrained perturbation

    std::vector<std::pair<std::size_t, std::size_t>> layer_dims() const;
};

// Frozen multi-layer tanh network. Weights never change after construction;
// weight_hash() is the witness used by the frozen-base tests.
class BaseModel {
public:
    // The planted teacher: random weights, final-layer bias centered on a
    // probe sample so every class is reachable with reasonable frequency.
    static BaseModel planted_teacher(const ModelSpec& spec, std::uint64_t seed);

    // The "pretrained" starting point: the teacher plus seeded weight noise,
    // so zero-initialized adapters start at mid-range quality.
    static BaseModel pretrained_from_teacher(const BaseModel& teacher, double noise,
                                             std::uint64_t seed);

    std::size_t layer_count() const { return weights_.size(); }
    std::pair<std::size_t, std::size_t> layer_dims(std::size_t l) const {
        return {weights_[l].rows(), weights_[l].cols()};
    }
    const Matrix& weight(std::size_t l) const { return weights_[l]; }
    const std::vector<double>& bias(std::size_t l) const { return biases_[l]; }
    std::size_t input_dim() const { return weights_.front().rows(); }
    std::size_t num_classes() const { return weights_.back().cols(); }

    // Forward through the frozen network alone (adapters absent).
    Matrix forward(const Matrix& input) const;

    std::uint64_t weight_hash() const;

private:
    std::vector<Matrix> weights_;  // [in x out] per layer
    std::vector<std::vector<double>> biases_;
};

struct AdapterLayer {
    Matrix a;          // [rank x in]
    Matrix b;          // [out x rank]
    std::size_t rank;
    double alpha;      // effective delta = (alpha / rank) * B.A

    double scaling() const { return alpha / static_cast<double>(rank); }
};

// LoRA factors for a contiguous span of base-model layers. Full-model sets
// have first_layer = 0 and one entry per layer; SplitLoRA works with partial
// spans (client side, server side).
struct AdapterSet {
    std::size_t first_layer = 0;
    std::vector<AdapterLayer> layers;

    // A ~ N(0, 0.02^2), B = 0: the adapted model starts exactly at the
    // pretrained function.
    static AdapterSet init(const BaseModel& base, std::size_t rank, double alpha,
                           RngStream& stream, std::size_t first_layer = 0,
                           std::size_t layer_count = ~std::size_t{0});

    std::size_t element_count() const;
    std::uint64_t content_hash() const;
    bool same_shape(const AdapterSet& other) const;
};

struct SpanCache {
    std::vector<Matrix> inputs;       // input to each covered layer
    std::vector<Matrix> lora_hidden;  // x . A^T per covered layer
    std::vector<Matrix> outputs;      // post-activation (logits for the final model layer)
};

// Forward through the layers covered by `span`, starting from `input` (the
// activation feeding span.first_layer). The final model layer emits logits
// without activation.
Matrix forward_span(const BaseModel& base, const AdapterSet& span, const Matrix& input,
                    SpanCache* cache = nullptr);

// Whole-model forward; `span` must cover every layer.
Matrix forward_with_adapters(const BaseModel& base, const AdapterSet& adapters,
                             const Matrix& input, SpanCache* cache = nullptr);

struct SpanGrads {
    std::vector<Matrix> a;  // one per covered layer
    std::vector<Matrix> b;
    Matrix grad_input;      // populated when requested
};

// Backward through the span. grad_output is the gradient w.r.t. forward_span's
// return value. Only A/B gradients are produced; frozen weights get none.
SpanGrads backward_span(const BaseModel& base, const AdapterSet& span, const SpanCache& cache,
                        const Matrix& grad_output, bool want_grad_input = false);

struct AdapterOptState {
    std::vector<AdamWState> a_states;
    std::vector<AdamWState> b_states;

    static AdapterOptState init(const AdapterSet& adapters, double learning_rate,
                                double weight_decay, double beta1 = 0.9,
                                double beta2 = 0.999, double epsilon = 1e-8);
};

struct ProxTerm {
    double mu = 0.0;
    const AdapterSet* anchor = nullptr;  // shapes must match the trained adapters
};

// One optimizer step on one batch: cross-entropy gradients w.r.t. A and B
// only, optional proximal pull toward the anchor, AdamW per matrix.
// Returns the batch loss (prox penalty not included).
double local_train_step(const BaseModel& base, AdapterSet& adapters, const Matrix& batch_x,
                        const std::vector<std::size_t>& batch_y, AdapterOptState& opt,
                        const ProxTerm& prox = {});

struct EvalResult {
    double loss = 0.0;
    double accuracy = 0.0;  // argmax ties resolve to the lowest class index
};

struct TaskShard;

EvalResult evaluate(const BaseModel& base, const AdapterSet& adapters, const TaskShard& test_set);

}  // namespace fedlora
