#include "fedlora/lora_model.hpp"

#include <cmath>
#include <string>

#include "fedlora/errors.hpp"
#include "fedlora/kernels.hpp"
#include "fedlora/task.hpp"

namespace fedlora {

std::vector<std::pair<std::size_t, std::size_t>> ModelSpec::layer_dims() const {
    std::vector<std::pair<std::size_t, std::size_t>> dims;
    std::size_t in = input_dim;
    for (std::size_t h : hidden_dims) {
        dims.emplace_back(in, h);
        in = h;
    }
    dims.emplace_back(in, num_classes);
    return dims;
}

namespace {

std::size_t row_argmax(const Matrix& m, std::size_t row) {
    std::size_t best = 0;
    double best_v = m(row, 0);
    for (std::size_t c = 1; c < m.cols(); ++c) {
        if (m(row, c) > best_v) {  // strict: ties keep the lowest index
            best_v = m(row, c);
            best = c;
        }
    }
    return best;
}

void tanh_inplace(Matrix& m) {
    double* p = m.data();
    for (std::size_t i = 0; i < m.size(); ++i) p[i] = std::tanh(p[i]);
}

}  // namespace

BaseModel BaseModel::planted_teacher(const ModelSpec& spec, std::uint64_t seed) {
    if (spec.activation != "tanh")
        throw ConfigError("model.activation: only 'tanh' is supported, got '" + spec.activation +
                          "'");
    if (spec.num_classes < 2) throw ConfigError("model.num_classes: need at least 2");
    if (spec.input_dim < 1) throw ConfigError("model.input_dim: need at least 1");

    BaseModel model;
    RngStream init = RngStream::derive(seed, "teacher.init");
    const auto dims = spec.layer_dims();
    for (std::size_t li = 0; li < dims.size(); ++li) {
        auto [in, out] = dims[li];
        // Hidden gain 2/sqrt(in) drives tanh into its nonlinear range; the
        // smaller output gain keeps logit margins tight enough that adapter
        // movement at the default learning rate shows up in accuracy.
        const double gain = (li + 1 == dims.size()) ? 1.0 : 2.0;
        const double sd = gain / std::sqrt(static_cast<double>(in));
        Matrix w(in, out);
        for (std::size_t i = 0; i < w.size(); ++i) w.data()[i] = sd * init.next_gaussian();
        model.weights_.push_back(std::move(w));
        model.biases_.emplace_back(out, 0.0);
    }

    // Center the final-layer logits over a probe sample so no class is
    // vanishingly rare under N(0, I) inputs.
    const std::size_t probe_n = 2048;
    RngStream probe = RngStream::derive(seed, "teacher.probe");
    Matrix probe_x(probe_n, spec.input_dim);
    for (std::size_t i = 0; i < probe_x.size(); ++i) probe_x.data()[i] = probe.next_gaussian();
    Matrix logits = model.forward(probe_x);
    std::vector<double> mean(spec.num_classes, 0.0);
    for (std::size_t r = 0; r < logits.rows(); ++r)
        for (std::size_t c = 0; c < logits.cols(); ++c) mean[c] += logits(r, c);
    for (std::size_t c = 0; c < spec.num_classes; ++c)
        model.biases_.back()[c] -= mean[c] / static_cast<double>(probe_n);
    return model;
}

BaseModel BaseModel::pretrained_from_teacher(const BaseModel& teacher, double noise,
                                             std::uint64_t seed) {
    BaseModel model = teacher;
    RngStream stream = RngStream::derive(seed, "pretrain.noise");
    // Noise lands on the output layer: rank-min(in,classes) adapters can
    // cancel it there, so the pretrained-to-teacher gap is actually
    // recoverable by fine-tuning.
    auto& w = model.weights_.back();
    const double sd = noise / std::sqrt(static_cast<double>(w.rows()));
    for (std::size_t i = 0; i < w.size(); ++i) w.data()[i] += sd * stream.next_gaussian();
    return model;
}

Matrix BaseModel::forward(const Matrix& input) const {
    Matrix x = input;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        x = linear_forward(x, weights_[l], biases_[l]);
        if (l + 1 < weights_.size()) tanh_inplace(x);
    }
    return x;
}

std::uint64_t BaseModel::weight_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        const std::uint64_t wh = weights_[l].content_hash();
        h = fnv1a64(&wh, sizeof(wh), h);
        h = fnv1a64(biases_[l].data(), biases_[l].size() * sizeof(double), h);
    }
    return h;
}

AdapterSet AdapterSet::init(const BaseModel& base, std::size_t rank, double alpha,
                            RngStream& stream, std::size_t first_layer,
                            std::size_t layer_count) {
    if (layer_count == ~std::size_t{0}) layer_count = base.layer_count() - first_layer;
    if (first_layer + layer_count > base.layer_count())
        throw ConfigError("AdapterSet::init: layer span exceeds model depth");

    AdapterSet set;
    set.first_layer = first_layer;
    for (std::size_t l = first_layer; l < first_layer + layer_count; ++l) {
        auto [in, out] = base.layer_dims(l);
        if (rank < 1 || rank > std::min(in, out))
            throw ConfigError("adapter rank " + std::to_string(rank) +
                              " outside [1, min(in,out)] for layer " + std::to_string(l));
        AdapterLayer layer;
        layer.rank = rank;
        layer.alpha = alpha;
        layer.a = Matrix(rank, in);
        for (std::size_t i = 0; i < layer.a.size(); ++i)
            layer.a.data()[i] = 0.02 * stream.next_gaussian();
        layer.b = Matrix(out, rank);
        set.layers.push_back(std::move(layer));
    }
    return set;
}

std::size_t AdapterSet::element_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.a.size() + l.b.size();
    return n;
}

std::uint64_t AdapterSet::content_hash() const {
    std::uint64_t h = fnv1a64(&first_layer, sizeof(first_layer));
    for (const auto& l : layers) {
        const std::uint64_t ah = l.a.content_hash();
        const std::uint64_t bh = l.b.content_hash();
        h = fnv1a64(&ah, sizeof(ah), h);
        h = fnv1a64(&bh, sizeof(bh), h);
        h = fnv1a64(&l.rank, sizeof(l.rank), h);
        h = fnv1a64(&l.alpha, sizeof(l.alpha), h);
    }
    return h;
}

bool AdapterSet::same_shape(const AdapterSet& other) const {
    if (first_layer != other.first_layer || layers.size() != other.layers.size()) return false;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (layers[i].rank != other.layers[i].rank) return false;
        if (!layers[i].a.same_shape(other.layers[i].a)) return false;
        if (!layers[i].b.same_shape(other.layers[i].b)) return false;
    }
    return true;
}

Matrix forward_span(const BaseModel& base, const AdapterSet& span, const Matrix& input,
                    SpanCache* cache) {
    if (span.first_layer + span.layers.size() > base.layer_count())
        throw DimensionError("forward_span: span exceeds model depth");
    if (cache) {
        cache->inputs.clear();
        cache->lora_hidden.clear();
        cache->outputs.clear();
    }
    Matrix x = input;
    for (std::size_t i = 0; i < span.layers.size(); ++i) {
        const std::size_t l = span.first_layer + i;
        const AdapterLayer& ad = span.layers[i];
        const Matrix& w = base.weight(l);
        if (x.cols() != w.rows())
            throw DimensionError("forward_span: layer " + std::to_string(l) + " input width " +
                                 std::to_string(x.cols()) + " != " + std::to_string(w.rows()));
        ad.a.require_shape(ad.rank, w.rows(), "forward_span: adapter A");
        ad.b.require_shape(w.cols(), ad.rank, "forward_span: adapter B");

        // z = x.W + (alpha/r) * (x.A^T).B^T + bias
        Matrix h(x.rows(), ad.rank);
        kernels::matmul_nt(x.data(), ad.a.data(), h.data(), x.rows(), x.cols(), ad.rank);
        Matrix z = linear_forward(x, w, base.bias(l));
        Matrix lora_out(x.rows(), w.cols());
        kernels::matmul_nt(h.data(), ad.b.data(), lora_out.data(), h.rows(), h.cols(),
                           ad.b.rows());
        kernels::axpy(ad.scaling(), lora_out.data(), z.data(), z.size());

        if (cache) {
            cache->inputs.push_back(std::move(x));
            cache->lora_hidden.push_back(std::move(h));
        }
        const bool final_model_layer = (l + 1 == base.layer_count());
        if (!final_model_layer) tanh_inplace(z);
        if (cache) cache->outputs.push_back(z);
        x = std::move(z);
    }
    return x;
}

Matrix forward_with_adapters(const BaseModel& base, const AdapterSet& adapters,
                             const Matrix& input, SpanCache* cache) {
    if (adapters.first_layer != 0 || adapters.layers.size() != base.layer_count())
        throw DimensionError("forward_with_adapters: adapters must cover every layer");
    return forward_span(base, adapters, input, cache);
}

SpanGrads backward_span(const BaseModel& base, const AdapterSet& span, const SpanCache& cache,
                        const Matrix& grad_output, bool want_grad_input) {
    const std::size_t count = span.layers.size();
    if (cache.inputs.size() != count)
        throw DimensionError("backward_span: cache does not match span");

    SpanGrads grads;
    grads.a.resize(count);
    grads.b.resize(count);

    Matrix g = grad_output;  // gradient w.r.t. the current layer's output
    for (std::size_t idx = count; idx-- > 0;) {
        const std::size_t l = span.first_layer + idx;
        const AdapterLayer& ad = span.layers[idx];
        const Matrix& w = base.weight(l);
        const Matrix& x = cache.inputs[idx];
        const Matrix& h = cache.lora_hidden[idx];
        const bool final_model_layer = (l + 1 == base.layer_count());

        if (!final_model_layer) {
            // g arrives w.r.t. tanh output; fold the tanh derivative.
            const Matrix& act = cache.outputs[idx];
            g.require_shape(act.rows(), act.cols(), "backward_span: grad shape");
            for (std::size_t i = 0; i < g.size(); ++i)
                g.data()[i] *= 1.0 - act.data()[i] * act.data()[i];
        } else {
            g.require_shape(x.rows(), w.cols(), "backward_span: grad shape");
        }

        const double s = ad.scaling();
        // grad_B = s * g^T.h    [out x r]
        grads.b[idx] = Matrix(w.cols(), ad.rank);
        kernels::matmul_tn(g.data(), h.data(), grads.b[idx].data(), g.cols(), g.rows(), ad.rank);
        kernels::scale(s, grads.b[idx].data(), grads.b[idx].size());
        // t = g.B             [batch x r]
        Matrix t(g.rows(), ad.rank);
        kernels::matmul_nn(g.data(), ad.b.data(), t.data(), g.rows(), g.cols(), ad.rank);
        // grad_A = s * t^T.x   [r x in]
        grads.a[idx] = Matrix(ad.rank, w.rows());
        kernels::matmul_tn(t.data(), x.data(), grads.a[idx].data(), t.cols(), t.rows(), w.rows());
        kernels::scale(s, grads.a[idx].data(), grads.a[idx].size());

        if (idx > 0 || want_grad_input) {
            // grad_x = g.W^T + s * t.A
            Matrix gx(g.rows(), w.rows());
            kernels::matmul_nt(g.data(), w.data(), gx.data(), g.rows(), g.cols(), w.rows());
            Matrix ta(t.rows(), w.rows());
            kernels::matmul_nn(t.data(), ad.a.data(), ta.data(), t.rows(), t.cols(), w.rows());
            kernels::axpy(s, ta.data(), gx.data(), gx.size());
            g = std::move(gx);
        }
    }
    if (want_grad_input) grads.grad_input = std::move(g);
    return grads;
}

AdapterOptState AdapterOptState::init(const AdapterSet& adapters, double learning_rate,
                                      double weight_decay, double beta1, double beta2,
                                      double epsilon) {
    AdapterOptState s;
    for (const auto& l : adapters.layers) {
        AdamWState a = AdamWState::for_shape(l.a.rows(), l.a.cols(), learning_rate,
                                             weight_decay);
        AdamWState b = AdamWState::for_shape(l.b.rows(), l.b.cols(), learning_rate,
                                             weight_decay);
        a.beta1 = b.beta1 = beta1;
        a.beta2 = b.beta2 = beta2;
        a.epsilon = b.epsilon = epsilon;
        s.a_states.push_back(std::move(a));
        s.b_states.push_back(std::move(b));
    }
    return s;
}

double local_train_step(const BaseModel& base, AdapterSet& adapters, const Matrix& batch_x,
                        const std::vector<std::size_t>& batch_y, AdapterOptState& opt,
                        const ProxTerm& prox) {
    if (batch_x.rows() == 0) throw DimensionError("local_train_step: empty batch");
    if (prox.mu != 0.0) {
        if (!prox.anchor || !prox.anchor->same_shape(adapters))
            throw DimensionError("local_train_step: prox anchor shape mismatch");
    }

    SpanCache cache;
    Matrix logits = forward_with_adapters(base, adapters, batch_x, &cache);
    LossGrad lg = softmax_cross_entropy(logits, batch_y);
    SpanGrads grads = backward_span(base, adapters, cache, lg.grad_logits);

    for (std::size_t l = 0; l < adapters.layers.size(); ++l) {
        if (prox.mu != 0.0) {
            // gradient of (mu/2) * ||theta - anchor||^2
            const AdapterLayer& anchor = prox.anchor->layers[l];
            for (std::size_t i = 0; i < grads.a[l].size(); ++i)
                grads.a[l].data()[i] +=
                    prox.mu * (adapters.layers[l].a.data()[i] - anchor.a.data()[i]);
            for (std::size_t i = 0; i < grads.b[l].size(); ++i)
                grads.b[l].data()[i] +=
                    prox.mu * (adapters.layers[l].b.data()[i] - anchor.b.data()[i]);
        }
        adamw_update(adapters.layers[l].a, grads.a[l], opt.a_states[l]);
        adamw_update(adapters.layers[l].b, grads.b[l], opt.b_states[l]);
    }
    return lg.loss;
}

EvalResult evaluate(const BaseModel& base, const AdapterSet& adapters, const TaskShard& test_set) {
    if (test_set.features.rows() == 0) throw NoDataError("evaluate: empty test set");
    Matrix logits = forward_with_adapters(base, adapters, test_set.features);
    LossGrad lg = softmax_cross_entropy(logits, test_set.labels);
    std::size_t correct = 0;
    for (std::size_t r = 0; r < logits.rows(); ++r)
        if (row_argmax(logits, r) == test_set.labels[r]) ++correct;
    return {lg.loss, static_cast<double>(correct) / static_cast<double>(logits.rows())};
}

}  // namespace fedlora
