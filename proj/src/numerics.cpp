#include "fedlora/numerics.hpp"

#include <cmath>
#include <string>

#include "fedlora/errors.hpp"
#include "fedlora/kernels.hpp"

namespace fedlora {

namespace {

void require_finite(const Matrix& m, const char* what) {
    if (!m.all_finite()) throw std::domain_error(std::string(what) + ": non-finite result");
}

}  // namespace

Matrix linear_forward(const Matrix& input, const Matrix& weight, const std::vector<double>& bias) {
    if (input.cols() != weight.rows())
        throw DimensionError("linear_forward: input cols " + std::to_string(input.cols()) +
                             " != weight rows " + std::to_string(weight.rows()));
    if (bias.size() != weight.cols())
        throw DimensionError("linear_forward: bias size " + std::to_string(bias.size()) +
                             " != weight cols " + std::to_string(weight.cols()));
    Matrix out(input.rows(), weight.cols());
    kernels::matmul_nn(input.data(), weight.data(), out.data(), input.rows(), input.cols(),
                       weight.cols());
    kernels::add_row_vector(out.data(), bias.data(), out.rows(), out.cols());
    require_finite(out, "linear_forward");
    return out;
}

LinearGrads linear_backward(const Matrix& input, const Matrix& weight, const Matrix& grad_output) {
    if (input.cols() != weight.rows())
        throw DimensionError("linear_backward: input cols != weight rows");
    grad_output.require_shape(input.rows(), weight.cols(), "linear_backward: grad_output");

    LinearGrads g;
    g.grad_input = Matrix(input.rows(), input.cols());
    kernels::matmul_nt(grad_output.data(), weight.data(), g.grad_input.data(), grad_output.rows(),
                       grad_output.cols(), weight.rows());
    g.grad_weight = Matrix(weight.rows(), weight.cols());
    kernels::matmul_tn(input.data(), grad_output.data(), g.grad_weight.data(), input.cols(),
                       input.rows(), grad_output.cols());
    g.grad_bias.assign(weight.cols(), 0.0);
    for (std::size_t r = 0; r < grad_output.rows(); ++r)
        for (std::size_t c = 0; c < grad_output.cols(); ++c)
            g.grad_bias[c] += grad_output(r, c);

    require_finite(g.grad_input, "linear_backward");
    require_finite(g.grad_weight, "linear_backward");
    return g;
}

LossGrad softmax_cross_entropy(const Matrix& logits, const std::vector<std::size_t>& labels) {
    if (labels.size() != logits.rows())
        throw DimensionError("softmax_cross_entropy: " + std::to_string(labels.size()) +
                             " labels for " + std::to_string(logits.rows()) + " rows");
    const std::size_t batch = logits.rows();
    const std::size_t classes = logits.cols();
    for (std::size_t r = 0; r < batch; ++r) {
        if (labels[r] >= classes)
            throw IndexError("softmax_cross_entropy: label " + std::to_string(labels[r]) +
                             " out of range for " + std::to_string(classes) + " classes");
    }

    LossGrad out{0.0, Matrix(batch, classes)};
    const double inv_batch = 1.0 / static_cast<double>(batch);
    for (std::size_t r = 0; r < batch; ++r) {
        double row_max = logits(r, 0);
        for (std::size_t c = 1; c < classes; ++c) row_max = std::max(row_max, logits(r, c));
        double sum = 0.0;
        for (std::size_t c = 0; c < classes; ++c) {
            const double e = std::exp(logits(r, c) - row_max);
            out.grad_logits(r, c) = e;
            sum += e;
        }
        out.loss += std::log(sum) - (logits(r, labels[r]) - row_max);
        const double inv_sum = 1.0 / sum;
        for (std::size_t c = 0; c < classes; ++c) {
            double p = out.grad_logits(r, c) * inv_sum;
            if (c == labels[r]) p -= 1.0;
            out.grad_logits(r, c) = p * inv_batch;
        }
    }
    out.loss *= inv_batch;
    require_finite(out.grad_logits, "softmax_cross_entropy");
    return out;
}

AdamWState AdamWState::for_shape(std::size_t rows, std::size_t cols, double learning_rate,
                                 double weight_decay) {
    AdamWState s;
    s.first_moment = Matrix(rows, cols);
    s.second_moment = Matrix(rows, cols);
    s.learning_rate = learning_rate;
    s.weight_decay = weight_decay;
    return s;
}

void adamw_update(Matrix& param, const Matrix& grad, AdamWState& state) {
    if (!param.same_shape(grad))
        throw DimensionError("adamw_update: param/grad shape mismatch");
    if (!param.same_shape(state.first_moment) || !param.same_shape(state.second_moment))
        throw DimensionError("adamw_update: moment shape mismatch");

    state.step_count += 1;
    kernels::AdamwParams p;
    p.lr = state.learning_rate;
    p.beta1 = state.beta1;
    p.beta2 = state.beta2;
    p.eps = state.epsilon;
    p.weight_decay = state.weight_decay;
    p.bias_corr1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
    p.bias_corr2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));
    kernels::adamw_step(param.data(), grad.data(), state.first_moment.data(),
                        state.second_moment.data(), param.size(), p);
    require_finite(param, "adamw_update");
}

}  // namespace fedlora
