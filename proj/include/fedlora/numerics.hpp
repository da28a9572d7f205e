#pragma once

#include <cstdint>
#include <vector>

#include "fedlora/matrix.hpp"

namespace fedlora {

// output[batch x out] = input[batch x in] . weight[in x out] + bias (broadcast)
Matrix linear_forward(const Matrix& input, const Matrix& weight, const std::vector<double>& bias);

struct LinearGrads {
    Matrix grad_input;               // [batch x in]  = grad_output . weight^T
    Matrix grad_weight;              // [in x out]    = input^T . grad_output
    std::vector<double> grad_bias;   // [out]         = column sums of grad_output
};

LinearGrads linear_backward(const Matrix& input, const Matrix& weight, const Matrix& grad_output);

struct LossGrad {
    double loss;         // mean over the batch of -log softmax(logits)[label]
    Matrix grad_logits;  // (softmax - onehot) / batch
};

LossGrad softmax_cross_entropy(const Matrix& logits, const std::vector<std::size_t>& labels);

struct AdamWState {
    Matrix first_moment;
    Matrix second_moment;
    std::int64_t step_count = 0;
    double learning_rate = 2e-4;
    double weight_decay = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamWState for_shape(std::size_t rows, std::size_t cols, double learning_rate = 2e-4,
                                double weight_decay = 0.01);
};

// Decoupled-weight-decay Adam with bias correction; increments step_count.
void adamw_update(Matrix& param, const Matrix& grad, AdamWState& state);

}  // namespace fedlora
