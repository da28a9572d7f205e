// Reference kernels. The SIMD variants must match these bit-for-bit: per
// output element the accumulation runs in ascending-k order as a separate
// multiply and add (no fma; the build sets -ffp-contract=off).

#include <cmath>
#include <cstddef>

#include "fedlora/kernels.hpp"

namespace fedlora::kernels::detail {

namespace {

void matmul_nn_scalar(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                      std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double av = a[i * k + kk];
            const double* brow = b + kk * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

void matmul_tn_scalar(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                      std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    for (std::size_t kk = 0; kk < k; ++kk) {
        const double* arow = a + kk * m;
        const double* brow = b + kk * n;
        for (std::size_t i = 0; i < m; ++i) {
            const double av = arow[i];
            double* crow = c + i * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

void matmul_nt_scalar(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                      std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const double* brow = b + j * k;
            double acc = 0.0;
            for (std::size_t kk = 0; kk < k; ++kk) acc += arow[kk] * brow[kk];
            c[i * n + j] = acc;
        }
    }
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void add_row_vector_scalar(double* x, const double* v, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) {
        double* row = x + r * cols;
        for (std::size_t c = 0; c < cols; ++c) row[c] += v[c];
    }
}

void adamw_step_scalar(double* param, const double* grad, double* m1, double* m2, std::size_t n,
                       const AdamwParams& p) {
    const double one_minus_b1 = 1.0 - p.beta1;
    const double one_minus_b2 = 1.0 - p.beta2;
    const double lr_wd = p.lr * p.weight_decay;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = grad[i];
        const double m = p.beta1 * m1[i] + one_minus_b1 * g;
        const double v = p.beta2 * m2[i] + one_minus_b2 * (g * g);
        m1[i] = m;
        m2[i] = v;
        const double denom = std::sqrt(v / p.bias_corr2) + p.eps;
        const double step = (p.lr * (m / p.bias_corr1)) / denom;
        const double decayed = param[i] - lr_wd * param[i];
        param[i] = decayed - step;
    }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table = {
        matmul_nn_scalar, matmul_tn_scalar,       matmul_nt_scalar, axpy_scalar,
        scale_scalar,     add_row_vector_scalar,  adamw_step_scalar,
    };
    return table;
}

}  // namespace fedlora::kernels::detail
