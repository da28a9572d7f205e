// NEON (aarch64) variants, 2-wide f64 lanes. Same bit-identity contract as
// the AVX2 file: lanes are independent output columns, mul then add, no fma.

#include "fedlora/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <vector>

namespace fedlora::kernels::detail {

namespace {

void matmul_nn_neon(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                    std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    const std::size_t n2 = n / 2 * 2;
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double av = a[i * k + kk];
            const float64x2_t vav = vdupq_n_f64(av);
            const double* brow = b + kk * n;
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                float64x2_t cv = vld1q_f64(crow + j);
                float64x2_t bv = vld1q_f64(brow + j);
                vst1q_f64(crow + j, vaddq_f64(cv, vmulq_f64(vav, bv)));
            }
            for (; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

void matmul_tn_neon(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                    std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    const std::size_t n2 = n / 2 * 2;
    for (std::size_t kk = 0; kk < k; ++kk) {
        const double* arow = a + kk * m;
        const double* brow = b + kk * n;
        for (std::size_t i = 0; i < m; ++i) {
            const double av = arow[i];
            const float64x2_t vav = vdupq_n_f64(av);
            double* crow = c + i * n;
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                float64x2_t cv = vld1q_f64(crow + j);
                float64x2_t bv = vld1q_f64(brow + j);
                vst1q_f64(crow + j, vaddq_f64(cv, vmulq_f64(vav, bv)));
            }
            for (; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

void matmul_nt_neon(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                    std::size_t n) {
    thread_local std::vector<double> scratch;
    scratch.resize(k * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t kk = 0; kk < k; ++kk) scratch[kk * n + j] = b[j * k + kk];
    matmul_nn_neon(a, scratch.data(), c, m, k, n);
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    const std::size_t n2 = n / 2 * 2;
    std::size_t i = 0;
    for (; i < n2; i += 2)
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_neon(double alpha, double* x, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    const std::size_t n2 = n / 2 * 2;
    std::size_t i = 0;
    for (; i < n2; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

void add_row_vector_neon(double* x, const double* v, std::size_t rows, std::size_t cols) {
    const std::size_t c2 = cols / 2 * 2;
    for (std::size_t r = 0; r < rows; ++r) {
        double* row = x + r * cols;
        std::size_t c = 0;
        for (; c < c2; c += 2)
            vst1q_f64(row + c, vaddq_f64(vld1q_f64(row + c), vld1q_f64(v + c)));
        for (; c < cols; ++c) row[c] += v[c];
    }
}

void adamw_step_neon(double* param, const double* grad, double* m1, double* m2, std::size_t n,
                     const AdamwParams& p) {
    const double one_minus_b1 = 1.0 - p.beta1;
    const double one_minus_b2 = 1.0 - p.beta2;
    const double lr_wd = p.lr * p.weight_decay;
    const float64x2_t vb1 = vdupq_n_f64(p.beta1);
    const float64x2_t vb2 = vdupq_n_f64(p.beta2);
    const float64x2_t vomb1 = vdupq_n_f64(one_minus_b1);
    const float64x2_t vomb2 = vdupq_n_f64(one_minus_b2);
    const float64x2_t vbc1 = vdupq_n_f64(p.bias_corr1);
    const float64x2_t vbc2 = vdupq_n_f64(p.bias_corr2);
    const float64x2_t veps = vdupq_n_f64(p.eps);
    const float64x2_t vlr = vdupq_n_f64(p.lr);
    const float64x2_t vlrwd = vdupq_n_f64(lr_wd);
    const std::size_t n2 = n / 2 * 2;
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        const float64x2_t g = vld1q_f64(grad + i);
        const float64x2_t m =
            vaddq_f64(vmulq_f64(vb1, vld1q_f64(m1 + i)), vmulq_f64(vomb1, g));
        const float64x2_t v = vaddq_f64(vmulq_f64(vb2, vld1q_f64(m2 + i)),
                                        vmulq_f64(vomb2, vmulq_f64(g, g)));
        vst1q_f64(m1 + i, m);
        vst1q_f64(m2 + i, v);
        const float64x2_t denom = vaddq_f64(vsqrtq_f64(vdivq_f64(v, vbc2)), veps);
        const float64x2_t step = vdivq_f64(vmulq_f64(vlr, vdivq_f64(m, vbc1)), denom);
        const float64x2_t pv = vld1q_f64(param + i);
        const float64x2_t decayed = vsubq_f64(pv, vmulq_f64(vlrwd, pv));
        vst1q_f64(param + i, vsubq_f64(decayed, step));
    }
    for (; i < n; ++i) {
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

const KernelTable* neon_table() {
    static const KernelTable table = {
        matmul_nn_neon, matmul_tn_neon,      matmul_nt_neon, axpy_neon,
        scale_neon,     add_row_vector_neon, adamw_step_neon,
    };
    return &table;
}

}  // namespace fedlora::kernels::detail

#else

namespace fedlora::kernels::detail {
const KernelTable* neon_table() { return nullptr; }
}  // namespace fedlora::kernels::detail

#endif
