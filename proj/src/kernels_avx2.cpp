// AVX2 variants. Vectorization runs across independent output elements (lanes
// are distinct j columns), so every element sees the same ascending-k
// mul-then-add sequence as the scalar reference and results are bit-identical.
// fmadd is deliberately not used: it would fuse the rounding step.

#include "fedlora/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <vector>

namespace fedlora::kernels::detail {

namespace {

__attribute__((target("avx2"))) void matmul_nn_avx2(const double* a, const double* b, double* c,
                                                    std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    const std::size_t n4 = n / 4 * 4;
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double av = a[i * k + kk];
            const __m256d vav = _mm256_set1_pd(av);
            const double* brow = b + kk * n;
            std::size_t j = 0;
            for (; j < n4; j += 4) {
                __m256d cv = _mm256_loadu_pd(crow + j);
                __m256d bv = _mm256_loadu_pd(brow + j);
                cv = _mm256_add_pd(cv, _mm256_mul_pd(vav, bv));
                _mm256_storeu_pd(crow + j, cv);
            }
            for (; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

__attribute__((target("avx2"))) void matmul_tn_avx2(const double* a, const double* b, double* c,
                                                    std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    const std::size_t n4 = n / 4 * 4;
    for (std::size_t kk = 0; kk < k; ++kk) {
        const double* arow = a + kk * m;
        const double* brow = b + kk * n;
        for (std::size_t i = 0; i < m; ++i) {
            const double av = arow[i];
            const __m256d vav = _mm256_set1_pd(av);
            double* crow = c + i * n;
            std::size_t j = 0;
            for (; j < n4; j += 4) {
                __m256d cv = _mm256_loadu_pd(crow + j);
                __m256d bv = _mm256_loadu_pd(brow + j);
                cv = _mm256_add_pd(cv, _mm256_mul_pd(vav, bv));
                _mm256_storeu_pd(crow + j, cv);
            }
            for (; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

// b arrives [n*k]; transposing it first (exact copies) reduces nt to the nn
// accumulation pattern without touching any element's operation order.
__attribute__((target("avx2"))) void matmul_nt_avx2(const double* a, const double* b, double* c,
                                                    std::size_t m, std::size_t k, std::size_t n) {
    thread_local std::vector<double> scratch;
    scratch.resize(k * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t kk = 0; kk < k; ++kk) scratch[kk * n + j] = b[j * k + kk];
    matmul_nn_avx2(a, scratch.data(), c, m, k, n);
}

__attribute__((target("avx2"))) void axpy_avx2(double alpha, const double* x, double* y,
                                               std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    const std::size_t n4 = n / 4 * 4;
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        __m256d xv = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(va, xv)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

__attribute__((target("avx2"))) void scale_avx2(double alpha, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    const std::size_t n4 = n / 4 * 4;
    std::size_t i = 0;
    for (; i < n4; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

__attribute__((target("avx2"))) void add_row_vector_avx2(double* x, const double* v,
                                                         std::size_t rows, std::size_t cols) {
    const std::size_t c4 = cols / 4 * 4;
    for (std::size_t r = 0; r < rows; ++r) {
        double* row = x + r * cols;
        std::size_t c = 0;
        for (; c < c4; c += 4) {
            __m256d rv = _mm256_loadu_pd(row + c);
            __m256d vv = _mm256_loadu_pd(v + c);
            _mm256_storeu_pd(row + c, _mm256_add_pd(rv, vv));
        }
        for (; c < cols; ++c) row[c] += v[c];
    }
}

__attribute__((target("avx2"))) void adamw_step_avx2(double* param, const double* grad, double* m1,
                                                     double* m2, std::size_t n,
                                                     const AdamwParams& p) {
    const double one_minus_b1 = 1.0 - p.beta1;
    const double one_minus_b2 = 1.0 - p.beta2;
    const double lr_wd = p.lr * p.weight_decay;
    const __m256d vb1 = _mm256_set1_pd(p.beta1);
    const __m256d vb2 = _mm256_set1_pd(p.beta2);
    const __m256d vomb1 = _mm256_set1_pd(one_minus_b1);
    const __m256d vomb2 = _mm256_set1_pd(one_minus_b2);
    const __m256d vbc1 = _mm256_set1_pd(p.bias_corr1);
    const __m256d vbc2 = _mm256_set1_pd(p.bias_corr2);
    const __m256d veps = _mm256_set1_pd(p.eps);
    const __m256d vlr = _mm256_set1_pd(p.lr);
    const __m256d vlrwd = _mm256_set1_pd(lr_wd);
    const std::size_t n4 = n / 4 * 4;
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        const __m256d g = _mm256_loadu_pd(grad + i);
        const __m256d m = _mm256_add_pd(_mm256_mul_pd(vb1, _mm256_loadu_pd(m1 + i)),
                                        _mm256_mul_pd(vomb1, g));
        const __m256d v = _mm256_add_pd(_mm256_mul_pd(vb2, _mm256_loadu_pd(m2 + i)),
                                        _mm256_mul_pd(vomb2, _mm256_mul_pd(g, g)));
        _mm256_storeu_pd(m1 + i, m);
        _mm256_storeu_pd(m2 + i, v);
        const __m256d denom =
            _mm256_add_pd(_mm256_sqrt_pd(_mm256_div_pd(v, vbc2)), veps);
        const __m256d step =
            _mm256_div_pd(_mm256_mul_pd(vlr, _mm256_div_pd(m, vbc1)), denom);
        const __m256d pv = _mm256_loadu_pd(param + i);
        const __m256d decayed = _mm256_sub_pd(pv, _mm256_mul_pd(vlrwd, pv));
        _mm256_storeu_pd(param + i, _mm256_sub_pd(decayed, step));
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

const KernelTable* avx2_table() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const KernelTable table = {
        matmul_nn_avx2, matmul_tn_avx2,      matmul_nt_avx2, axpy_avx2,
        scale_avx2,     add_row_vector_avx2, adamw_step_avx2,
    };
    return &table;
}

}  // namespace fedlora::kernels::detail

#else

namespace fedlora::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace fedlora::kernels::detail

#endif
