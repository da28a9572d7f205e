#pragma once

#include <cstddef>
#include <vector>

namespace fedlora::kernels {

enum class Backend { Scalar, Avx2, Neon };

const char* backend_name(Backend b);

// Backends usable on this CPU; Scalar is always first.
std::vector<Backend> available_backends();

// The backend all kernel entry points currently dispatch to. Defaults to the
// widest available SIMD variant. Every variant is bit-identical to the scalar
// reference (equivalence-tested), so the choice never changes results.
Backend active_backend();

// Returns false (and leaves the dispatch unchanged) if the CPU lacks support.
bool set_backend(Backend b);

struct AdamwParams {
    double lr;
    double beta1;
    double beta2;
    double eps;
    double weight_decay;
    double bias_corr1;  // 1 - beta1^t
    double bias_corr2;  // 1 - beta2^t
};

// c[m*n] = a[m*k] . b[k*n]
void matmul_nn(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n);

// c[m*n] = a^T . b with a stored [k*m]
void matmul_tn(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n);

// c[m*n] = a . b^T with b stored [n*k]
void matmul_nt(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n);

// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

// x *= alpha
void scale(double alpha, double* x, std::size_t n);

// x[r][c] += v[c] for every row
void add_row_vector(double* x, const double* v, std::size_t rows, std::size_t cols);

// One decoupled-weight-decay Adam step over n elements; bias corrections are
// precomputed by the caller from the step count.
void adamw_step(double* param, const double* grad, double* m1, double* m2, std::size_t n,
                const AdamwParams& p);

namespace detail {

struct KernelTable {
    void (*matmul_nn)(const double*, const double*, double*, std::size_t, std::size_t,
                      std::size_t);
    void (*matmul_tn)(const double*, const double*, double*, std::size_t, std::size_t,
                      std::size_t);
    void (*matmul_nt)(const double*, const double*, double*, std::size_t, std::size_t,
                      std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scale)(double, double*, std::size_t);
    void (*add_row_vector)(double*, const double*, std::size_t, std::size_t);
    void (*adamw_step)(double*, const double*, double*, double*, std::size_t,
                       const AdamwParams&);
};

const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when unsupported
const KernelTable* neon_table();  // nullptr when unsupported

}  // namespace detail

}  // namespace fedlora::kernels
