#include "fedlora/kernels.hpp"

namespace fedlora::kernels {

namespace {

struct Dispatch {
    Backend backend;
    const detail::KernelTable* table;
};

Dispatch& dispatch() {
    static Dispatch d = [] {
        if (const auto* t = detail::avx2_table()) return Dispatch{Backend::Avx2, t};
        if (const auto* t = detail::neon_table()) return Dispatch{Backend::Neon, t};
        return Dispatch{Backend::Scalar, &detail::scalar_table()};
    }();
    return d;
}

const detail::KernelTable* table_for(Backend b) {
    switch (b) {
        case Backend::Scalar: return &detail::scalar_table();
        case Backend::Avx2: return detail::avx2_table();
        case Backend::Neon: return detail::neon_table();
    }
    return nullptr;
}

}  // namespace

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "?";
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out{Backend::Scalar};
    if (detail::avx2_table()) out.push_back(Backend::Avx2);
    if (detail::neon_table()) out.push_back(Backend::Neon);
    return out;
}

Backend active_backend() { return dispatch().backend; }

bool set_backend(Backend b) {
    const auto* t = table_for(b);
    if (!t) return false;
    dispatch() = {b, t};
    return true;
}

void matmul_nn(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n) {
    dispatch().table->matmul_nn(a, b, c, m, k, n);
}
void matmul_tn(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n) {
    dispatch().table->matmul_tn(a, b, c, m, k, n);
}
void matmul_nt(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n) {
    dispatch().table->matmul_nt(a, b, c, m, k, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
    dispatch().table->axpy(alpha, x, y, n);
}
void scale(double alpha, double* x, std::size_t n) { dispatch().table->scale(alpha, x, n); }
void add_row_vector(double* x, const double* v, std::size_t rows, std::size_t cols) {
    dispatch().table->add_row_vector(x, v, rows, cols);
}
void adamw_step(double* param, const double* grad, double* m1, double* m2, std::size_t n,
                const AdamwParams& p) {
    dispatch().table->adamw_step(param, grad, m1, m2, n, p);
}

}  // namespace fedlora::kernels
