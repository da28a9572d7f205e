#include "fedlora/matrix.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "fedlora/errors.hpp"

namespace fedlora {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("Matrix: data length " + std::to_string(data_.size()) +
                             " != " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

bool Matrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void Matrix::require_shape(std::size_t rows, std::size_t cols, const char* what) const {
    if (rows_ != rows || cols_ != cols) {
        throw DimensionError(std::string(what) + ": expected " + std::to_string(rows) + "x" +
                             std::to_string(cols) + ", got " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    }
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

std::uint64_t fnv1a64(const void* bytes, std::size_t len, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(bytes);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t Matrix::content_hash() const {
    std::uint64_t h = fnv1a64(&rows_, sizeof(rows_));
    h = fnv1a64(&cols_, sizeof(cols_), h);
    if (!data_.empty()) h = fnv1a64(data_.data(), data_.size() * sizeof(double), h);
    return h;
}

}  // namespace fedlora
