#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fedlora {

// Dense row-major f64 matrix. Small enough throughout this project that no
// blocked or sparse storage is ever needed.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    const std::vector<double>& values() const { return data_; }
    std::vector<double>& values() { return data_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }
    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

    // True when every entry is finite (no NaN/Inf).
    bool all_finite() const;

    // Throws DimensionError unless this is rows x cols.
    void require_shape(std::size_t rows, std::size_t cols, const char* what) const;

    void fill(double v) { data_.assign(data_.size(), v); }

    Matrix transposed() const;

    // FNV-1a over the raw byte representation; used as a frozen-weights and
    // adapter-trajectory witness.
    std::uint64_t content_hash() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::uint64_t fnv1a64(const void* bytes, std::size_t len, std::uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace fedlora
