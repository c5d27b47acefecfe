#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace ldabcd {

// Row-major dense matrix. Graphs in this library are complete, so every
// weight matrix is stored densely.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    double operator()(std::size_t r, std::size_t c) const noexcept {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

// y = m * x
inline void multiply(const DenseMatrix& m, std::span<const double> x, std::span<double> y) noexcept {
    assert(m.cols() == x.size() && m.rows() == y.size());
    const std::size_t n = m.cols();
    const double* a = m.data().data();
    for (std::size_t r = 0; r < m.rows(); ++r, a += n) {
        double s = 0.0;
        for (std::size_t c = 0; c < n; ++c) s += a[c] * x[c];
        y[r] = s;
    }
}

// x^T m x / x^T x
inline double rayleigh_quotient(const DenseMatrix& m, std::span<const double> x) {
    std::vector<double> y(m.rows());
    multiply(m, x, y);
    return dot(x, y) / dot(x, x);
}

}  // namespace ldabcd
