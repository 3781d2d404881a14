#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "maglap/errors.hpp"

namespace maglap {

using cplx = std::complex<double>;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

/// conj() that stays real for real scalars (std::conj promotes to complex).
template <class S>
constexpr S conj_of(const S& x) {
    if constexpr (is_complex_v<S>) {
        return std::conj(x);
    } else {
        return x;
    }
}

template <class S>
constexpr double abs2(const S& x) {
    if constexpr (is_complex_v<S>) {
        return x.real() * x.real() + x.imag() * x.imag();
    } else {
        return x * x;
    }
}

/// Dense row-major matrix with value semantics.
template <class T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }

    std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }

    T* data() noexcept { return data_.data(); }
    const T* data() const noexcept { return data_.data(); }

    double max_abs() const noexcept {
        double m = 0.0;
        for (const T& x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// y = A x
template <class S, class T>
std::vector<cplx> matvec(const Matrix<S>& a, std::span<const T> x) {
    if (a.cols() != x.size()) throw InvalidInput("matvec: dimension mismatch");
    std::vector<cplx> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s{};
        auto r = a.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

/// x* A y
template <class S>
cplx form(const Matrix<S>& a, std::span<const cplx> x, std::span<const cplx> y) {
    const auto ay = matvec(a, y);
    cplx s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * ay[i];
    return s;
}

inline double norm2(std::span<const cplx> x) {
    double s = 0.0;
    for (const auto& v : x) s += abs2(v);
    return std::sqrt(s);
}

}  // namespace maglap
