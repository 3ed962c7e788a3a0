#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace entsplit {

using Complex = std::complex<double>;

/// Dense complex matrix in row-major order. The substrate for all states,
/// unitaries and observables in this library; dimensions stay small
/// (<= 64), so everything is stored densely and copied by value.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
        if (entries_.size() != rows * cols)
            throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
    }

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    Complex at(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_)
            throw std::out_of_range("ComplexMatrix::at: index out of range");
        return entries_[r * cols_ + c];
    }

    const std::vector<Complex>& entries() const { return entries_; }

    bool is_finite() const {
        for (const auto& e : entries_)
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
        return true;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix m = *this;
        for (auto& e : m.entries_) e = std::conj(e);
        return m;
    }

    /// Hermitian conjugate (conjugate transpose).
    ComplexMatrix dagger() const { return transpose().conjugate(); }

    Complex trace() const {
        if (!is_square()) throw std::invalid_argument("trace: matrix must be square");
        Complex t{0.0, 0.0};
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& e : entries_) m = std::max(m, std::abs(e));
        return m;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
        check_same_shape(a, b, "operator+");
        ComplexMatrix r = a;
        for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] += b.entries_[i];
        return r;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
        check_same_shape(a, b, "operator-");
        ComplexMatrix r = a;
        for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] -= b.entries_[i];
        return r;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("operator*: inner dimensions do not match");
        ComplexMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend ComplexMatrix operator*(const Complex& s, const ComplexMatrix& a) {
        ComplexMatrix r = a;
        for (auto& e : r.entries_) e *= s;
        return r;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const Complex& s) { return s * a; }

private:
    static void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument(std::string(op) + ": shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Largest entrywise absolute difference, used for all matrix comparisons.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).max_abs();
}

/// Kronecker product with a's indices as the slow (most significant) axis.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const Complex av = a(ia, ja);
            if (av == Complex{0.0, 0.0}) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    r(ia * b.rows() + ib, ja * b.cols() + jb) = av * b(ib, jb);
        }
    return r;
}

inline double hermiticity_deviation(const ComplexMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("hermiticity_deviation: matrix must be square");
    return max_abs_diff(m, m.dagger());
}

inline bool is_hermitian(const ComplexMatrix& m, double tol) {
    return hermiticity_deviation(m) <= tol;
}

// Pauli matrices, standard convention (sigma_y has -i above the diagonal).
inline ComplexMatrix sigma_x() {
    return {2, 2, {{0, 0}, {1, 0}, {1, 0}, {0, 0}}};
}

inline ComplexMatrix sigma_y() {
    return {2, 2, {{0, 0}, {0, -1}, {0, 1}, {0, 0}}};
}

inline ComplexMatrix sigma_z() {
    return {2, 2, {{1, 0}, {0, 0}, {0, 0}, {-1, 0}}};
}

}  // namespace entsplit
