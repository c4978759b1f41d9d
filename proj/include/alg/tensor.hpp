#pragma once

#include <array>
#include <optional>
#include <vector>

#include "alg/scalar.hpp"

namespace alg {

/// Dense matrix of scalars, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols) {}
    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }

    Matrix transpose() const;
    Matrix conj() const;
    Matrix scaled(const Scalar& s) const;
    bool is_zero() const;
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
    std::vector<Scalar> row(std::size_t r) const;
    std::vector<Scalar> col(std::size_t c) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> d_;
};

/// Exact determinant by Gaussian elimination over the scalar field.
Scalar determinant(const Matrix& m);
/// Exact inverse; nullopt when the matrix is structurally singular.
std::optional<Matrix> inverse(const Matrix& m);
/// Rank over the field of scalars (structural pivots).
std::size_t structural_rank(const Matrix& m);
/// Rank of a numeric matrix (tolerance 1e-9 relative to the largest entry).
std::size_t numeric_rank(std::vector<std::vector<std::complex<double>>> m);

/// Dense rank-3 array, used for T(c,a,b) = T^c_ab.
class Tensor3 {
public:
    Tensor3() = default;
    Tensor3(std::size_t n0, std::size_t n1, std::size_t n2) : n_{n0, n1, n2}, d_(n0 * n1 * n2) {}
    Tensor3(std::size_t n) : Tensor3(n, n, n) {}  // NOLINT(google-explicit-constructor)
    std::size_t dim(int k) const { return n_[k]; }
    Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) { return d_[(i * n_[1] + j) * n_[2] + k]; }
    const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return d_[(i * n_[1] + j) * n_[2] + k];
    }
    bool is_zero() const;
    friend bool operator==(const Tensor3& a, const Tensor3& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
    friend Tensor3 operator-(const Tensor3& a, const Tensor3& b);

private:
    std::array<std::size_t, 3> n_{0, 0, 0};
    std::vector<Scalar> d_;
};

/// Dense rank-4 array, used for R(d,a,b,c) = R^d_{ab,c}.
class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(std::size_t n) : n_(n), d_(n * n * n * n) {}
    std::size_t dim() const { return n_; }
    Scalar& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return d_[((i * n_ + j) * n_ + k) * n_ + l];
    }
    const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return d_[((i * n_ + j) * n_ + k) * n_ + l];
    }
    bool is_zero() const;

private:
    std::size_t n_ = 0;
    std::vector<Scalar> d_;
};

}  // namespace alg
