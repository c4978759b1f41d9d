#include "alg/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alg {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = Scalar(1);
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::conj() const {
    Matrix t(rows_, cols_);
    for (std::size_t k = 0; k < d_.size(); ++k) t.d_[k] = conjugate(d_[k]);
    return t;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix t(rows_, cols_);
    for (std::size_t k = 0; k < d_.size(); ++k) t.d_[k] = d_[k] * s;
    return t;
}

bool Matrix::is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(r, k);
            if (x.is_zero()) continue;
            for (std::size_t c = 0; c < b.cols_; ++c)
                if (!b(k, c).is_zero()) m(r, c) += x * b(k, c);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.d_.size(); ++k) m.d_[k] = a.d_[k] + b.d_[k];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.d_.size(); ++k) m.d_[k] = a.d_[k] - b.d_[k];
    return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
    std::vector<Scalar> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
    return out;
}

std::vector<Scalar> Matrix::row(std::size_t r) const { return {d_.begin() + r * cols_, d_.begin() + (r + 1) * cols_}; }

std::vector<Scalar> Matrix::col(std::size_t c) const {
    std::vector<Scalar> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

namespace {

// Pivot preference: constants first, then the smallest canonical form.
std::optional<std::size_t> choose_pivot(const Matrix& m, std::size_t col, std::size_t from) {
    std::optional<std::size_t> best;
    std::size_t best_cost = 0;
    for (std::size_t r = from; r < m.rows(); ++r) {
        const Scalar& s = m(r, col);
        if (s.is_zero()) continue;
        std::size_t cost = s.is_constant() ? 0 : s.num().size() + s.den().size();
        if (!best || cost < best_cost) {
            best = r;
            best_cost = cost;
        }
    }
    return best;
}

}  // namespace

Scalar determinant(const Matrix& m0) {
    if (m0.rows() != m0.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    Matrix m = m0;
    const std::size_t n = m.rows();
    Scalar det(1);
    for (std::size_t c = 0; c < n; ++c) {
        auto p = choose_pivot(m, c, c);
        if (!p) return Scalar();
        if (*p != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(c, k), m(*p, k));
            det = -det;
        }
        Scalar piv = m(c, c);
        det *= piv;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c).is_zero()) continue;
            Scalar f = m(r, c) / piv;
            for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
        }
    }
    return det;
}

std::optional<Matrix> inverse(const Matrix& m0) {
    if (m0.rows() != m0.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m0.rows();
    Matrix m = m0;
    Matrix inv = Matrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        auto p = choose_pivot(m, c, c);
        if (!p) return std::nullopt;
        if (*p != c)
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(m(c, k), m(*p, k));
                std::swap(inv(c, k), inv(*p, k));
            }
        Scalar piv = m(c, c);
        if (!piv.is_one())
            for (std::size_t k = 0; k < n; ++k) {
                m(c, k) /= piv;
                inv(c, k) /= piv;
            }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c).is_zero()) continue;
            Scalar f = m(r, c);
            for (std::size_t k = 0; k < n; ++k) {
                if (!m(c, k).is_zero()) m(r, k) -= f * m(c, k);
                if (!inv(c, k).is_zero()) inv(r, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

std::size_t structural_rank(const Matrix& m0) {
    Matrix m = m0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        auto p = choose_pivot(m, c, rank);
        if (!p) continue;
        if (*p != rank)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(rank, k), m(*p, k));
        Scalar piv = m(rank, c);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (m(r, c).is_zero()) continue;
            Scalar f = m(r, c) / piv;
            for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(rank, k);
        }
        ++rank;
    }
    return rank;
}

std::size_t numeric_rank(std::vector<std::vector<std::complex<double>>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    double scale = 0;
    for (auto& r : m)
        for (auto& x : r) scale = std::max(scale, std::abs(x));
    if (scale == 0) return 0;
    const double tol = 1e-9 * scale;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t best = rank;
        for (std::size_t r = rank; r < rows; ++r)
            if (std::abs(m[r][c]) > std::abs(m[best][c])) best = r;
        if (std::abs(m[best][c]) <= tol) continue;
        std::swap(m[rank], m[best]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            auto f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

bool Tensor3::is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
    Tensor3 t(a.n_[0], a.n_[1], a.n_[2]);
    for (std::size_t k = 0; k < a.d_.size(); ++k) t.d_[k] = a.d_[k] - b.d_[k];
    return t;
}

bool Tensor4::is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](const Scalar& s) { return s.is_zero(); });
}

}  // namespace alg
