// Copyright 2026 The qdes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex vectors and matrices, plus the handful of operations the
// automata code needs: Kronecker products, direct sums, adjoints, unitarity
// checks and basis projectors.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdes {

using Complex = std::complex<double>;

/// Default tolerance for structural validation (unitarity, unit norm).
inline constexpr double kValidationTolerance = 1e-9;

namespace detail {

inline void require(bool condition, const char* what) {
    if (!condition) {
        throw std::invalid_argument(what);
    }
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace detail

/// Column vector with complex entries.
class Vector {
   public:
    Vector() = default;
    explicit Vector(std::size_t dim) : entries_(dim) {}
    Vector(std::initializer_list<Complex> entries) : entries_(entries) {}
    explicit Vector(std::vector<Complex> entries) : entries_(std::move(entries)) {}

    static Vector basis(std::size_t dim, std::size_t index) {
        detail::require(index < dim, "basis index out of range");
        Vector v(dim);
        v.entries_[index] = 1.0;
        return v;
    }

    std::size_t dim() const { return entries_.size(); }
    Complex& operator[](std::size_t i) { return entries_[i]; }
    const Complex& operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Complex> entries() const { return entries_; }
    std::span<Complex> entries() { return entries_; }

    double norm_sq() const {
        double total = 0;
        for (const Complex& z : entries_) {
            total += std::norm(z);
        }
        return total;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    bool is_finite() const { return std::all_of(entries_.begin(), entries_.end(), detail::is_finite); }

    Vector conjugate() const {
        Vector out(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            out[i] = std::conj(entries_[i]);
        }
        return out;
    }

    Vector& operator+=(const Vector& other) {
        detail::require(dim() == other.dim(), "vector dimension mismatch");
        for (std::size_t i = 0; i < dim(); ++i) {
            entries_[i] += other.entries_[i];
        }
        return *this;
    }
    Vector& operator-=(const Vector& other) {
        detail::require(dim() == other.dim(), "vector dimension mismatch");
        for (std::size_t i = 0; i < dim(); ++i) {
            entries_[i] -= other.entries_[i];
        }
        return *this;
    }
    Vector& operator*=(Complex c) {
        for (Complex& z : entries_) {
            z *= c;
        }
        return *this;
    }

    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    friend Vector operator*(Complex c, Vector v) { return v *= c; }
    friend Vector operator-(Vector v) { return v *= -1.0; }
    bool operator==(const Vector& other) const = default;

   private:
    std::vector<Complex> entries_;
};

/// Bilinear pairing sum_i a_i b_i (no conjugation): a row functional applied to a column.
inline Complex dot(const Vector& row, const Vector& col) {
    detail::require(row.dim() == col.dim(), "dot: dimension mismatch");
    Complex total = 0;
    for (std::size_t i = 0; i < row.dim(); ++i) {
        total += row[i] * col[i];
    }
    return total;
}

/// Hermitian inner product <a|b> = sum_i conj(a_i) b_i.
inline Complex inner(const Vector& a, const Vector& b) {
    detail::require(a.dim() == b.dim(), "inner: dimension mismatch");
    Complex total = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        total += std::conj(a[i]) * b[i];
    }
    return total;
}

inline Vector tensor(const Vector& a, const Vector& b) {
    Vector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return out;
}

inline Vector direct_sum(const Vector& a, const Vector& b) {
    Vector out(a.dim() + b.dim());
    std::copy(a.entries().begin(), a.entries().end(), out.entries().begin());
    std::copy(b.entries().begin(), b.entries().end(), out.entries().begin() + static_cast<std::ptrdiff_t>(a.dim()));
    return out;
}

/// Dense row-major complex matrix.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            detail::require(row.size() == cols_, "ragged matrix literal");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    std::span<const Complex> entries() const { return entries_; }

    bool is_finite() const { return std::all_of(entries_.begin(), entries_.end(), detail::is_finite); }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = (*this)(r, c);
            }
        }
        return out;
    }

    Matrix conjugate() const {
        Matrix out = *this;
        for (Complex& z : out.entries_) {
            z = std::conj(z);
        }
        return out;
    }

    Matrix& operator+=(const Matrix& other) {
        detail::require(rows_ == other.rows_ && cols_ == other.cols_, "matrix shape mismatch");
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            entries_[i] += other.entries_[i];
        }
        return *this;
    }
    Matrix& operator-=(const Matrix& other) {
        detail::require(rows_ == other.rows_ && cols_ == other.cols_, "matrix shape mismatch");
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            entries_[i] -= other.entries_[i];
        }
        return *this;
    }
    Matrix& operator*=(Complex c) {
        for (Complex& z : entries_) {
            z *= c;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Complex c, Matrix m) { return m *= c; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        detail::require(a.cols_ == b.rows_, "matrix product shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex lhs = a(r, k);
                if (lhs == Complex{}) {
                    continue;
                }
                for (std::size_t c = 0; c < b.cols_; ++c) {
                    out(r, c) += lhs * b(k, c);
                }
            }
        }
        return out;
    }

    /// Matrix acting on a column vector.
    friend Vector operator*(const Matrix& m, const Vector& v) {
        detail::require(m.cols_ == v.dim(), "matrix-vector shape mismatch");
        Vector out(m.rows_);
        for (std::size_t r = 0; r < m.rows_; ++r) {
            Complex total = 0;
            const Complex* row = m.entries_.data() + r * m.cols_;
            for (std::size_t c = 0; c < m.cols_; ++c) {
                total += row[c] * v[c];
            }
            out[r] = total;
        }
        return out;
    }

    /// Row vector times matrix.
    friend Vector operator*(const Vector& v, const Matrix& m) {
        detail::require(m.rows_ == v.dim(), "vector-matrix shape mismatch");
        Vector out(m.cols_);
        for (std::size_t r = 0; r < m.rows_; ++r) {
            const Complex lhs = v[r];
            if (lhs == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < m.cols_; ++c) {
                out[c] += lhs * m(r, c);
            }
        }
        return out;
    }

    bool operator==(const Matrix& other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix shape mismatch");
    double worst = 0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return worst;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
    detail::require(a.dim() == b.dim(), "vector dimension mismatch");
    double worst = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
inline Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex scale = a(i, j);
            if (scale == Complex{}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = scale * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Block-diagonal matrix diag(a, b).
inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(r, c) = a(r, c);
        }
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            out(a.rows() + r, a.cols() + c) = b(r, c);
        }
    }
    return out;
}

inline Matrix power(const Matrix& m, unsigned exponent) {
    detail::require(m.is_square(), "power of non-square matrix");
    Matrix result = Matrix::identity(m.rows());
    Matrix base = m;
    while (exponent != 0) {
        if (exponent & 1U) {
            result = result * base;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            base = base * base;
        }
    }
    return result;
}

/// True iff every entry of M M^dagger - I has modulus <= tol. Throws on non-square input.
inline bool is_unitary(const Matrix& m, double tol = kValidationTolerance) {
    detail::require(m.is_square(), "is_unitary: matrix is not square");
    return max_abs_diff(m * m.adjoint(), Matrix::identity(m.rows())) <= tol;
}

/// Orthogonal projector onto a set of computational basis vectors. Stored as
/// a sorted index set, so P^2 = P and P = P^dagger hold structurally.
class Projector {
   public:
    Projector() = default;
    Projector(std::size_t dim, std::vector<std::size_t> indices) : dim_(dim), indices_(std::move(indices)) {
        std::sort(indices_.begin(), indices_.end());
        detail::require(std::adjacent_find(indices_.begin(), indices_.end()) == indices_.end(),
                        "projector index listed twice");
        detail::require(indices_.empty() || indices_.back() < dim_, "projector index out of range");
    }

    static Projector full(std::size_t dim) {
        std::vector<std::size_t> all(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            all[i] = i;
        }
        return Projector(dim, std::move(all));
    }
    static Projector none(std::size_t dim) { return Projector(dim, {}); }

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return indices_.size(); }
    const std::vector<std::size_t>& indices() const { return indices_; }
    bool contains(std::size_t i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

    Projector complement() const {
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (!contains(i)) {
                rest.push_back(i);
            }
        }
        return Projector(dim_, std::move(rest));
    }

    Vector apply(const Vector& v) const {
        detail::require(v.dim() == dim_, "projector dimension mismatch");
        Vector out(dim_);
        for (std::size_t i : indices_) {
            out[i] = v[i];
        }
        return out;
    }

    Matrix matrix() const {
        Matrix m(dim_, dim_);
        for (std::size_t i : indices_) {
            m(i, i) = 1.0;
        }
        return m;
    }

    bool operator==(const Projector& other) const = default;

   private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> indices_;
};

/// Projector onto span{e_i (x) e_j : i in a, j in b}.
inline Projector tensor(const Projector& a, const Projector& b) {
    std::vector<std::size_t> indices;
    indices.reserve(a.rank() * b.rank());
    for (std::size_t i : a.indices()) {
        for (std::size_t j : b.indices()) {
            indices.push_back(i * b.dim() + j);
        }
    }
    return Projector(a.dim() * b.dim(), std::move(indices));
}

/// ||P v||^2, the probability of the outcome associated with P.
inline double projected_norm_sq(const Projector& p, const Vector& v) {
    detail::require(p.dim() == v.dim(), "projected_norm_sq: dimension mismatch");
    double total = 0;
    for (std::size_t i : p.indices()) {
        total += std::norm(v[i]);
    }
    return total;
}

}  // namespace qdes
