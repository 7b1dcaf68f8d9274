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

// Matrix-free views of bilinear machines. A tensor product of two machines
// with n1 and n2 states is never materialised: its transition acts on
// vec(X) (X an n1 x n2 matrix) as A X B^T, costing n1 n2 (n1 + n2) rather
// than (n1 n2)^2 per step. Views compose, so (H (x) M) (+) (H' (x) H') is a
// type, not a matrix.

#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "qdes/blm.hpp"

namespace qdes {

template <class T>
concept LinearMachine = requires(const T& m, std::size_t symbol, const Vector& v) {
    { m.alphabet() } -> std::convertible_to<const Alphabet&>;
    { m.dim() } -> std::convertible_to<std::size_t>;
    { m.initial() } -> std::convertible_to<Vector>;
    { m.final() } -> std::convertible_to<Vector>;
    { m.apply(symbol, v) } -> std::convertible_to<Vector>;
};

class DenseView {
   public:
    explicit DenseView(Rblm machine) : machine_(std::move(machine)) {}

    const Alphabet& alphabet() const { return machine_.alphabet; }
    std::size_t dim() const { return machine_.dim(); }
    Vector initial() const { return machine_.initial; }
    Vector final() const { return machine_.final; }
    Vector apply(std::size_t symbol, const Vector& v) const { return machine_.transitions[symbol] * v; }
    const Rblm& machine() const { return machine_; }

   private:
    Rblm machine_;
};

namespace detail {

inline void require_same_order(const Alphabet& a, const Alphabet& b) {
    if (!(a == b)) {
        throw std::invalid_argument("machine views need identical alphabets in identical order");
    }
}

}  // namespace detail

template <LinearMachine Left, LinearMachine Right>
class TensorView {
   public:
    TensorView(Left left, Right right) : left_(std::move(left)), right_(std::move(right)) {
        detail::require_same_order(left_.alphabet(), right_.alphabet());
    }

    const Alphabet& alphabet() const { return left_.alphabet(); }
    std::size_t dim() const { return left_.dim() * right_.dim(); }
    Vector initial() const { return tensor(left_.initial(), right_.initial()); }
    Vector final() const { return tensor(left_.final(), right_.final()); }

    Vector apply(std::size_t symbol, const Vector& v) const {
        const std::size_t n1 = left_.dim();
        const std::size_t n2 = right_.dim();
        // Rows of X through the right factor, then columns through the left.
        Vector partial(n1 * n2);
        Vector row(n2);
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t j = 0; j < n2; ++j) {
                row[j] = v[i * n2 + j];
            }
            Vector mapped = right_.apply(symbol, row);
            for (std::size_t j = 0; j < n2; ++j) {
                partial[i * n2 + j] = mapped[j];
            }
        }
        Vector out(n1 * n2);
        Vector column(n1);
        for (std::size_t j = 0; j < n2; ++j) {
            for (std::size_t i = 0; i < n1; ++i) {
                column[i] = partial[i * n2 + j];
            }
            Vector mapped = left_.apply(symbol, column);
            for (std::size_t i = 0; i < n1; ++i) {
                out[i * n2 + j] = mapped[i];
            }
        }
        return out;
    }

   private:
    Left left_;
    Right right_;
};

template <LinearMachine Left, LinearMachine Right>
class DirectSumView {
   public:
    DirectSumView(Left left, Right right) : left_(std::move(left)), right_(std::move(right)) {
        detail::require_same_order(left_.alphabet(), right_.alphabet());
    }

    const Alphabet& alphabet() const { return left_.alphabet(); }
    std::size_t dim() const { return left_.dim() + right_.dim(); }
    Vector initial() const { return direct_sum(left_.initial(), right_.initial()); }
    Vector final() const { return direct_sum(left_.final(), right_.final()); }

    Vector apply(std::size_t symbol, const Vector& v) const {
        const std::size_t n1 = left_.dim();
        Vector top(n1);
        Vector bottom(right_.dim());
        for (std::size_t i = 0; i < n1; ++i) {
            top[i] = v[i];
        }
        for (std::size_t i = 0; i < bottom.dim(); ++i) {
            bottom[i] = v[n1 + i];
        }
        return direct_sum(left_.apply(symbol, top), right_.apply(symbol, bottom));
    }

   private:
    Left left_;
    Right right_;
};

template <LinearMachine Left, LinearMachine Right>
TensorView<Left, Right> tensor_view(Left left, Right right) {
    return {std::move(left), std::move(right)};
}

template <LinearMachine Left, LinearMachine Right>
DirectSumView<Left, Right> direct_sum_view(Left left, Right right) {
    return {std::move(left), std::move(right)};
}

/// Dense copy of a view; only sensible for small machines.
template <LinearMachine Machine>
Rblm materialize(const Machine& m) {
    Rblm out;
    out.alphabet = m.alphabet();
    out.initial = m.initial();
    out.final = m.final();
    const std::size_t n = m.dim();
    for (std::size_t a = 0; a < out.alphabet.size(); ++a) {
        Matrix mat(n, n);
        for (std::size_t c = 0; c < n; ++c) {
            Vector column = m.apply(a, Vector::basis(n, c));
            for (std::size_t r = 0; r < n; ++r) {
                mat(r, c) = column[r];
            }
        }
        out.transitions.push_back(std::move(mat));
    }
    return out;
}

template <LinearMachine Machine>
Complex view_eval(const Machine& m, const Word& w) {
    Vector v = m.initial();
    for (std::size_t a : m.alphabet().encode(w)) {
        v = m.apply(a, v);
    }
    return dot(m.final(), v);
}

}  // namespace qdes
