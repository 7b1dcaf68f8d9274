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

#include <cmath>
#include <cstddef>
#include <vector>

#include "qdes/linalg.hpp"

namespace qdes {

/// Incrementally grown orthonormal basis. A candidate joins the basis when
/// its residual after two passes of modified Gram-Schmidt exceeds
/// tol * max(1, |candidate|).
class SpanBasis {
   public:
    explicit SpanBasis(double tol) : tol_(tol) {}

    bool try_insert(const Vector& candidate) {
        Vector residual = candidate;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& q : basis_) {
                Complex c = inner(q, residual);
                for (std::size_t i = 0; i < residual.dim(); ++i) {
                    residual[i] -= c * q[i];
                }
            }
        }
        const double scale = std::max(1.0, candidate.norm());
        const double r = residual.norm();
        if (!(r > tol_ * scale)) {
            return false;
        }
        residual *= Complex(1.0 / r);
        basis_.push_back(std::move(residual));
        return true;
    }

    std::size_t size() const { return basis_.size(); }
    const std::vector<Vector>& vectors() const { return basis_; }

   private:
    double tol_;
    std::vector<Vector> basis_;
};

}  // namespace qdes
