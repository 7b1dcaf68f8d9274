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

// Example automata for quantum discrete event systems and the classical
// counting automata they are measured against.
//
// Alphabets: EG1 and EG-ADD read {0, 1, 2} where 2 is neutral; EG2 reads {0, 1}.
// Every randomized construction takes an explicit seed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdes/automata.hpp"
#include "qdes/evaluate.hpp"
#include "qdes/linalg.hpp"
#include "qdes/supervisory.hpp"

namespace qdes {

// ---------------------------------------------------------------------------
// Primes

inline bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

/// Smallest prime p with lo < p < hi.
inline std::uint64_t smallest_prime_between(std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t p = lo + 1; p < hi; ++p) {
        if (is_prime(p)) {
            return p;
        }
    }
    throw std::invalid_argument("no prime strictly between " + std::to_string(lo) + " and " + std::to_string(hi));
}

/// 2^{N+1} < p < 2^{N+2}.
inline std::uint64_t eg1_prime(std::size_t n) {
    if (n < 1 || n > 30) {
        throw std::invalid_argument("EG1 needs 1 <= N <= 30");
    }
    return smallest_prime_between(std::uint64_t{1} << (n + 1), std::uint64_t{1} << (n + 2));
}

/// N^2 < p < 2 N^2.
inline std::uint64_t egadd_prime(std::size_t n) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("EG-ADD needs an even N >= 2");
    }
    return smallest_prime_between(std::uint64_t{n} * n, 2 * std::uint64_t{n} * n);
}

// ---------------------------------------------------------------------------
// Mod-p block

struct AfOptions {
    std::uint64_t seed = 2026;
    std::size_t attempts_per_size = 500;
    /// Block counts tried run from ceil(log2 p) up to ceil(max_log_factor * log2 p).
    double max_log_factor = 4.0;
};

/// MO-QFA over {0} accepting 0^t with probability 1 when p | t and below
/// epsilon otherwise. `multipliers` are the k_j of the rotation blocks
/// R(2 pi k_j / p); the stored automaton is written in the basis where the
/// uniform start state is e_0, so the accepting projector is {e_0}.
struct AfBlock {
    MoQfa automaton;
    std::uint64_t p = 0;
    double epsilon = 0;
    std::vector<std::uint64_t> multipliers;
    Matrix householder;           // maps the uniform state to e_0; self-inverse
    double max_residue_prob = 0;  // max over t in 1..p-1, measured on the automaton

    std::size_t dim() const { return automaton.dim; }

    /// U(0)^e for any integer e, built from the rotation angles directly.
    Matrix power(std::int64_t e) const {
        const std::int64_t pp = static_cast<std::int64_t>(p);
        const std::int64_t r = ((e % pp) + pp) % pp;
        const std::size_t d = multipliers.size();
        if (r == 0) {
            return Matrix::identity(2 * d);
        }
        Matrix rot(2 * d, 2 * d);
        for (std::size_t j = 0; j < d; ++j) {
            const double theta = 2 * std::numbers::pi * static_cast<double>((multipliers[j] * r) % p) / static_cast<double>(p);
            rot(2 * j, 2 * j) = std::cos(theta);
            rot(2 * j, 2 * j + 1) = -std::sin(theta);
            rot(2 * j + 1, 2 * j) = std::sin(theta);
            rot(2 * j + 1, 2 * j + 1) = std::cos(theta);
        }
        return householder * rot * householder;
    }
};

namespace detail {

// |(1/d) sum_j cos(2 pi k_j t / p)|^2, the acceptance probability of 0^t.
inline double af_prob(const std::vector<std::uint64_t>& k, std::uint64_t p, std::uint64_t t) {
    double sum = 0;
    for (std::uint64_t kj : k) {
        sum += std::cos(2 * std::numbers::pi * static_cast<double>((kj * t) % p) / static_cast<double>(p));
    }
    const double mean = sum / static_cast<double>(k.size());
    return mean * mean;
}

// Reflection I - 2 v v^T / |v|^2 with v = u - e_0 for the real unit vector u.
inline Matrix householder_to_e0(const Vector& u) {
    const std::size_t n = u.dim();
    Vector v = u;
    v[0] -= 1.0;
    const double vv = inner(v, v).real();
    Matrix h = Matrix::identity(n);
    if (vv < 1e-30) {
        return h;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) -= 2.0 * v[i] * std::conj(v[j]) / vv;
        }
    }
    return h;
}

}  // namespace detail

/// Searches seeded random multipliers, smallest block count first, and
/// certifies each candidate by evaluating the finished automaton on 0^t for
/// every residue t in 1..p-1. Throws std::runtime_error if no candidate
/// certifies.
inline AfBlock build_af_block(std::uint64_t p, double epsilon, const AfOptions& options = {}) {
    if (!is_prime(p)) {
        throw std::invalid_argument("build_af_modp: " + std::to_string(p) + " is not prime");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("build_af_modp: epsilon must lie in (0, 1)");
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint64_t> pick(1, p - 1);
    const double log_p = std::log2(static_cast<double>(p));
    const auto d_min = static_cast<std::size_t>(std::ceil(log_p));
    const auto d_max = std::max(d_min, static_cast<std::size_t>(std::ceil(options.max_log_factor * log_p)));
    for (std::size_t d = d_min; d <= d_max; ++d) {
        for (std::size_t attempt = 0; attempt < options.attempts_per_size; ++attempt) {
            std::vector<std::uint64_t> k(d);
            for (auto& kj : k) {
                kj = pick(rng);
            }
            double worst = 0;
            for (std::uint64_t t = 1; t < p && worst < epsilon; ++t) {
                worst = std::max(worst, detail::af_prob(k, p, t));
            }
            if (worst >= epsilon) {
                continue;
            }
            AfBlock block;
            block.p = p;
            block.epsilon = epsilon;
            block.multipliers = std::move(k);
            Vector uniform(2 * d);
            for (std::size_t j = 0; j < d; ++j) {
                uniform[2 * j] = 1.0 / std::sqrt(static_cast<double>(d));
            }
            block.householder = detail::householder_to_e0(uniform);
            MoQfa& m = block.automaton;
            m.dim = 2 * d;
            m.alphabet = Alphabet{"0"};
            m.unitaries = {block.power(1)};
            m.initial = Vector::basis(2 * d, 0);
            m.accepting = Projector(2 * d, {0});
            m.rejecting = m.accepting.complement();
            // The certificate is taken on the automaton itself, not the formula.
            Vector psi = m.initial;
            double measured = 0;
            for (std::uint64_t t = 1; t < p; ++t) {
                psi = m.unitaries[0] * psi;
                measured = std::max(measured, projected_norm_sq(m.accepting, psi));
            }
            if (measured >= epsilon) {
                continue;
            }
            block.max_residue_prob = measured;
            return block;
        }
    }
    throw std::runtime_error("build_af_modp: no multiplier set certified epsilon = " + detail::format_double(epsilon) +
                             " for p = " + std::to_string(p));
}

inline MoQfa build_af_modp(std::uint64_t p, double epsilon, const AfOptions& options = {}) {
    return build_af_block(p, epsilon, options).automaton;
}

// ---------------------------------------------------------------------------
// EG1 and EG-ADD

/// EG1 over {0, 1, 2}: with w' the word w minus its 2s, L(w) = 1 when
/// |w'| < 2N or w' = x y with |x| = |y| = N and x + y = 2^N - 1 in binary;
/// L(w) < epsilon otherwise. Classical state s_i counts |w'| up to the
/// rejecting sink s_{2N+1}; the quantum part is the mod-p block for
/// 2^{N+1} < p < 2^{N+2}, started at U^{p - 2^N + 1} e_0 so that the
/// exponent reaches p exactly on members.
inline Qfac build_eg1(std::size_t n, double epsilon, const AfOptions& options = {}) {
    const std::uint64_t p = eg1_prime(n);
    const AfBlock af = build_af_block(p, epsilon, options);
    const std::size_t k = 2 * n + 2;
    const std::size_t dim = af.dim();
    Qfac m;
    m.classical_states = k;
    m.dim = dim;
    m.alphabet = Alphabet{"0", "1", "2"};
    m.initial_classical = 0;
    m.initial = af.power(static_cast<std::int64_t>(p - (std::uint64_t{1} << n) + 1)) * Vector::basis(dim, 0);
    const Matrix id = Matrix::identity(dim);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t next = std::min(i + 1, k - 1);
        m.transitions.push_back({next, next, i});
        Matrix one = id;
        if (i < 2 * n) {
            one = af.power(std::int64_t{1} << (n - 1 - i % n));
        }
        m.unitaries.push_back({id, one, id});
        if (i < 2 * n) {
            m.accepting.push_back(Projector::full(dim));
        } else if (i == 2 * n) {
            m.accepting.push_back(af.automaton.accepting);
        } else {
            m.accepting.push_back(Projector::none(dim));
        }
        m.rejecting.push_back(m.accepting.back().complement());
    }
    return m;
}

/// EG-ADD over {0, 1, 2}, N even: with w' the word w minus its 2s,
/// L(w) = 1 when |w'| < N, 0 when |w'| > N, and at |w'| = N it is 0 exactly
/// when |w|_0 = N/2 and above 1 - epsilon otherwise. 0 and 1 apply
/// U^{N/2} and U^{-N/2} for the mod-p block with N^2 < p < 2 N^2, whose
/// accepting projector is complemented.
inline Qfac build_egadd(std::size_t n, double epsilon, const AfOptions& options = {}) {
    const std::uint64_t p = egadd_prime(n);
    const AfBlock af = build_af_block(p, epsilon, options);
    const std::size_t k = n + 2;
    const std::size_t dim = af.dim();
    const auto half = static_cast<std::int64_t>(n / 2);
    const Matrix up = af.power(half);
    const Matrix down = af.power(-half);
    const Matrix id = Matrix::identity(dim);
    Qfac m;
    m.classical_states = k;
    m.dim = dim;
    m.alphabet = Alphabet{"0", "1", "2"};
    m.initial_classical = 0;
    m.initial = Vector::basis(dim, 0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t next = std::min(i + 1, k - 1);
        m.transitions.push_back({next, next, i});
        m.unitaries.push_back({up, down, id});
        if (i < n) {
            m.accepting.push_back(Projector::full(dim));
        } else if (i == n) {
            m.accepting.push_back(af.automaton.accepting.complement());
        } else {
            m.accepting.push_back(Projector::none(dim));
        }
        m.rejecting.push_back(m.accepting.back().complement());
    }
    return m;
}

/// The target automaton: every transition on symbol "2" is sent to
/// `dead_state`, whose measurement must reject identically. Words without
/// a 2 keep their value.
inline Qfac build_spec_variant(const Qfac& fixture, std::size_t dead_state, const Symbol& symbol = "2") {
    if (dead_state >= fixture.classical_states) {
        throw std::invalid_argument("build_spec_variant: dead state out of range");
    }
    if (fixture.accepting[dead_state].rank() != 0) {
        throw std::invalid_argument("build_spec_variant: state " + std::to_string(dead_state) +
                                    " does not reject identically");
    }
    Qfac m = fixture;
    const std::size_t a = m.alphabet.index_of(symbol);
    for (auto& row : m.transitions) {
        row[a] = dead_state;
    }
    return m;
}

// ---------------------------------------------------------------------------
// EG2

/// Midpoint of [1 - lambda^{1/(N+1)}, 1 - lambda^{1/N}), so that
/// (1-r)^N > lambda >= (1-r)^{N+1}. At lambda = 0 the interval is empty and r = 1.
inline double eg2_rate(std::size_t n, double lambda) {
    if (n < 1) {
        throw std::invalid_argument("EG2 needs N >= 1");
    }
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("EG2 needs 0 <= lambda < 1");
    }
    const double lo = 1.0 - std::pow(lambda, 1.0 / static_cast<double>(n + 1));
    const double hi = 1.0 - std::pow(lambda, 1.0 / static_cast<double>(n));
    return 0.5 * (lo + hi);
}

namespace detail {

/// Unitary whose leading columns are `given` (orthonormal), completed by
/// Gram-Schmidt over e_0, e_1, ... in order, skipping dependent vectors.
inline Matrix complete_unitary(std::size_t n, const std::vector<Vector>& given) {
    std::vector<Vector> cols = given;
    for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
        Vector v = Vector::basis(n, i);
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& c : cols) {
                const Complex proj = inner(c, v);
                for (std::size_t j = 0; j < n; ++j) {
                    v[j] -= proj * c[j];
                }
            }
        }
        const double len = v.norm();
        if (len > 1e-9) {
            for (std::size_t j = 0; j < n; ++j) {
                v[j] /= len;
            }
            cols.push_back(std::move(v));
        }
    }
    Matrix u(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            u(r, c) = cols[c][r];
        }
    }
    return u;
}

}  // namespace detail

/// EG2 over {0, 1}: going q0, reject q1, accept q2, with
/// U(0) q0 = sqrt(1-r) q0 + sqrt(r) q1, U($) q0 = q2, U(1) = I, so that
/// L(s) = (1-r)^{|s|_0}.
inline MmQfa build_eg2(std::size_t n, double lambda) {
    const double r = eg2_rate(n, lambda);
    MmQfa m;
    m.dim = 3;
    m.alphabet = Alphabet{"0", "1"};
    m.unitaries = {detail::complete_unitary(3, {Vector{std::sqrt(1 - r), std::sqrt(r), 0.0}}), Matrix::identity(3)};
    m.end_unitary = detail::complete_unitary(3, {Vector::basis(3, 2)});
    m.initial = Vector::basis(3, 0);
    m.going = Projector(3, {0});
    m.rejecting = Projector(3, {1});
    m.accepting = Projector(3, {2});
    return m;
}

/// U(1) becomes the q0 <-> q1 swap, so L(s) = 0 whenever s contains a 1.
inline MmQfa build_eg2_spec(const MmQfa& eg2) {
    MmQfa m = eg2;
    m.unitaries[m.alphabet.index_of("1")] = detail::complete_unitary(3, {Vector::basis(3, 1), Vector::basis(3, 0)});
    return m;
}

// ---------------------------------------------------------------------------
// Control instances

template <class Model>
struct ControlInstance {
    Model plant;
    Model target;
    ControlSpec spec;
};

/// EG1 plant with its 2-killing target; 0 and 1 uncontrollable.
inline ControlInstance<Qfac> eg1_control_instance(std::size_t n, double lambda, const AfOptions& options = {}) {
    const Qfac plant = build_eg1(n, lambda, options);
    const Alphabet& sigma = plant.alphabet;
    return {plant, build_spec_variant(plant, 2 * n + 1), ControlSpec::with_uncontrollable(sigma, {"0", "1"}, lambda)};
}

/// EG-ADD plant with its 2-killing target; 0 and 1 uncontrollable.
inline ControlInstance<Qfac> egadd_control_instance(std::size_t n, double lambda, const AfOptions& options = {}) {
    const Qfac plant = build_egadd(n, lambda, options);
    const Alphabet& sigma = plant.alphabet;
    return {plant, build_spec_variant(plant, n + 1), ControlSpec::with_uncontrollable(sigma, {"0", "1"}, lambda)};
}

/// EG2 plant with its 1-killing target; 0 uncontrollable.
inline ControlInstance<MmQfa> eg2_control_instance(std::size_t n, double lambda) {
    const MmQfa plant = build_eg2(n, lambda);
    return {plant, build_eg2_spec(plant), ControlSpec::with_uncontrollable(plant.alphabet, {"0"}, lambda)};
}

/// Marking instance on EG-ADD: target K = L_(N) restricted to {0,1}*, as the
/// value-preserving target automaton. Values on words without a 2
/// are 0 or at least 1 - epsilon, so with lambda + rho <= 1 - epsilon the
/// marked plant agrees with K there.
inline ControlInstance<Qfac> egadd_marking_instance(std::size_t n, double lambda, double rho,
                                                    const AfOptions& options = {}) {
    if (!(lambda + rho < 1.0)) {
        throw std::invalid_argument("egadd_marking_instance: lambda + rho must be below 1");
    }
    ControlInstance<Qfac> inst = egadd_control_instance(n, 1.0 - (lambda + rho), options);
    inst.spec.lambda = lambda;
    inst.spec.rho = rho;
    return inst;
}

// ---------------------------------------------------------------------------
// Classical baselines

/// {s in {0,1}*: |s|_0 <= N}: zero counter 0..N plus a dead state.
inline Dfa bounded_zeros_dfa(std::size_t n) {
    Dfa d;
    d.num_states = n + 2;
    d.alphabet = Alphabet{"0", "1"};
    for (std::size_t q = 0; q <= n + 1; ++q) {
        d.transitions.push_back({std::min(q + 1, n + 1), q});
        d.accepting.push_back(q <= n);
    }
    return d;
}

namespace detail {

// Builds a DFA over {0,1} from a state key, a successor function and an
// acceptance test, exploring from `start`.
template <class Key, class Next, class Accepts>
Dfa explore_dfa(Key start, Next next, Accepts accepts) {
    std::map<Key, std::size_t> index{{start, 0}};
    std::vector<Key> keys{start};
    Dfa d;
    d.alphabet = Alphabet{"0", "1"};
    for (std::size_t i = 0; i < keys.size(); ++i) {
        std::vector<std::size_t> row;
        for (int bit = 0; bit < 2; ++bit) {
            const Key k = next(keys[i], bit);
            auto [it, inserted] = index.emplace(k, keys.size());
            if (inserted) {
                keys.push_back(k);
            }
            row.push_back(it->second);
        }
        d.transitions.push_back(std::move(row));
        d.accepting.push_back(accepts(keys[i]));
    }
    d.num_states = keys.size();
    return d;
}

}  // namespace detail

/// L^{(N)} over {0,1}: state (length, running binary sum), capped at 2N+1
/// for the rejecting overflow.
inline Dfa eg1_counting_dfa(std::size_t n) {
    using Key = std::pair<std::size_t, std::uint64_t>;
    const std::uint64_t target = (std::uint64_t{1} << n) - 1;
    return detail::explore_dfa(
        Key{0, 0},
        [n](const Key& k, int bit) -> Key {
            if (k.first >= 2 * n) {
                return {2 * n + 1, 0};
            }
            const std::uint64_t weight = std::uint64_t{1} << (n - 1 - k.first % n);
            return {k.first + 1, k.second + (bit ? weight : 0)};
        },
        [n, target](const Key& k) { return k.first < 2 * n || (k.first == 2 * n && k.second == target); });
}

/// L_(N) over {0,1}: state (length, zeros), capped at N+1 for overflow.
inline Dfa egadd_counting_dfa(std::size_t n) {
    using Key = std::pair<std::size_t, std::size_t>;
    return detail::explore_dfa(
        Key{0, 0},
        [n](const Key& k, int bit) -> Key {
            if (k.first >= n) {
                return {n + 1, 0};
            }
            return {k.first + 1, k.second + (bit == 0 ? 1 : 0)};
        },
        [n](const Key& k) { return k.first < n || (k.first == n && 2 * k.second != n); });
}

/// Minimal complete DFA: reachable part, then Moore partition refinement.
inline Dfa minimize_dfa(const Dfa& d) {
    if (std::vector<Violation> v = validate(d); !v.empty()) {
        throw std::invalid_argument("minimize_dfa: " + to_string(v.front()));
    }
    const std::size_t sigma = d.alphabet.size();
    std::vector<std::size_t> reach{d.initial};
    std::vector<std::size_t> id(d.num_states, d.num_states);
    id[d.initial] = 0;
    for (std::size_t i = 0; i < reach.size(); ++i) {
        for (std::size_t a = 0; a < sigma; ++a) {
            const std::size_t q = d.transitions[reach[i]][a];
            if (id[q] == d.num_states) {
                id[q] = reach.size();
                reach.push_back(q);
            }
        }
    }
    const std::size_t n = reach.size();
    std::vector<std::size_t> block(n);
    for (std::size_t i = 0; i < n; ++i) {
        block[i] = d.accepting[reach[i]] ? 1 : 0;
    }
    std::size_t blocks = 0;
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> signature;
        std::vector<std::size_t> refined(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> key{block[i]};
            for (std::size_t a = 0; a < sigma; ++a) {
                key.push_back(block[id[d.transitions[reach[i]][a]]]);
            }
            refined[i] = signature.emplace(std::move(key), signature.size()).first->second;
        }
        block = std::move(refined);
        if (signature.size() == blocks) {
            break;
        }
        blocks = signature.size();
    }
    Dfa m;
    m.num_states = blocks;
    m.alphabet = d.alphabet;
    m.initial = block[0];
    m.transitions.assign(blocks, std::vector<std::size_t>(sigma));
    m.accepting.assign(blocks, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < sigma; ++a) {
            m.transitions[block[i]][a] = block[id[d.transitions[reach[i]][a]]];
        }
        m.accepting[block[i]] = d.accepting[reach[i]];
    }
    return m;
}

inline std::size_t minimal_dfa_size(const Dfa& d) { return minimize_dfa(d).num_states; }

// ---------------------------------------------------------------------------
// Return of the state

/// Least k >= 1 with ||U(sigma)^k psi_s - psi_s|| <= tol, psi_s the state after s.
/// A returned state gives |L(s sigma^k) - L(s)| <= 2 tol; this is the
/// recurrence that keeps a measure-once automaton from leaving a
/// prefix-closed language. Throws std::runtime_error past `max_k`.
inline std::size_t fact2_witness(const MoQfa& m, const Word& s, const Symbol& sigma, double tol = 1e-12,
                                 std::size_t max_k = 100000) {
    if (std::vector<Violation> v = validate(m); !v.empty()) {
        throw std::invalid_argument("fact2_witness: " + to_string(v.front()));
    }
    Vector psi = m.initial;
    for (std::size_t a : m.alphabet.encode(s)) {
        psi = m.unitaries[a] * psi;
    }
    const Matrix& u = m.unitaries[m.alphabet.index_of(sigma)];
    Vector cur = psi;
    for (std::size_t k = 1; k <= max_k; ++k) {
        cur = u * cur;
        double gap = 0;
        for (std::size_t i = 0; i < cur.dim(); ++i) {
            gap += std::norm(cur[i] - psi[i]);
        }
        if (std::sqrt(gap) <= tol) {
            return k;
        }
    }
    throw std::runtime_error("fact2_witness: no return within " + std::to_string(max_k) + " steps at tol " +
                             detail::format_double(tol));
}

}  // namespace qdes
