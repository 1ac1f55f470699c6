// Copyright 2026 The qcomp Authors
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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

#include "qcomp/types.hpp"

namespace qcomp {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the named substream (label, indices...) of `root`. Independent of
/// evaluation order, so parallel workers reproduce sequential results.
inline std::uint64_t substream_seed(std::uint64_t root, std::string_view label,
                                    std::initializer_list<std::uint64_t> indices = {}) {
    std::uint64_t h = splitmix64(root);
    for (unsigned char c : label) h = splitmix64(h ^ c);
    for (std::uint64_t i : indices) h = splitmix64(h ^ splitmix64(i + 0x632BE59BD9B4E019ULL));
    return h;
}

inline Rng substream(std::uint64_t root, std::string_view label, std::initializer_list<std::uint64_t> indices = {}) {
    return Rng(substream_seed(root, label, indices));
}

/// Haar-random pure state: normalized vector of complex standard Gaussians.
inline Amplitudes haar_state(int n_qubits, Rng& rng) {
    std::normal_distribution<Real> normal;
    Amplitudes v(static_cast<Eigen::Index>(dim_of(n_qubits)));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const Real re = normal(rng);
        const Real im = normal(rng);
        v(i) = Complex{re, im};
    }
    return v / v.norm();
}

/// Traceless Hermitian matrix with i.i.d. complex Gaussian entries (GUE-like).
template <int Rows>
Eigen::Matrix<Complex, Rows, Rows> random_traceless_hermitian(Rng& rng, int dim = Rows) {
    std::normal_distribution<Real> normal;
    Eigen::Matrix<Complex, Rows, Rows> g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const Real re = normal(rng);
            const Real im = normal(rng);
            g(i, j) = Complex{re, im};
        }
    Eigen::Matrix<Complex, Rows, Rows> h = 0.5 * (g + g.adjoint());
    h.diagonal().array() -= h.trace() / static_cast<Real>(dim);
    return h;
}

}  // namespace qcomp
