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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qcomp {

using Real = double;
using Complex = std::complex<Real>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using GateMatrix = Eigen::Matrix<Scalar, 4, 4>;

/// Dense operator on 2^n amplitudes; qubit 0 is the most significant bit.
using DenseOperator = DenseMatrix<Complex>;
using Amplitudes = DenseVector<Complex>;
/// Two-qubit gate; the first tensor factor is the high bit of the 4x4 index.
using Gate = GateMatrix<Complex>;
using Mat2 = Eigen::Matrix<Complex, 2, 2>;

/// Largest system handled by dense (2^n x 2^n) routines.
inline constexpr int kMaxDenseQubits = 12;

/// Invalid argument or violated precondition.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite values or a failed numerical procedure.
class NumericalError : public Error {
public:
    using Error::Error;
};

inline constexpr Complex kI{0.0, 1.0};

inline std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

}  // namespace qcomp
