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

#include <string>

#include "qcomp/types.hpp"

namespace qcomp {

/// Closed-loop state-dependent-force parameters.
struct SdfParams {
    Real rabi = 1.0;        // Omega
    Real lamb_dicke = 0.1;  // eta
    Real detuning = 1.0;    // delta
    Real phase = 0.0;       // Phi

    /// theta = pi Omega^2 eta^2 / delta^2.
    Real theta() const;
    bool valid() const;
};

/// Phi = acos(sqrt(2) - 1) / 2.
Real b_gate_phase();
/// Same angle written as acos(cot(3 pi / 8)) / 2.
Real b_gate_phase_cot();
/// delta = (4 / sqrt 3) Omega eta, Phi = b_gate_phase(); gives theta = 3 pi / 16.
SdfParams b_gate_params(Real rabi = 1.0, Real lamb_dicke = 0.1);

/// exp(-i theta s (x) s) with s = cos(Phi) X + sin(Phi) Y.
Gate u_sdf(const SdfParams& params);
Gate u_sdf(Real theta, Real phi);

/// U_SDF(delta, Phi) U_SDF(delta, -Phi).
Gate echoed_b(const SdfParams& params);
Gate echoed_b(Real theta, Real phi);

/// lambda = arg(cos^2 theta - sin^2 theta e^{-4 i Phi}) / 2.
Real virtual_z_angle(Real theta, Real phi);
Real virtual_z_angle();

/// diag(e^{-i a/2}, e^{i a/2}).
Mat2 rz(Real angle);

/// exp(-i (pi/4) (XX + YY/2)).
Gate b_gate();

/// (Rz(l) (x) Rz(l)) B (Rz(l) (x) Rz(l)): the echoed product with the
/// virtual-Z frame change applied on both sides.
Gate corrected_echoed_b(const SdfParams& params);

struct BGateCheck {
    Real theta = 0.0;
    Real phi = 0.0;
    Real lambda = 0.0;
    /// |acos(sqrt2 - 1)/2 - acos(cot(3pi/8))/2|
    Real phi_forms_gap = 0.0;
    /// Phase-aligned operator (spectral) distance to b_gate().
    Real distance = 0.0;
    Real frobenius_distance = 0.0;
    Real even_angle = 0.0;
    Real odd_angle = 0.0;
    Real even_residual = 0.0;
    Real odd_residual = 0.0;
    /// ||[D, Z (x) Z]||
    Real parity_commutator = 0.0;
    bool pass = false;
};

/// Verification with an optional fractional error on the detuning.
BGateCheck verify_b(Real detuning_error = 0.0, Real rabi = 1.0, Real lamb_dicke = 0.1);
std::string to_json(const BGateCheck& check);

/// Fixed decomposition arity of an arbitrary SU(4) gate: "b" -> 2, "ms"/"cz" -> 3.
int decompose_su4_counts(const std::string& kind);

}  // namespace qcomp
