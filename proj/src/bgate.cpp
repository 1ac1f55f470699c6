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


#include "qcomp/bgate.hpp"

#include <cmath>

#include "json.hpp"

#include "qcomp/linalg.hpp"

namespace qcomp {

namespace {

Gate sigma_phi_pair(Real phi) {
    const Mat2 s = std::cos(phi) * pauli_matrix('X') + std::sin(phi) * pauli_matrix('Y');
    return kron(s, s);
}

Real spectral_norm(const Gate& m) {
    Eigen::JacobiSVD<Gate> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

Real SdfParams::theta() const { return M_PI * rabi * rabi * lamb_dicke * lamb_dicke / (detuning * detuning); }

bool SdfParams::valid() const {
    const Real t = theta();
    return rabi > 0 && lamb_dicke > 0 && detuning > 0 && t > 0 && t < M_PI / 2;
}

Real b_gate_phase() { return 0.5 * std::acos(std::sqrt(2.0) - 1.0); }

Real b_gate_phase_cot() { return 0.5 * std::acos(1.0 / std::tan(3.0 * M_PI / 8.0)); }

SdfParams b_gate_params(Real rabi, Real lamb_dicke) {
    SdfParams p;
    p.rabi = rabi;
    p.lamb_dicke = lamb_dicke;
    p.detuning = 4.0 / std::sqrt(3.0) * rabi * lamb_dicke;
    p.phase = b_gate_phase();
    return p;
}

Gate u_sdf(Real theta, Real phi) {
    // (s (x) s)^2 = 1
    const Gate pair = sigma_phi_pair(phi);
    return std::cos(theta) * Gate::Identity() - kI * std::sin(theta) * pair;
}

Gate u_sdf(const SdfParams& p) {
    if (!p.valid()) throw Error("SDF parameters outside single-loop closure range");
    return u_sdf(p.theta(), p.phase);
}

Gate echoed_b(Real theta, Real phi) { return u_sdf(theta, phi) * u_sdf(theta, -phi); }

Gate echoed_b(const SdfParams& p) {
    if (!p.valid()) throw Error("SDF parameters outside single-loop closure range");
    return echoed_b(p.theta(), p.phase);
}

Real virtual_z_angle(Real theta, Real phi) {
    const Real c = std::cos(theta), s = std::sin(theta);
    return 0.5 * std::arg(c * c - s * s * std::exp(Complex{0.0, -4.0 * phi}));
}

Real virtual_z_angle() { return virtual_z_angle(3.0 * M_PI / 16.0, b_gate_phase()); }

Mat2 rz(Real a) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = std::polar(1.0, -a / 2);
    m(1, 1) = std::polar(1.0, a / 2);
    return m;
}

Gate b_gate() {
    const Gate h = kron(pauli_matrix('X'), pauli_matrix('X')) + 0.5 * kron(pauli_matrix('Y'), pauli_matrix('Y'));
    return expm_hermitian(h, M_PI / 4);
}

Gate corrected_echoed_b(const SdfParams& p) {
    const Real lam = virtual_z_angle(p.theta(), p.phase);
    const Gate z = kron(rz(lam), rz(lam));
    return z * echoed_b(p) * z;
}

BGateCheck verify_b(Real detuning_error, Real rabi, Real lamb_dicke) {
    SdfParams p = b_gate_params(rabi, lamb_dicke);
    p.detuning *= 1.0 + detuning_error;
    BGateCheck r;
    r.theta = p.theta();
    r.phi = p.phase;
    r.lambda = virtual_z_angle(r.theta, r.phi);
    r.phi_forms_gap = std::abs(b_gate_phase() - b_gate_phase_cot());
    const Gate d = corrected_echoed_b(p);
    const Gate target = b_gate();
    const Complex ov = (target.adjoint() * d).trace();
    const Complex phase = std::abs(ov) > 0 ? ov / std::abs(ov) : Complex{1.0};
    const Gate aligned = d / phase;
    r.distance = spectral_norm(Gate(aligned - target));
    r.frobenius_distance = (aligned - target).norm();
    // exp(-i a X) = [[cos a, -i sin a], [-i sin a, cos a]] on {00,11} and {01,10}
    r.even_angle = std::atan2(-aligned(0, 3).imag(), aligned(0, 0).real());
    r.odd_angle = std::atan2(-aligned(1, 2).imag(), aligned(1, 1).real());
    r.even_residual = std::abs(r.even_angle - M_PI / 8);
    r.odd_residual = std::abs(r.odd_angle - 3 * M_PI / 8);
    const Gate zz = kron(pauli_matrix('Z'), pauli_matrix('Z'));
    r.parity_commutator = (d * zz - zz * d).norm();
    r.pass = r.distance < 1e-10 && r.even_residual < 1e-10 && r.odd_residual < 1e-10 && r.phi_forms_gap <= 1e-15;
    return r;
}

std::string to_json(const BGateCheck& c) {
    nlohmann::ordered_json j;
    j["pass"] = c.pass;
    j["distance"] = c.distance;
    j["frobenius_distance"] = c.frobenius_distance;
    j["theta"] = c.theta;
    j["phi"] = c.phi;
    j["phi_forms_gap"] = c.phi_forms_gap;
    j["lambda"] = c.lambda;
    j["even_angle"] = c.even_angle;
    j["odd_angle"] = c.odd_angle;
    j["even_residual"] = c.even_residual;
    j["odd_residual"] = c.odd_residual;
    j["parity_commutator"] = c.parity_commutator;
    return j.dump(2);
}

int decompose_su4_counts(const std::string& kind) {
    if (kind == "b" || kind == "B") return 2;
    if (kind == "ms" || kind == "MS" || kind == "cz" || kind == "CZ") return 3;
    throw Error("unknown gate family '" + kind + "'");
}

}  // namespace qcomp
