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


#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "qcomp/bgate.hpp"

using namespace qcomp;

namespace {

Real off_parity(const Gate& g) {
    Real m = 0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if ((__builtin_popcount(r) & 1) != (__builtin_popcount(c) & 1)) m = std::max(m, std::abs(g(r, c)));
    return m;
}

}  // namespace

TEST_SUITE("bgate") {
    TEST_CASE("SDF unitary") {
        const Gate u = u_sdf(M_PI / 4, 0.0);
        CHECK((DenseOperator(u) - oracle::expm_minus_i(oracle::pauli_dense("XX"), M_PI / 4)).norm() < 1e-14);
        const Gate v = u_sdf(0.37, 0.81);
        CHECK((v.adjoint() * v - Gate::Identity()).norm() < 1e-14);
        Eigen::ComplexEigenSolver<Gate> es(v);
        int plus = 0, minus = 0;
        for (int i = 0; i < 4; ++i) {
            if (std::abs(es.eigenvalues()(i) - std::polar(1.0, -0.37)) < 1e-12) ++plus;
            if (std::abs(es.eigenvalues()(i) - std::polar(1.0, 0.37)) < 1e-12) ++minus;
        }
        CHECK(plus == 2);
        CHECK(minus == 2);
    }

    TEST_CASE("B-gate parameters") {
        const SdfParams p = b_gate_params();
        CHECK(p.theta() == doctest::Approx(3 * M_PI / 16).epsilon(1e-15));
        CHECK(std::abs(b_gate_phase() - b_gate_phase_cot()) < 1e-15);
        CHECK(b_gate_params(2.0, 0.05).theta() == doctest::Approx(3 * M_PI / 16).epsilon(1e-15));
    }

    TEST_CASE("echoed product structure") {
        const SdfParams p = b_gate_params();
        const Gate d = echoed_b(p);
        // odd block is exp(-i 2 theta X) on span{|01>, |10>}
        const Real th = p.theta();
        CHECK(std::abs(d(1, 1) - std::cos(2 * th)) < 1e-14);
        CHECK(std::abs(d(1, 2) - Complex{0.0, -std::sin(2 * th)}) < 1e-14);
        CHECK(off_parity(d) < 1e-14);
        CHECK((echoed_b(th, 0.0) - u_sdf(th, 0.0) * u_sdf(th, 0.0)).norm() < 1e-14);
    }

    TEST_CASE("block structure across a parameter grid") {
        const Gate odd_ref = echoed_b(0.4, 0.0);
        for (int i = 1; i <= 6; ++i)
            for (int j = 0; j <= 6; ++j) {
                const Real th = 0.1 * i, ph = 0.2 * j;
                const Gate d = echoed_b(th, ph);
                REQUIRE(off_parity(d) < 1e-14);
                if (std::abs(th - 0.4) < 1e-15) {
                    REQUIRE(std::abs(d(1, 1) - odd_ref(1, 1)) < 1e-12);
                    REQUIRE(std::abs(d(1, 2) - odd_ref(1, 2)) < 1e-12);
                }
                // even block: magnitude of the |00>-|11> coupling is sin(beta)
                const Real sin_beta = std::abs(d(0, 3));
                REQUIRE(sin_beta == doctest::Approx(std::abs(std::sin(2 * th) * std::cos(2 * ph))).epsilon(1e-10));
            }
    }

    TEST_CASE("odd block does not depend on the phase") {
        for (Real ph : {0.0, 0.3, 0.7, 1.2}) {
            const Gate a = echoed_b(0.5, ph), b = echoed_b(0.5, 0.0);
            CHECK(std::abs(a(1, 1) - b(1, 1)) < 1e-12);
            CHECK(std::abs(a(1, 2) - b(1, 2)) < 1e-12);
            CHECK(std::abs(a(2, 2) - b(2, 2)) < 1e-12);
        }
    }

    TEST_CASE("virtual-Z angle") {
        const Real th = 3 * M_PI / 16, ph = b_gate_phase();
        const Complex z = std::cos(th) * std::cos(th) - std::sin(th) * std::sin(th) * std::polar(1.0, -4 * ph);
        CHECK(virtual_z_angle() == doctest::Approx(0.5 * std::arg(z)).epsilon(1e-15));
        for (Real t : {0.3, 0.9}) {
            const Real lam = virtual_z_angle(t, 0.0);
            CHECK((std::abs(lam) < 1e-15 || std::abs(lam - M_PI / 2) < 1e-15));
        }
    }

    TEST_CASE("identity verification") {
        const BGateCheck r = verify_b();
        CHECK(r.pass);
        CHECK(r.distance < 1e-10);
        CHECK(std::abs(r.even_angle - M_PI / 8) < 1e-10);
        CHECK(std::abs(r.odd_angle - 3 * M_PI / 8) < 1e-10);
        CHECK(r.parity_commutator < 1e-12);
        CHECK(r.phi_forms_gap < 1e-15);
        const Gate b = b_gate();
        const DenseOperator ref = oracle::expm_minus_i(
            oracle::pauli_dense("XX") + 0.5 * oracle::pauli_dense("YY"), M_PI / 4);
        CHECK((DenseOperator(b) - ref).norm() < 1e-14);
    }

    TEST_CASE("perturbed detuning breaks the identity smoothly") {
        Real prev = 0;
        for (Real e : {1e-4, 1e-3, 1e-2}) {
            const BGateCheck r = verify_b(e);
            CHECK(r.distance > prev);
            CHECK_FALSE(r.pass);
            prev = r.distance;
        }
        CHECK(verify_b(1e-3).distance > 1e-6);
    }

    TEST_CASE("JSON record") {
        const auto j = nlohmann::json::parse(to_json(verify_b()));
        for (const char* key : {"pass", "distance", "lambda", "theta", "even_residual", "odd_residual"})
            CHECK(j.contains(key));
        CHECK(to_json(verify_b()) == to_json(verify_b()));
    }

    TEST_CASE("decomposition counts") {
        CHECK(decompose_su4_counts("b") == 2);
        CHECK(decompose_su4_counts("ms") == 3);
        CHECK(decompose_su4_counts("cz") == 3);
        CHECK_THROWS_AS(decompose_su4_counts("iswap"), Error);
    }
}
