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


#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qcomp/pauli.hpp"

using namespace qcomp;

namespace {

std::vector<std::string> all_strings(int n) {
    std::vector<std::string> out{""};
    for (int q = 0; q < n; ++q) {
        std::vector<std::string> next;
        for (const auto& s : out)
            for (char c : {'I', 'X', 'Y', 'Z'}) next.push_back(s + c);
        out = next;
    }
    return out;
}

PauliSum random_sum(int n, std::mt19937_64& rng, int terms, bool hermitian) {
    std::uniform_int_distribution<int> letter(0, 3);
    std::normal_distribution<Real> normal;
    PauliSum s(n);
    for (int k = 0; k < terms; ++k) {
        std::string l;
        for (int q = 0; q < n; ++q) l += "IXYZ"[letter(rng)];
        const Complex c = hermitian ? Complex{normal(rng), 0.0} : Complex{normal(rng), normal(rng)};
        s.add(PauliString::from_letters(l), c);
    }
    return s;
}

}  // namespace

TEST_SUITE("pauli") {
    TEST_CASE("single-qubit products") {
        const auto x = PauliString::from_letters("X");
        const auto y = PauliString::from_letters("Y");
        const auto z = PauliString::from_letters("Z");
        CHECK(x * y == PauliString::from_letters("iZ"));
        CHECK(y * x == PauliString::from_letters("-iZ"));
        CHECK((x * y).phase() == 1);
        for (const auto& p : {x, y, z}) CHECK(p * p == PauliString(1));
    }

    TEST_CASE("two-qubit product against dense") {
        const auto a = PauliString::from_letters("XZ");
        const auto b = PauliString::from_letters("YZ");
        const auto ab = a * b;
        CHECK(ab == PauliString::from_letters("iZI"));
        const DenseOperator dense = oracle::pauli_dense("XZ") * oracle::pauli_dense("YZ");
        CHECK((ab.to_dense() - dense).norm() < 1e-14);
    }

    TEST_CASE("products on n <= 3 match dense Kronecker products and are associative") {
        for (int n = 1; n <= 2; ++n) {
            const auto strings = all_strings(n);
            for (const auto& la : strings)
                for (const auto& lb : strings) {
                    const auto a = PauliString::from_letters(la);
                    const auto b = PauliString::from_letters(lb);
                    const DenseOperator ref = oracle::pauli_dense(la) * oracle::pauli_dense(lb);
                    REQUIRE((multiply(a, b).to_dense() - ref).norm() < 1e-14);
                    const int ph = multiply(a, b).phase();
                    CHECK((ph >= 0 && ph < 4));
                }
        }
        const auto strings = all_strings(3);
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<std::size_t> pick(0, strings.size() - 1);
        for (int trial = 0; trial < 300; ++trial) {
            const auto a = PauliString::from_letters(strings[pick(rng)]);
            const auto b = PauliString::from_letters(strings[pick(rng)]);
            const auto c = PauliString::from_letters(strings[pick(rng)]);
            REQUIRE((a * b) * c == a * (b * c));
        }
    }

    TEST_CASE("commute or anticommute on all pairs of n = 4") {
        const auto strings = all_strings(4);
        for (std::size_t i = 0; i < strings.size(); i += 7)
            for (const auto& lb : strings) {
                const DenseOperator a = oracle::pauli_dense(strings[i]);
                const DenseOperator b = oracle::pauli_dense(lb);
                const bool anti = anticommutes(PauliString::from_letters(strings[i]), PauliString::from_letters(lb));
                if (anti)
                    REQUIRE((a * b + b * a).norm() < 1e-12);
                else
                    REQUIRE((a * b - b * a).norm() < 1e-12);
            }
    }

    TEST_CASE("anticommutation examples") {
        CHECK(anticommutes(PauliString::from_letters("X"), PauliString::from_letters("Z")));
        CHECK_FALSE(anticommutes(PauliString::from_letters("XX"), PauliString::from_letters("ZZ")));
        const auto k1 = PauliString::from_letters("ZIZIZI");
        for (int a = 0; a < 6; a += 2) {
            const auto xx = PauliString::single(6, a, 'X') * PauliString::single(6, a + 1, 'X');
            CHECK(anticommutes(k1, xx));
        }
    }

    TEST_CASE("weight") {
        CHECK(PauliString(5).weight() == 0);
        CHECK(PauliString::from_letters("XIYZI").weight() == 3);
        CHECK(PauliString::single(40, 37, 'Y').weight() == 1);
        CHECK(PauliString::single(40, 37, 'Y').letter(37) == 'Y');
    }

    TEST_CASE("sum stores no zeros and matches dense expansion") {
        PauliSum s(3);
        s.add(PauliString::from_letters("XYZ"), 1.5);
        s.add(PauliString::from_letters("XYZ"), -1.5);
        s.add(PauliString::from_letters("ZZI"), 2.0);
        for (const auto& [k, c] : s.terms()) CHECK(std::abs(c) > 0.0);
        CHECK(s.size() == 1);

        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 5; ++trial) {
            const PauliSum r = random_sum(4, rng, 12, false);
            DenseOperator ref = DenseOperator::Zero(16, 16);
            for (const auto& [p, c] : r.sorted_terms()) ref += c * p.phase_factor() * oracle::pauli_dense(p.letters());
            CHECK((r.to_dense() - ref).norm() < 1e-12);
        }
    }

    TEST_CASE("phase folding and hermiticity") {
        PauliSum s(2);
        s.add(PauliString::from_letters("iXY"), Complex{0.0, -2.0});
        CHECK(s.coefficient(PauliString::from_letters("XY")) == Complex{2.0, 0.0});
        CHECK(s.is_hermitian());
        s.add(PauliString::from_letters("ZZ"), Complex{0.0, 1.0});
        CHECK_FALSE(s.is_hermitian());
    }

    TEST_CASE("text round trip") {
        std::mt19937_64 rng(5);
        const PauliSum r = random_sum(5, rng, 20, false);
        CHECK(PauliSum::parse(r.str()) == r);
        const PauliSum p = PauliSum::parse("1.5*XXIZ - 0.5i*YIIZ + (1+2i)*ZZII");
        CHECK(p.coefficient(PauliString::from_letters("YIIZ")) == Complex{0.0, -0.5});
        CHECK(p.coefficient(PauliString::from_letters("ZZII")) == Complex{1.0, 2.0});
    }

    TEST_CASE("conjugation by identity and CZ") {
        std::mt19937_64 rng(9);
        const PauliSum r = random_sum(3, rng, 10, true);
        const PauliSum same = conjugate_by_gate(r, Gate::Identity(), 0, 2);
        CHECK(same.size() == r.size());
        for (const auto& [k, c] : r.terms()) CHECK(std::abs(same.coefficient(k) - c) < 1e-15);

        Gate cz = Gate::Identity();
        cz(3, 3) = -1.0;
        const PauliSum zi(PauliString::from_letters("ZI"));
        CHECK(conjugate_by_gate(zi, cz, 0, 1) == zi);
        const PauliSum xi(PauliString::from_letters("XI"));
        const PauliSum img = conjugate_by_gate(xi, cz, 0, 1);
        CHECK(std::abs(img.coefficient(PauliString::from_letters("XZ")) - 1.0) < 1e-15);
    }

    TEST_CASE("conjugation matches dense oracle") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 10; ++trial) {
            const Gate g = oracle::random_gate(rng);
            const PauliSum x0(PauliString::from_letters("XI"));
            const PauliSum img = conjugate_by_gate(x0, g, 0, 1);
            const DenseOperator gd(g);
            const DenseOperator ref = gd.adjoint() * oracle::pauli_dense("XI") * gd;
            CHECK((img.to_dense() - ref).norm() < 1e-10);
        }
        for (int trial = 0; trial < 5; ++trial) {
            const Gate g = oracle::random_gate(rng);
            const PauliSum r = random_sum(4, rng, 8, true);
            const PauliSum img = conjugate_by_gate(r, g, 3, 1);
            const DenseOperator u = oracle::embed(g, 4, 3, 1);
            const DenseOperator ref = u.adjoint() * r.to_dense() * u;
            CHECK((img.to_dense() - ref).norm() < 1e-10);
            CHECK(std::abs(img.l2_norm() - r.l2_norm()) < 1e-10);
            CHECK(img.is_hermitian(1e-12));
        }
    }
}
