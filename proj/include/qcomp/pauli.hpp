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

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qcomp/types.hpp"

namespace qcomp {

/// Maximum register width; letters are packed in one 64-bit X mask and one
/// 64-bit Z mask.
inline constexpr int kMaxPauliQubits = 64;

/// Letter bits of a Pauli string without phase. Bit q of `x`/`z` belongs to
/// qubit q. (1,0) = X, (1,1) = Y, (0,1) = Z.
struct PauliKey {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    friend bool operator==(const PauliKey&, const PauliKey&) = default;
    friend auto operator<=>(const PauliKey&, const PauliKey&) = default;
};

struct PauliKeyHash {
    std::size_t operator()(const PauliKey& k) const noexcept {
        // splitmix-style mixing of both words
        std::uint64_t h = k.x * 0x9E3779B97F4A7C15ULL ^ (k.z + 0xBF58476D1CE4E5B9ULL + (k.x << 6) + (k.x >> 2));
        h ^= h >> 31;
        h *= 0x94D049BB133111EBULL;
        h ^= h >> 29;
        return static_cast<std::size_t>(h);
    }
};

/// i^phase * P_0 (x) P_1 (x) ... (x) P_{n-1}, with Hermitian letters.
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(int n_qubits);
    PauliString(int n_qubits, PauliKey key, int phase = 0);

    /// Parses e.g. "XIZY" (qubit 0 leftmost); optional leading sign or 'i'.
    static PauliString from_letters(std::string_view letters);
    /// Single-qubit Pauli `letter` on `qubit`, identity elsewhere.
    static PauliString single(int n_qubits, int qubit, char letter);

    int n_qubits() const { return n_; }
    const PauliKey& key() const { return key_; }
    /// Exponent of i in {0,1,2,3}.
    int phase() const { return phase_; }
    Complex phase_factor() const;

    char letter(int qubit) const;
    PauliString with_letter(int qubit, char letter) const;
    int weight() const;
    /// Same letters, phase +1.
    PauliString normalized() const { return PauliString(n_, key_, 0); }

    std::string letters() const;
    std::string str() const;

    DenseOperator to_dense() const;

    friend bool operator==(const PauliString&, const PauliString&) = default;

private:
    int n_ = 0;
    PauliKey key_{};
    int phase_ = 0;
};

PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }
bool anticommutes(const PauliString& a, const PauliString& b);
inline bool commutes(const PauliString& a, const PauliString& b) { return !anticommutes(a, b); }

/// Exponent of i picked up when multiplying the letters of a by those of b.
int product_phase(const PauliKey& a, const PauliKey& b);

/// Sparse sum of phase-normalized Pauli strings with complex coefficients.
class PauliSum {
public:
    using Terms = std::unordered_map<PauliKey, Complex, PauliKeyHash>;

    PauliSum() = default;
    explicit PauliSum(int n_qubits);
    PauliSum(const PauliString& p, Complex coeff = 1.0);

    /// Parses "1.5*XXIZ - 0.5i*YIIZ + (1+2i)*ZZII".
    static PauliSum parse(std::string_view text);

    int n_qubits() const { return n_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    /// Adds coeff * p; the phase of p is folded into the coefficient.
    void add(const PauliString& p, Complex coeff = 1.0);
    void add(PauliKey key, Complex coeff);
    Complex coefficient(const PauliString& p) const;
    Complex coefficient(PauliKey key) const;

    /// Drops every term with |coeff| < tol (tol = 0 drops exact zeros only).
    void prune(Real tol = 0.0);

    Real l2_norm() const;
    bool is_hermitian(Real tol = 0.0) const;

    /// Terms sorted by key, for deterministic iteration.
    std::vector<std::pair<PauliString, Complex>> sorted_terms() const;

    /// 17-significant-digit text form; parse(str()) reproduces the sum exactly.
    std::string str() const;

    DenseOperator to_dense() const;

    PauliSum& operator+=(const PauliSum& other);
    PauliSum& operator*=(Complex s);
    friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
    friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
    friend bool operator==(const PauliSum& a, const PauliSum& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

private:
    int n_ = 0;
    Terms terms_;
};

/// Two-qubit letter code: I=0, X=1, Y=2, Z=3. Local index = 4*code(q_i) + code(q_j).
int letter_code(bool x, bool z);
char code_letter(int code);

/// Conjugation table of a 4x4 gate: row p lists the Pauli expansion of
/// U^dagger P U, entry [p][q] = Tr(Q U^dagger P U) / 4.
class ConjugationTable {
public:
    explicit ConjugationTable(const Gate& gate);
    const std::array<std::array<Complex, 16>, 16>& entries() const { return table_; }
    /// Nonzero outputs per input row (|c| > 1e-15).
    const std::vector<std::pair<int, Complex>>& row(int p) const { return rows_[p]; }

private:
    std::array<std::array<Complex, 16>, 16> table_{};
    std::array<std::vector<std::pair<int, Complex>>, 16> rows_;
};

/// Default dust threshold applied after each conjugation.
inline constexpr Real kConjugationDust = 1e-14;

/// U^dagger (sum) U for a two-qubit unitary acting on (qubit_i, qubit_j), with
/// qubit_i on the gate's first tensor factor.
PauliSum conjugate_by_gate(const PauliSum& sum, const Gate& gate, int qubit_i, int qubit_j,
                           Real dust = kConjugationDust);
PauliSum conjugate_by_table(const PauliSum& sum, const ConjugationTable& table, int qubit_i, int qubit_j,
                            Real dust = kConjugationDust);

}  // namespace qcomp
