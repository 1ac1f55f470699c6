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

#include "qcomp/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "qcomp/linalg.hpp"

namespace qcomp {

namespace {

void check_width(int n) {
    if (n <= 0 || n > kMaxPauliQubits) {
        throw Error("Pauli register width must be in [1, 64], got " + std::to_string(n));
    }
}

std::uint64_t width_mask(int n) { return n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1); }

const Complex kPhaseTable[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

int letter_code(bool x, bool z) {
    if (!x) return z ? 3 : 0;
    return z ? 2 : 1;
}

char code_letter(int code) { return "IXYZ"[code & 3]; }

// ---------------------------------------------------------------------------
// PauliString

PauliString::PauliString(int n_qubits) : n_(n_qubits) { check_width(n_qubits); }

PauliString::PauliString(int n_qubits, PauliKey key, int phase) : n_(n_qubits), key_(key), phase_(phase & 3) {
    check_width(n_qubits);
    const auto m = width_mask(n_qubits);
    if ((key.x & ~m) || (key.z & ~m)) throw Error("Pauli key has bits beyond the register width");
}

PauliString PauliString::from_letters(std::string_view s) {
    int phase = 0;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        if (s.front() == '-') phase = 2;
        s.remove_prefix(1);
    }
    if (!s.empty() && s.front() == 'i') {
        phase = (phase + 1) & 3;
        s.remove_prefix(1);
    }
    if (s.empty()) throw Error("empty Pauli string");
    PauliKey key;
    const int n = static_cast<int>(s.size());
    check_width(n);
    for (int q = 0; q < n; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        switch (s[q]) {
            case 'I': break;
            case 'X': key.x |= bit; break;
            case 'Y': key.x |= bit; key.z |= bit; break;
            case 'Z': key.z |= bit; break;
            default: throw Error(std::string("invalid Pauli letter '") + s[q] + "'");
        }
    }
    return PauliString(n, key, phase);
}

PauliString PauliString::single(int n_qubits, int qubit, char letter) {
    return PauliString(n_qubits).with_letter(qubit, letter);
}

Complex PauliString::phase_factor() const { return kPhaseTable[phase_]; }

char PauliString::letter(int q) const {
    if (q < 0 || q >= n_) throw Error("qubit index out of range");
    return code_letter(letter_code((key_.x >> q) & 1, (key_.z >> q) & 1));
}

PauliString PauliString::with_letter(int q, char letter) const {
    if (q < 0 || q >= n_) throw Error("qubit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << q;
    PauliKey k = key_;
    k.x &= ~bit;
    k.z &= ~bit;
    switch (letter) {
        case 'I': break;
        case 'X': k.x |= bit; break;
        case 'Y': k.x |= bit; k.z |= bit; break;
        case 'Z': k.z |= bit; break;
        default: throw Error(std::string("invalid Pauli letter '") + letter + "'");
    }
    return PauliString(n_, k, phase_);
}

int PauliString::weight() const { return std::popcount(key_.x | key_.z); }

std::string PauliString::letters() const {
    std::string s(static_cast<std::size_t>(n_), 'I');
    for (int q = 0; q < n_; ++q) s[q] = letter(q);
    return s;
}

std::string PauliString::str() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    return prefix[phase_] + letters();
}

namespace {

// Accumulates coeff * P into m; dense index bit (n-1-q) belongs to qubit q.
void accumulate_dense(DenseOperator& m, int n, const PauliKey& key, Complex coeff) {
    std::size_t xmask = 0, zmask = 0;
    int n_y = 0;
    for (int q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        const bool x = (key.x >> q) & 1, z = (key.z >> q) & 1;
        if (x) xmask |= bit;
        if (z) zmask |= bit;
        if (x && z) ++n_y;
    }
    static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex base = coeff * ipow[n_y & 3];
    const std::size_t dim = dim_of(n);
    for (std::size_t col = 0; col < dim; ++col) {
        const bool odd = std::popcount(col & zmask) & 1;
        m(static_cast<Eigen::Index>(col ^ xmask), static_cast<Eigen::Index>(col)) += odd ? -base : base;
    }
}

}  // namespace

DenseOperator PauliString::to_dense() const {
    if (n_ > kMaxDenseQubits) throw Error("Pauli string too wide for a dense matrix");
    const std::size_t dim = dim_of(n_);
    DenseOperator m = DenseOperator::Zero(dim, dim);
    accumulate_dense(m, n_, key_, phase_factor());
    return m;
}

int product_phase(const PauliKey& a, const PauliKey& b) {
    const std::uint64_t ax = a.x & ~a.z, ay = a.x & a.z, az = ~a.x & a.z;
    const std::uint64_t bx = b.x & ~b.z, by = b.x & b.z, bz = ~b.x & b.z;
    const std::uint64_t pos = (ax & by) | (ay & bz) | (az & bx);
    const std::uint64_t neg = (ay & bx) | (az & by) | (ax & bz);
    return ((std::popcount(pos) - std::popcount(neg)) % 4 + 4) % 4;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits()) throw Error("Pauli string size mismatch in multiply");
    const PauliKey k{a.key().x ^ b.key().x, a.key().z ^ b.key().z};
    return PauliString(a.n_qubits(), k, a.phase() + b.phase() + product_phase(a.key(), b.key()));
}

bool anticommutes(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits()) throw Error("Pauli string size mismatch in anticommutes");
    return std::popcount((a.key().x & b.key().z) ^ (a.key().z & b.key().x)) & 1;
}

// ---------------------------------------------------------------------------
// PauliSum

PauliSum::PauliSum(int n_qubits) : n_(n_qubits) { check_width(n_qubits); }

PauliSum::PauliSum(const PauliString& p, Complex coeff) : n_(p.n_qubits()) { add(p, coeff); }

void PauliSum::add(const PauliString& p, Complex coeff) {
    if (p.n_qubits() != n_) throw Error("Pauli sum size mismatch");
    add(p.key(), coeff * p.phase_factor());
}

void PauliSum::add(PauliKey key, Complex coeff) {
    if (coeff == Complex{0.0}) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == Complex{0.0}) terms_.erase(it);
    }
}

Complex PauliSum::coefficient(const PauliString& p) const {
    return coefficient(p.key()) / p.phase_factor();
}

Complex PauliSum::coefficient(PauliKey key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Complex{0.0} : it->second;
}

void PauliSum::prune(Real tol) {
    std::erase_if(terms_, [tol](const auto& kv) {
        return tol > 0 ? std::abs(kv.second) < tol : kv.second == Complex{0.0};
    });
}

Real PauliSum::l2_norm() const {
    Real s = 0;
    for (const auto& [k, c] : terms_) s += std::norm(c);
    return std::sqrt(s);
}

bool PauliSum::is_hermitian(Real tol) const {
    return std::all_of(terms_.begin(), terms_.end(), [tol](const auto& kv) { return std::abs(kv.second.imag()) <= tol; });
}

std::vector<std::pair<PauliString, Complex>> PauliSum::sorted_terms() const {
    std::vector<std::pair<PauliKey, Complex>> kv(terms_.begin(), terms_.end());
    // Order qubit-0-leftmost strings lexicographically by their letters.
    std::vector<std::pair<PauliString, Complex>> out;
    out.reserve(kv.size());
    for (const auto& [k, c] : kv) out.emplace_back(PauliString(n_, k), c);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first.letters() < b.first.letters(); });
    return out;
}

namespace {

std::string fmt17(Real v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string PauliSum::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [p, c] : sorted_terms()) {
        std::string coeff;
        bool negative = false;
        if (c.imag() == 0.0) {
            negative = std::signbit(c.real());
            coeff = fmt17(std::abs(c.real()));
        } else if (c.real() == 0.0) {
            negative = std::signbit(c.imag());
            coeff = fmt17(std::abs(c.imag())) + "i";
        } else {
            const Real im = c.imag();
            coeff = "(" + fmt17(c.real()) + (std::signbit(im) ? "-" : "+") + fmt17(std::abs(im)) + "i)";
        }
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        out += coeff + "*" + p.letters();
        first = false;
    }
    return out;
}

namespace {

class SumParser {
public:
    explicit SumParser(std::string_view s) : s_(s) {}

    PauliSum parse() {
        std::vector<std::pair<std::string, Complex>> terms;
        skip_ws();
        if (match_literal("0") && at_end()) return PauliSum(1);
        pos_ = 0;
        bool first = true;
        while (true) {
            skip_ws();
            if (at_end()) break;
            Real sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1.0 : 1.0;
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            skip_ws();
            Complex coeff = parse_coefficient() * sign;
            skip_ws();
            std::string letters;
            while (!at_end() && std::strchr("IXYZ", peek()) != nullptr) letters += get();
            if (letters.empty()) fail("expected Pauli letters");
            terms.emplace_back(std::move(letters), coeff);
            first = false;
        }
        if (terms.empty()) fail("empty Pauli sum");
        const int n = static_cast<int>(terms.front().first.size());
        PauliSum sum(n);
        for (const auto& [letters, c] : terms) {
            if (static_cast<int>(letters.size()) != n) fail("inconsistent qubit counts across terms");
            sum.add(PauliString::from_letters(letters), c);
        }
        return sum;
    }

private:
    Complex parse_coefficient() {
        if (at_end()) fail("unexpected end of input");
        Complex c{1.0};
        bool had = false;
        if (peek() == '(') {
            get();
            const Real re = number();
            skip_ws();
            if (peek() != '+' && peek() != '-') fail("expected sign of imaginary part");
            const Real sgn = get() == '-' ? -1.0 : 1.0;
            skip_ws();
            const Real im = number();
            expect('i');
            expect(')');
            c = Complex{re, sgn * im};
            had = true;
        } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
            const Real v = number();
            if (!at_end() && peek() == 'i') {
                get();
                c = Complex{0.0, v};
            } else {
                c = Complex{v, 0.0};
            }
            had = true;
        } else if (peek() == 'i') {
            get();
            c = kI;
            had = true;
        }
        skip_ws();
        if (had && !at_end() && peek() == '*') {
            get();
        } else if (had) {
            fail("expected '*' after coefficient");
        }
        return c;
    }

    Real number() {
        const std::string rest(s_.substr(pos_));
        char* end = nullptr;
        const Real v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) fail("expected a number");
        pos_ += static_cast<std::size_t>(end - rest.c_str());
        return v;
    }

    bool match_literal(std::string_view lit) {
        if (s_.substr(pos_, lit.size()) == lit) {
            pos_ += lit.size();
            skip_ws();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (at_end() || get() != c) fail(std::string("expected '") + c + "'");
    }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    char get() { return s_[pos_++]; }
    [[noreturn]] void fail(const std::string& what) const {
        throw Error("Pauli sum parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

PauliSum PauliSum::parse(std::string_view text) { return SumParser(text).parse(); }

DenseOperator PauliSum::to_dense() const {
    if (n_ > kMaxDenseQubits) throw Error("Pauli sum too wide for a dense matrix");
    const std::size_t dim = dim_of(n_);
    DenseOperator m = DenseOperator::Zero(dim, dim);
    for (const auto& [k, c] : terms_) accumulate_dense(m, n_, k, c);
    return m;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
    if (n_ == 0) n_ = other.n_;
    if (other.n_ != n_) throw Error("Pauli sum size mismatch");
    for (const auto& [k, c] : other.terms_) add(k, c);
    return *this;
}

PauliSum& PauliSum::operator*=(Complex s) {
    if (s == Complex{0.0}) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

// ---------------------------------------------------------------------------
// Conjugation

ConjugationTable::ConjugationTable(const Gate& gate) {
    std::array<Gate, 16> basis;
    for (int p = 0; p < 16; ++p) basis[p] = kron(pauli_matrix(code_letter(p >> 2)), pauli_matrix(code_letter(p & 3)));
    for (int p = 0; p < 16; ++p) {
        const Gate conj = gate.adjoint() * basis[p] * gate;
        for (int q = 0; q < 16; ++q) {
            const Complex c = (basis[q] * conj).trace() / 4.0;
            table_[p][q] = c;
            if (std::abs(c) > 1e-15) rows_[p].emplace_back(q, c);
        }
    }
}

PauliSum conjugate_by_gate(const PauliSum& sum, const Gate& gate, int qi, int qj, Real dust) {
    if (!is_unitary(gate, 1e-12)) throw Error("conjugate_by_gate: gate is not unitary within 1e-12");
    return conjugate_by_table(sum, ConjugationTable(gate), qi, qj, dust);
}

PauliSum conjugate_by_table(const PauliSum& sum, const ConjugationTable& table, int qi, int qj, Real dust) {
    const int n = sum.n_qubits();
    if (qi == qj || qi < 0 || qj < 0 || qi >= n || qj >= n) throw Error("conjugate_by_gate: invalid qubit pair");
    const std::uint64_t bi = std::uint64_t{1} << qi, bj = std::uint64_t{1} << qj;
    const std::uint64_t clear = ~(bi | bj);
    PauliSum out(n);
    for (const auto& [key, c] : sum.terms()) {
        const int p = 4 * letter_code(key.x & bi, key.z & bi) + letter_code(key.x & bj, key.z & bj);
        if (p == 0) {
            out.add(key, c);
            continue;
        }
        for (const auto& [q, t] : table.row(p)) {
            const int ci = q >> 2, cj = q & 3;
            PauliKey k{key.x & clear, key.z & clear};
            if (ci == 1 || ci == 2) k.x |= bi;
            if (ci == 2 || ci == 3) k.z |= bi;
            if (cj == 1 || cj == 2) k.x |= bj;
            if (cj == 2 || cj == 3) k.z |= bj;
            out.add(k, c * t);
        }
    }
    out.prune(dust);
    return out;
}

}  // namespace qcomp
