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

#include "qcomp/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace qcomp {

namespace {

std::pair<int, int> unordered(const Bond& b) { return {std::min(b.a, b.b), std::max(b.a, b.b)}; }

}  // namespace

std::vector<Bond> PermutationClass::bonds() const {
    std::vector<Bond> out;
    for (const auto& p : permutations) out.insert(out.end(), p.begin(), p.end());
    return out;
}

int PermutationClass::bond_count() const {
    int n = 0;
    for (const auto& p : permutations) n += static_cast<int>(p.size());
    return n;
}

bool PermutationClass::is_perfect_matching(int n_sites) const {
    if (permutations.size() != 1) return false;
    std::vector<int> seen(static_cast<std::size_t>(n_sites), 0);
    for (const auto& b : permutations.front()) {
        if (b.a < 0 || b.b < 0 || b.a >= n_sites || b.b >= n_sites) return false;
        ++seen[b.a];
        ++seen[b.b];
    }
    return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

Lattice::Lattice(std::string name, int n_sites, std::vector<PermutationClass> classes)
    : name_(std::move(name)), n_sites_(n_sites), classes_(std::move(classes)) {
    if (n_sites <= 0) throw Error("lattice needs at least one site");
}

Lattice Lattice::from_permutation_arrays(std::string name, int n_sites,
                                         const std::vector<std::vector<std::vector<int>>>& arrays) {
    std::set<std::pair<int, int>> seen;
    std::vector<PermutationClass> classes;
    for (const auto& cls : arrays) {
        PermutationClass pc;
        for (const auto& perm : cls) {
            if (perm.size() % 2 != 0) throw Error("permutation array has odd length");
            std::vector<Bond> bonds;
            for (std::size_t j = 0; j + 1 < perm.size(); j += 2) {
                const Bond b{perm[j], perm[j + 1]};
                if (seen.insert(unordered(b)).second) bonds.push_back(b);
            }
            if (!bonds.empty()) pc.permutations.push_back(std::move(bonds));
        }
        if (!pc.permutations.empty()) classes.push_back(std::move(pc));
    }
    return Lattice(std::move(name), n_sites, std::move(classes));
}

const PermutationClass& Lattice::class_at(int i) const {
    if (i < 0 || i >= class_count()) throw Error("class index " + std::to_string(i) + " out of range");
    return classes_[static_cast<std::size_t>(i)];
}

int Lattice::physical_depth() const {
    int d = 0;
    for (const auto& c : classes_) d += static_cast<int>(c.permutations.size());
    return d;
}

std::vector<Bond> Lattice::all_bonds() const {
    std::vector<Bond> out;
    for (const auto& c : classes_) {
        auto b = c.bonds();
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

int Lattice::bond_count() const {
    int n = 0;
    for (const auto& c : classes_) n += c.bond_count();
    return n;
}

std::vector<int> Lattice::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n_sites_), 0);
    for (const auto& b : all_bonds()) {
        if (b.a >= 0 && b.a < n_sites_) ++deg[b.a];
        if (b.b >= 0 && b.b < n_sites_) ++deg[b.b];
    }
    return deg;
}

std::optional<int> Lattice::regular_degree() const {
    const auto deg = degrees();
    if (deg.empty() || std::any_of(deg.begin(), deg.end(), [&](int d) { return d != deg.front(); })) return std::nullopt;
    return deg.front();
}

std::optional<int> Lattice::perfect_matching_class() const {
    for (int i = 0; i < class_count(); ++i)
        if (classes_[i].is_perfect_matching(n_sites_)) return i;
    return std::nullopt;
}

Lattice chain_lattice(int n) {
    if (n < 2 || n % 2 != 0) throw Error("chain lattice needs an even number of sites >= 2, got " + std::to_string(n));
    std::vector<int> even, odd;
    for (int i = 0; i < n; ++i) even.push_back(i);
    for (int i = 0; i < n; ++i) odd.push_back((i + 1) % n);
    return Lattice::from_permutation_arrays("chain(" + std::to_string(n) + ")", n, {{even}, {odd}});
}

namespace {

Lattice square4x4() {
    return Lattice::from_permutation_arrays(
        "square4x4", 16,
        {{{0, 4, 1, 5, 2, 6, 3, 7, 8, 12, 9, 13, 10, 14, 11, 15}, {4, 8, 5, 9, 6, 10, 7, 11, 12, 0, 13, 1, 14, 2, 15, 3}},
         {{0, 1, 4, 5, 8, 9, 12, 13, 2, 3, 6, 7, 10, 11, 14, 15}, {1, 2, 5, 6, 9, 10, 13, 14, 3, 0, 7, 4, 11, 8, 15, 12}}});
}

Lattice triangular4x4() {
    return Lattice::from_permutation_arrays(
        "triangular4x4", 16,
        {{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}, {1, 2, 3, 0, 5, 6, 7, 4, 9, 10, 11, 8, 13, 14, 15, 12}},
         {{0, 5, 10, 15, 3, 4, 9, 14, 2, 7, 8, 13, 1, 6, 11, 12}, {5, 10, 15, 0, 4, 9, 14, 3, 7, 8, 13, 2, 6, 11, 12, 1}},
         {{0, 4, 8, 12, 1, 5, 9, 13, 2, 6, 10, 14, 3, 7, 11, 15}, {4, 8, 12, 0, 5, 9, 13, 1, 6, 10, 14, 2, 7, 11, 15, 3}}});
}

Lattice kagome12() {
    return Lattice::from_permutation_arrays("kagome12", 12,
                                            {{{0, 4, 6, 10, 2, 5, 8, 11}, {4, 6, 10, 0, 5, 8, 11, 2}},
                                             {{0, 1, 2, 3, 6, 7, 8, 9}, {1, 2, 3, 0, 7, 8, 9, 6}},
                                             {{1, 4, 9, 11, 3, 5, 7, 10}, {4, 9, 11, 1, 5, 7, 10, 3}}});
}

}  // namespace

Lattice builtin_lattice(std::string_view name) {
    if (name == "square4x4") return square4x4();
    if (name == "triangular4x4") return triangular4x4();
    if (name == "kagome12") return kagome12();
    if (name.starts_with("chain")) {
        std::string_view rest = name.substr(5);
        if (rest.starts_with("(") && rest.ends_with(")")) rest = rest.substr(1, rest.size() - 2);
        if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            return chain_lattice(std::stoi(std::string(rest)));
        }
    }
    throw Error("unknown lattice '" + std::string(name) + "'");
}

LatticeReport validate(const Lattice& lat, const std::vector<Bond>* reference) {
    LatticeReport rep;
    auto violation = [&](std::string msg) {
        rep.valid = false;
        rep.violations.push_back(std::move(msg));
    };
    const int n = lat.n_sites();
    std::set<std::pair<int, int>> seen;
    for (int c = 0; c < lat.class_count(); ++c) {
        const auto& cls = lat.classes()[c];
        if (cls.permutations.empty()) violation("class " + std::to_string(c) + " is empty");
        for (std::size_t p = 0; p < cls.permutations.size(); ++p) {
            std::vector<int> used(static_cast<std::size_t>(std::max(n, 0)), 0);
            for (const auto& b : cls.permutations[p]) {
                const std::string tag = std::to_string(b.a) + "-" + std::to_string(b.b);
                if (b.a == b.b) violation("bond " + tag + " connects a site to itself");
                if (b.a < 0 || b.b < 0 || b.a >= n || b.b >= n) {
                    violation("bond " + tag + " has a site outside [0, " + std::to_string(n) + ")");
                    continue;
                }
                if (!seen.insert(unordered(b)).second) violation("bond " + tag + " appears more than once");
                for (int s : {b.a, b.b}) {
                    if (++used[s] == 2) {
                        violation("class " + std::to_string(c) + " permutation " + std::to_string(p) + ": site " +
                                  std::to_string(s) + " appears in two bonds");
                    }
                }
            }
        }
    }
    const auto deg = lat.degrees();
    for (int s = 0; s < n; ++s)
        if (deg[s] == 0) violation("site " + std::to_string(s) + " has no bond");
    if (reference) {
        std::set<std::pair<int, int>> ref;
        for (const auto& b : *reference) ref.insert(unordered(b));
        if (ref != seen) violation("bond union differs from the reference nearest-neighbour set");
    }
    return rep;
}

Lattice parse_lattice(std::istream& in, std::string name) {
    int n_sites = -1;
    std::vector<PermutationClass> classes;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "sites") {
            if (!(ls >> n_sites) || n_sites <= 0) throw Error("lattice line " + std::to_string(lineno) + ": bad site count");
            continue;
        }
        if (tok == "name") {
            ls >> name;
            continue;
        }
        PermutationClass pc;
        pc.permutations.emplace_back();
        do {
            if (tok == "|") {
                pc.permutations.emplace_back();
                continue;
            }
            const auto dash = tok.find('-');
            if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size()) {
                throw Error("lattice line " + std::to_string(lineno) + ": expected 'a-b' bond token, got '" + tok + "'");
            }
            try {
                std::size_t used_a = 0, used_b = 0;
                const std::string sa = tok.substr(0, dash), sb = tok.substr(dash + 1);
                const int a = std::stoi(sa, &used_a), b = std::stoi(sb, &used_b);
                if (used_a != sa.size() || used_b != sb.size()) throw std::invalid_argument("trailing");
                pc.permutations.back().push_back({a, b});
            } catch (const std::logic_error&) {
                throw Error("lattice line " + std::to_string(lineno) + ": bad bond token '" + tok + "'");
            }
        } while (ls >> tok);
        std::erase_if(pc.permutations, [](const auto& p) { return p.empty(); });
        classes.push_back(std::move(pc));
    }
    if (n_sites <= 0) throw Error("lattice file lacks a 'sites N' line");
    return Lattice(std::move(name), n_sites, std::move(classes));
}

Lattice load_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open lattice file '" + path + "'");
    return parse_lattice(in, path);
}

void write_lattice(std::ostream& out, const Lattice& lat) {
    out << "name " << lat.name() << "\n";
    out << "sites " << lat.n_sites() << "\n";
    for (const auto& c : lat.classes()) {
        bool first_perm = true;
        for (const auto& p : c.permutations) {
            if (!first_perm) out << " |";
            bool first = first_perm;
            for (const auto& b : p) {
                out << (first ? "" : " ") << b.a << "-" << b.b;
                first = false;
            }
            first_perm = false;
        }
        out << "\n";
    }
}

Lattice resolve_lattice(std::string_view spec) {
    if (spec.starts_with("file:")) return load_lattice_file(std::string(spec.substr(5)));
    return builtin_lattice(spec);
}

}  // namespace qcomp
