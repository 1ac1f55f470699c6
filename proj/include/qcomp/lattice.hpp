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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcomp/types.hpp"

namespace qcomp {

/// Oriented nearest-neighbour bond; a two-qubit gate acts with `a` on its
/// first tensor factor.
struct Bond {
    int a = 0;
    int b = 0;
    friend bool operator==(const Bond&, const Bond&) = default;
};

/// One inequivalent class of bonds sharing a single translationally
/// invariant gate. A class is an ordered list of permutations; each
/// permutation is a set of site-disjoint bonds and executes as one physical
/// sub-layer. One-dimensional classes hold a single permutation.
struct PermutationClass {
    std::vector<std::vector<Bond>> permutations;

    std::vector<Bond> bonds() const;
    int bond_count() const;
    /// True iff the class is one permutation covering every site exactly once.
    bool is_perfect_matching(int n_sites) const;
    friend bool operator==(const PermutationClass&, const PermutationClass&) = default;
};

class Lattice {
public:
    Lattice() = default;
    Lattice(std::string name, int n_sites, std::vector<PermutationClass> classes);

    /// Builds a lattice from flat permutation arrays where consecutive entries
    /// (a_{2j}, a_{2j+1}) are bonds. Arrays of one class are merged; a bond
    /// already seen (in either orientation) is dropped; empty classes vanish.
    static Lattice from_permutation_arrays(std::string name, int n_sites,
                                           const std::vector<std::vector<std::vector<int>>>& classes);

    const std::string& name() const { return name_; }
    int n_sites() const { return n_sites_; }
    const std::vector<PermutationClass>& classes() const { return classes_; }
    const PermutationClass& class_at(int i) const;

    /// Number of inequivalent classes (the shared-gate count of one block).
    int class_count() const { return static_cast<int>(classes_.size()); }
    /// Number of site-disjoint physical layers of one block.
    int physical_depth() const;
    std::vector<Bond> all_bonds() const;
    int bond_count() const;
    std::vector<int> degrees() const;
    /// Common site degree, or nullopt when sites differ.
    std::optional<int> regular_degree() const;
    /// First class that is a perfect matching, if any.
    std::optional<int> perfect_matching_class() const;

    friend bool operator==(const Lattice&, const Lattice&) = default;

private:
    std::string name_;
    int n_sites_ = 0;
    std::vector<PermutationClass> classes_;
};

/// chain(N): periodic 1D ring with even N, classes {(0,1),(2,3),...} and
/// {(1,2),...,(N-1,0)}. chain(2) has a single bond.
Lattice chain_lattice(int n_sites);

/// Accepts "chain(N)", "chainN", "square4x4", "triangular4x4", "kagome12".
Lattice builtin_lattice(std::string_view name);

struct LatticeReport {
    bool valid = true;
    std::vector<std::string> violations;
};

/// Checks bond ranges, bond uniqueness across classes, site-disjointness of
/// every permutation and site coverage. When `reference_bonds` is given the
/// union of all classes must equal it (orientation ignored).
LatticeReport validate(const Lattice& lattice, const std::vector<Bond>* reference_bonds = nullptr);

/// Text format: "sites N", optional "name X", then one class per line of
/// "a-b" tokens; '|' separates permutations inside a class; '#' comments.
Lattice parse_lattice(std::istream& in, std::string default_name = "custom");
Lattice load_lattice_file(const std::string& path);
void write_lattice(std::ostream& out, const Lattice& lattice);

/// Builtin name or "file:<path>".
Lattice resolve_lattice(std::string_view spec);

}  // namespace qcomp
