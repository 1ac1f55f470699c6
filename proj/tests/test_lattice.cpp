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


#include <sstream>

#include "doctest.h"
#include "qcomp/lattice.hpp"

using namespace qcomp;

TEST_SUITE("lattice") {
    TEST_CASE("chain(4) brickwall") {
        const Lattice lat = builtin_lattice("chain(4)");
        REQUIRE(lat.class_count() == 2);
        CHECK(lat.class_at(0).bonds() == std::vector<Bond>{{0, 1}, {2, 3}});
        CHECK(lat.class_at(1).bonds() == std::vector<Bond>{{1, 2}, {3, 0}});
        CHECK(validate(lat).valid);
        CHECK(lat.physical_depth() == 2);
        CHECK(lat.class_at(0).is_perfect_matching(4));
    }

    TEST_CASE("chain(2) has a single bond") {
        const Lattice lat = chain_lattice(2);
        CHECK(lat.bond_count() == 1);
        CHECK(validate(lat).valid);
    }

    TEST_CASE("square4x4 classes") {
        const Lattice lat = builtin_lattice("square4x4");
        REQUIRE(lat.class_count() == 2);
        for (const auto& c : lat.classes()) CHECK(c.permutations.size() == 2);
        CHECK(lat.class_at(0).permutations[0].front() == Bond{0, 4});
        CHECK(lat.class_at(0).permutations[0][1] == Bond{1, 5});
        CHECK(lat.bond_count() == 32);
        CHECK(lat.regular_degree() == std::optional<int>(4));
        CHECK(validate(lat).valid);
    }

    TEST_CASE("triangular4x4 classes") {
        const Lattice lat = builtin_lattice("triangular4x4");
        CHECK(lat.class_count() == 3);
        CHECK(lat.bond_count() == 48);
        CHECK(lat.regular_degree() == std::optional<int>(6));
        CHECK(validate(lat).valid);
    }

    TEST_CASE("kagome12") {
        const Lattice lat = builtin_lattice("kagome12");
        CHECK(lat.n_sites() == 12);
        REQUIRE(lat.class_count() == 3);
        CHECK(lat.bond_count() == 24);
        for (const auto& c : lat.classes()) CHECK(c.bond_count() == 8);
        for (int d : lat.degrees()) CHECK(d == 4);
        CHECK(validate(lat).valid);
    }

    TEST_CASE("every builtin site is covered") {
        for (const char* name : {"chain(6)", "chain(8)", "square4x4", "triangular4x4", "kagome12"}) {
            const Lattice lat = builtin_lattice(name);
            for (int d : lat.degrees()) CHECK(d > 0);
        }
    }

    TEST_CASE("repeated site is a violation") {
        const Lattice lat("bad", 3, {PermutationClass{{{{0, 1}, {1, 2}}}}});
        const auto rep = validate(lat);
        CHECK_FALSE(rep.valid);
        CHECK_FALSE(rep.violations.empty());
    }

    TEST_CASE("reference bond set must be matched") {
        const Lattice lat = chain_lattice(4);
        std::vector<Bond> ref = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
        CHECK(validate(lat, &ref).valid);
        ref.pop_back();
        CHECK_FALSE(validate(lat, &ref).valid);
    }

    TEST_CASE("text round trip and parse errors") {
        for (const char* name : {"chain(6)", "square4x4", "kagome12"}) {
            const Lattice lat = builtin_lattice(name);
            std::stringstream ss;
            write_lattice(ss, lat);
            CHECK(parse_lattice(ss) == lat);
        }
        std::istringstream bad("sites 4\n0-1 2-x\n");
        CHECK_THROWS_AS(parse_lattice(bad), Error);
        CHECK_THROWS_AS(builtin_lattice("hexagon"), Error);
        CHECK_THROWS_AS(chain_lattice(5), Error);
    }
}
