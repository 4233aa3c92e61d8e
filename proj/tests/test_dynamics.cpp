/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdyn/dynamics.hpp"
#include "qdyn/errors.hpp"
#include "qdyn/factorize.hpp"
#include "qdyn/resultants.hpp"
#include "qdyn/tmap.hpp"

using namespace qdyn;

TEST_CASE("residue counts: 3, 12, 60 points in 3, 6, 20 cycles") {
    auto o1 = residue_periodic_orbits(1);
    CHECK(o1.size() == 3);
    CHECK(residue_periodic_points(1).size() == 3);
    auto o2 = residue_periodic_orbits(2);
    CHECK(o2.size() == 6);
    CHECK(residue_periodic_points(2).size() == 12);
    auto o3 = residue_periodic_orbits(3);
    CHECK(o3.size() == 20);
    CHECK(residue_periodic_points(3).size() == 60);
}

TEST_CASE("residue cycles are frobenius-square cycles of exact length") {
    for (int n : {1, 2, 3}) {
        for (const auto& orbit : residue_periodic_orbits(n)) {
            REQUIRE(static_cast<int>(orbit.size()) == n);
            for (int k = 0; k < n; ++k) {
                CHECK(orbit[(k + 1) % n] == orbit[k].pow(4));
                CHECK_FALSE(orbit[k].is_zero());
                // minimality at the residue level for proper divisors
                for (int m = 1; m < n; ++m)
                    if (n % m == 0) {
                        ResidueElement it = orbit[k];
                        for (int s = 0; s < m; ++s) it = it.pow(4);
                        CHECK(it != orbit[k]);
                    }
            }
        }
    }
}

TEST_CASE("the three fixed points land on the level-1 factors") {
    const int N = 64;
    ResultantPipeline pipe;
    auto factors = factor_squarefree_over_Z(pipe.Pn_tilde(1));
    // factors: x, 2x+1, 2x^2-x+1, 4x^4-8x^3+5x^2-x+1 (sorted by degree)
    REQUIRE(factors.size() == 4);
    auto orbits = assemble_orbits(1, N);
    REQUIRE(orbits.size() == 3);
    int count_quadratic = 0, count_quartic = 0;
    for (auto& orbit : orbits) {
        CHECK(orbit.lifted_cycle.size() == 1);
        const auto& z = orbit.lifted_cycle[0];
        CHECK(z.is_unit());
        // fixed point of the normalized map
        UnramifiedElement t = eval_Ttilde(z);
        CHECK(t.congruent(z.with_precision(t.precision()),
                          std::max(1, t.precision() - 8)));
        int fi = match_orbit_to_factor(orbit, factors);
        if (factors[fi] == IntPoly({1, -1, 2})) ++count_quadratic;
        if (factors[fi] == IntPoly({1, -1, 5, -8, 4})) ++count_quartic;
    }
    CHECK(count_quadratic == 1);  // residue 1
    CHECK(count_quartic == 2);    // the two conjugate residues
}

TEST_CASE("factor evaluation vanishes to N - 8 bits at the fixed points") {
    const int N = 64;
    ResultantPipeline pipe;
    auto factors = factor_squarefree_over_Z(pipe.Pn_tilde(1));
    auto orbits = assemble_orbits(1, N);
    for (auto& orbit : orbits) {
        int fi = match_orbit_to_factor(orbit, factors);
        for (const auto& z : orbit.lifted_cycle) {
            UnramifiedElement v = eval_poly(factors[fi], z);
            Val2 val = v.val2();
            CHECK((!val.finite || val.v >= N - 8));
        }
    }
}

TEST_CASE("level-2 orbits: twelve points, six cycles, factor census") {
    const int N = 64;
    ResultantPipeline pipe;
    auto factors = factor_squarefree_over_Z(pipe.Pn_tilde(2));
    REQUIRE(factors.size() == 3);  // three rescaled degree-8 factors
    auto orbits = assemble_orbits(2, N);
    REQUIRE(orbits.size() == 6);
    std::vector<int> hits(factors.size(), 0);
    for (auto& orbit : orbits) {
        CHECK(orbit.lifted_cycle.size() == 2);
        int fi = match_orbit_to_factor(orbit, factors);
        hits[fi] += static_cast<int>(orbit.lifted_cycle.size());
    }
    // each rescaled factor carries its 4 unit roots
    for (int h : hits) CHECK(h == 4);
}

TEST_CASE("newton lift on the matched factor agrees with the iteration") {
    const int N = 64;
    ResultantPipeline pipe;
    auto factors = factor_squarefree_over_Z(pipe.Pn_tilde(2));
    auto orbits = assemble_orbits(2, N);
    for (auto& orbit : orbits) {
        int fi = match_orbit_to_factor(orbit, factors);
        const auto& z = orbit.lifted_cycle[0];
        UnramifiedElement start = teichmuller_lift(z.reduce_mod2(), N);
        UnramifiedElement root = newton_root(factors[fi], start);
        int k = std::max(1, std::min(root.precision(), z.precision()) - 8);
        CHECK(root.congruent(z, k));
    }
}

TEST_CASE("doubled points are valuation-1 roots of the plain family") {
    const int N = 64;
    ResultantPipeline pipe;
    IntPoly r2 = pipe.Rn(2);
    auto orbits = assemble_orbits(2, N);
    for (auto& orbit : orbits)
        for (const auto& z : orbit.lifted_cycle) {
            UnramifiedElement doubled = z.shift_left(1);
            CHECK(doubled.val2().v == 1);
            UnramifiedElement v = eval_poly(r2, doubled);
            Val2 val = v.val2();
            CHECK((!val.finite || val.v >= v.precision() - 8));
        }
}

TEST_CASE("rerunning at higher precision agrees modulo the guarantee") {
    auto lo = assemble_orbits(2, 64);
    auto hi = assemble_orbits(2, 80);
    REQUIRE(lo.size() == hi.size());
    for (size_t i = 0; i < lo.size(); ++i) {
        REQUIRE(lo[i].residue_cycle[0] == hi[i].residue_cycle[0]);
        for (size_t k = 0; k < lo[i].lifted_cycle.size(); ++k) {
            const auto& a = lo[i].lifted_cycle[k];
            // compare across different working precisions coefficientwise
            const auto& b = hi[i].lifted_cycle[k];
            int bits = std::min(a.precision(), b.precision());
            for (int c = 0; c < 4; ++c) {
                mpz_class d = a.coeffs()[c] - b.coeffs()[c];
                mpz_fdiv_r_2exp(d.get_mpz_t(), d.get_mpz_t(), bits);
                CHECK(d == 0);
            }
        }
    }
}

TEST_CASE("zero residue is rejected and exceptional points are recorded") {
    CHECK_THROWS_AS(
        lift_periodic_point(ResidueElement(Extension::of_degree(2), 0), 1, 64),
        domain_error);
    auto ex = exceptional_fixed_points();
    REQUIRE(ex.size() == 2);
    CHECK(ex[0].t_coordinate == 0);
    CHECK(ex[1].t_coordinate == -1);
}
