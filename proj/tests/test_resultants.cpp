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

#include <filesystem>

#include "qdyn/errors.hpp"
#include "qdyn/factorize.hpp"
#include "qdyn/resultants.hpp"
#include "golden.hpp"

using namespace qdyn;

TEST_CASE("mobius and divisors") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(2) == -1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(6) == 1);
    CHECK(mobius(30) == -1);
    CHECK(divisors(12) == std::vector<int>({1, 2, 3, 4, 6, 12}));
}

TEST_CASE("level 1 is the curve itself") {
    ResultantPipeline pipe;
    CHECK(pipe.iterated_resultant(1) == curve_f());
    CHECK(pipe.iterated_resultant(1, true) == curve_f1());
    CHECK(pipe.Rn(1) == curve_f().diagonal());
}

TEST_CASE("R1 and Rtilde1 match the level-1 golden displays") {
    ResultantPipeline pipe;
    IntPoly r1_expect = IntPoly({0, 1}) * IntPoly({1, 1}) * IntPoly({2, -1, 1}) *
                        IntPoly({4, -2, 5, -4, 1});
    CHECK(pipe.Rn(1) == r1_expect);
    CHECK(pipe.Pn(1) == r1_expect);
    IntPoly rt1_expect = IntPoly({0, 1}) * IntPoly({1, 2}) * IntPoly({1, -1, 2}) *
                         IntPoly({1, -1, 5, -8, 4});
    CHECK(pipe.Rn_tilde(1) == rt1_expect);
    CHECK(pipe.Pn_tilde(1) == rt1_expect);
}

TEST_CASE("level 2: degrees, golden factors, scaling identity") {
    ResultantPipeline pipe;
    const BiPoly& r2 = pipe.iterated_resultant(2);
    CHECK(r2.deg_u() == 16);
    CHECK(r2.deg_v() == 16);
    IntPoly R2 = pipe.Rn(2);
    CHECK(R2.degree() == 32);
    CHECK(R2.lc() == 1);
    IntPoly P2 = pipe.Pn(2);
    CHECK(P2.degree() == 24);
    auto golden = qdyn_golden::level_polynomials();
    CHECK(P2 == golden[63] * golden[55] * golden[39]);
    // R2(2x) == 2^16 Rtilde2(x)
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, 16);
    CHECK(R2.scale_arg(2) == pipe.Rn_tilde(2) * scale);
    // Mobius round trip
    CHECK(pipe.Pn(1) * pipe.Pn(2) == R2);
    CHECK(pipe.Pn_tilde(1) * pipe.Pn_tilde(2) == pipe.Rn_tilde(2));
}

TEST_CASE("involution closure of the P2 factor set") {
    ResultantPipeline pipe;
    auto factors = factor_squarefree_over_Z(pipe.Pn(2));
    REQUIRE(factors.size() == 3);
    for (const auto& g : factors) {
        IntPoly tw = mobius_twist(g);
        bool found = false;
        for (const auto& h : factors)
            if (h == tw) found = true;
        CHECK(found);
    }
}

TEST_CASE("congruence suite passes through level 2") {
    ResultantPipeline pipe;
    auto rep = pipe.verify_congruences(2);
    for (const auto& item : rep.items) {
        INFO(item.identity << " at n = " << item.n << " " << item.detail);
        CHECK(item.ok);
    }
    CHECK(rep.all_ok());
}

TEST_CASE("Rtilde_n mod 2 is squarefree so P_n is squarefree") {
    ResultantPipeline pipe;
    for (int n = 1; n <= 2; ++n) {
        CHECK(is_squarefree(pipe.Pn(n)));
        CHECK(is_squarefree(pipe.Pn_tilde(n)));
    }
}

TEST_CASE("capacity guard") {
    ResultantPipeline pipe("", 1, 2);
    CHECK_THROWS_AS(pipe.Rn(3), capacity_error);
    CHECK_THROWS_AS(pipe.Rn(0), domain_error);
}

TEST_CASE("disk cache round trip and verification") {
    std::string dir = "cache_test_tmp";
    std::filesystem::remove_all(dir);
    {
        ResultantPipeline pipe(dir, 1);
        pipe.Rn(2);
        auto entries = pipe.cache_list();
        CHECK(entries.size() >= 2);  // levels 1 and 2
        auto verified = pipe.cache_verify();
        for (const auto& e : verified) {
            INFO(e.file << ": " << e.detail);
            CHECK(e.valid);
        }
    }
    {
        // a fresh pipeline picks the entries up from disk
        ResultantPipeline pipe(dir, 1);
        CHECK(pipe.Rn(2).degree() == 32);
        CHECK(pipe.cache_clear() >= 2);
        CHECK(pipe.cache_list().empty());
    }
    std::filesystem::remove_all(dir);
}
