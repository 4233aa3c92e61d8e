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

#include <random>

#include "qdyn/errors.hpp"
#include "qdyn/modpoly.hpp"

using namespace qdyn;

TEST_CASE("x^2 + 1 factors mod 5 and stays irreducible mod 7") {
    auto r5 = factor_mod_q(IntPoly({1, 0, 1}), 5);
    REQUIRE(r5.factors.size() == 2);
    CHECK(r5.lead == 1);
    CHECK(r5.factors[0].first == IntPoly({2, 1}));
    CHECK(r5.factors[0].second == 1);
    CHECK(r5.factors[1].first == IntPoly({3, 1}));

    auto r7 = factor_mod_q(IntPoly({1, 0, 1}), 7);
    REQUIRE(r7.factors.size() == 1);
    CHECK(r7.factors[0].first == IntPoly({1, 0, 1}));
}

TEST_CASE("q dividing the leading coefficient is a domain error") {
    // Rtilde1 has leading coefficient 4
    IntPoly rt1 = IntPoly({0, 1}) * IntPoly({1, 2}) * IntPoly({1, -1, 2}) *
                  IntPoly({1, -1, 5, -8, 4});
    CHECK_THROWS_AS(factor_mod_q(rt1, 2), domain_error);
    // the monic part of Rtilde1 mod 2 is x^4 + x, factored after the
    // caller reduces explicitly
    IntPoly monic_part = rt1.reduced_mod(2);
    CHECK(monic_part == IntPoly({0, 1, 0, 0, 1}));
    auto r2 = factor_mod_q(monic_part, 2);
    REQUIRE(r2.factors.size() == 3);
    CHECK(r2.factors[0].first == IntPoly({0, 1}));       // x
    CHECK(r2.factors[1].first == IntPoly({1, 1}));       // x + 1
    CHECK(r2.factors[2].first == IntPoly({1, 1, 1}));    // x^2 + x + 1
}

TEST_CASE("multiplicities through squarefree decomposition") {
    IntPoly p = IntPoly({1, 1}) * IntPoly({1, 1}) * IntPoly({2, 1});
    auto r = factor_mod_q(p, 5);
    REQUIRE(r.factors.size() == 2);
    int total = 0;
    for (auto& [g, m] : r.factors) total += g.degree() * m;
    CHECK(total == 3);
    for (auto& [g, m] : r.factors) {
        if (g == IntPoly({1, 1})) CHECK(m == 2);
        if (g == IntPoly({2, 1})) CHECK(m == 1);
    }
}

TEST_CASE("char-2 equal degree splitting") {
    // x^4 + x + 1 is irreducible mod 2; (x^2+x+1)^2 = x^4+x^2+1
    auto irr = factor_mod_q(IntPoly({1, 1, 0, 0, 1}), 2);
    REQUIRE(irr.factors.size() == 1);
    CHECK(irr.factors[0].second == 1);
    auto sq = factor_mod_q(IntPoly({1, 0, 1, 0, 1}), 2);
    REQUIRE(sq.factors.size() == 1);
    CHECK(sq.factors[0].first == IntPoly({1, 1, 1}));
    CHECK(sq.factors[0].second == 2);
    // two distinct quadratics mod 2: x^4+x^3+x^2+x+.. pick
    // (x^2+x+1)(x^3+x+1) mixed degrees
    IntPoly p = IntPoly({1, 1, 1}) * IntPoly({1, 1, 0, 1});
    auto mix = factor_mod_q(p, 2);
    REQUIRE(mix.factors.size() == 2);
}

TEST_CASE("random reconstruction over several prime fields") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dd(1, 12);
    int checked = 0;
    for (std::uint64_t q : {3ull, 5ull, 7ull, 11ull}) {
        for (int t = 0; t < 25; ++t) {
            int d = dd(rng);
            std::vector<mpz_class> c(d + 1);
            for (auto& v : c) v = static_cast<long>(rng() % 23) - 11;
            IntPoly p(std::move(c));
            if (p.degree() < 1) continue;
            if (mpz_fdiv_ui(p.lc().get_mpz_t(), q) == 0) continue;
            auto r = factor_mod_q(p, q);
            // multiply the factorization back out mod q
            FqVec prod{static_cast<std::uint64_t>(r.lead)};
            for (auto& [g, m] : r.factors)
                for (int k = 0; k < m; ++k)
                    prod = fq_mul(prod, fq_reduce(g, q), q);
            CHECK(prod == fq_reduce(p, q));
            ++checked;
        }
    }
    CHECK(checked >= 80);
}
