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
#include <sstream>

#include "qdyn/bipoly.hpp"
#include "qdyn/errors.hpp"
#include "qdyn/intpoly.hpp"

using namespace qdyn;

namespace {

IntPoly random_poly(std::mt19937& rng, int maxdeg, int coeff_range) {
    std::uniform_int_distribution<int> dd(0, maxdeg);
    std::uniform_int_distribution<int> dc(-coeff_range, coeff_range);
    int d = dd(rng);
    std::vector<mpz_class> c(d + 1);
    for (auto& v : c) v = dc(rng);
    return IntPoly(std::move(c));
}

} // namespace

TEST_CASE("construction normalizes degree") {
    IntPoly z;
    CHECK(z.degree() == -1);
    CHECK(z.is_zero());
    IntPoly p(std::vector<mpz_class>{mpz_class(1), mpz_class(0), mpz_class(0)});
    CHECK(p.degree() == 0);
    IntPoly q({1, 2, 3});
    CHECK(q.degree() == 2);
    CHECK(q.lc() == 3);
}

TEST_CASE("arithmetic basics") {
    IntPoly a({1, 1});       // 1 + x
    IntPoly b({-1, 1});      // -1 + x
    CHECK((a * b) == IntPoly({-1, 0, 1}));
    CHECK((a + b) == IntPoly({0, 2}));
    CHECK((a - a).is_zero());
    CHECK(a.eval(3) == 4);
    IntPoly c({4, 0, 2});
    CHECK(c.content() == 2);
    CHECK(c.primitive_part() == IntPoly({2, 0, 1}));
    CHECK((-c).primitive_part() == IntPoly({-2, 0, -1}) * mpz_class(-1));
}

TEST_CASE("exact_div examples") {
    // (x^2 - 1) / (x - 1) = x + 1
    CHECK(exact_div(IntPoly({-1, 0, 1}), IntPoly({-1, 1})) == IntPoly({1, 1}));
    // identity case
    IntPoly r1 = curve_f().diagonal();
    CHECK(exact_div(r1, r1) == IntPoly({1}));
    CHECK_THROWS_AS(exact_div(IntPoly({1, 0, 1}), IntPoly({-1, 1})),
                    inexact_division_error);
}

TEST_CASE("exact_div of random products round-trips") {
    std::mt19937 rng(42);
    for (int t = 0; t < 200; ++t) {
        IntPoly p = random_poly(rng, 6, 20);
        IntPoly den = random_poly(rng, 4, 20);
        if (den.is_zero()) continue;
        CHECK(exact_div(p * den, den) == p);
    }
}

TEST_CASE("divides handles non-monic divisors") {
    IntPoly g({1, -1, 2});      // 2x^2 - x + 1
    IntPoly h({3, 0, 0, 5});
    IntPoly q;
    CHECK(divides(g, g * h, &q));
    CHECK(q == h);
    CHECK_FALSE(divides(g, g * h + IntPoly({1})));
}

TEST_CASE("gcd and squarefree detection") {
    IntPoly a({-1, 0, 1});  // (x-1)(x+1)
    IntPoly b({1, 2, 1});   // (x+1)^2
    CHECK(gcd(a, b) == IntPoly({1, 1}));
    CHECK(is_squarefree(a));
    CHECK_FALSE(is_squarefree(b));
    CHECK(is_squarefree(IntPoly({-2, 0, 1})));
}

TEST_CASE("resultant of univariate pairs") {
    // res(5 - t, t - 7) = 2  (linear elimination specialized)
    CHECK(resultant(IntPoly({5, -1}), IntPoly({-7, 1})) == 2);
    // res(t^2 - a, t^2 - b) = (a - b)^2 at small integers
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            mpz_class r = resultant(IntPoly({-a, 0, 1}), IntPoly({-b, 0, 1}));
            CHECK(r == mpz_class((a - b)) * (a - b));
        }
    // multiplicativity on random instances
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        IntPoly p = random_poly(rng, 3, 8);
        IntPoly q = random_poly(rng, 3, 8);
        IntPoly r = random_poly(rng, 3, 8);
        if (p.is_zero() || q.is_zero() || r.is_zero()) continue;
        CHECK(resultant(p * q, r) == resultant(p, r) * resultant(q, r));
    }
}

TEST_CASE("discriminant matches known values") {
    // disc(x^2 + bx + c) = b^2 - 4c
    std::mt19937 rng(9);
    std::uniform_int_distribution<long> d(-20, 20);
    for (int t = 0; t < 50; ++t) {
        long b = d(rng), c = d(rng);
        IntPoly p({c, b, 1});
        CHECK(discriminant(p) == mpz_class(b) * b - 4 * mpz_class(c));
    }
    // disc of x^2 - x + 2 is -7
    CHECK(discriminant(IntPoly({2, -1, 1})) == -7);
}

TEST_CASE("mobius twist is an involution on factors") {
    IntPoly b7({2, -1, 1});
    CHECK(mobius_twist(b7) == b7);  // self-dual factor
    IntPoly g({4, -2, 5, -4, 1});   // x^4-4x^3+5x^2-2x+4
    CHECK(mobius_twist(g) == g);
    IntPoly h({3, 1, 1});
    CHECK(mobius_twist(mobius_twist(h)) == h.primitive_part());
}

TEST_CASE("poly line round-trip") {
    IntPoly p({12, 0, -7, 19});
    CHECK(read_poly_line(write_poly_line(p)) == p);
    CHECK(read_poly_line(write_poly_line(IntPoly())) == IntPoly());
}

TEST_CASE("bipoly basics and curve constants") {
    BiPoly f = curve_f();
    CHECK(f.deg_u() == 4);
    CHECK(f.deg_v() == 4);
    CHECK(f.coeff(0, 4) == 1);
    CHECK(f.coeff(1, 0) == 8);
    // f(0,0) = 0, f(1,y) = 16, f(-1,1) = 0
    CHECK(f.eval_u(0).coeff(0) == 0);
    IntPoly at1 = f.eval_u(1);
    CHECK(at1 == IntPoly({16}));
    CHECK(f.eval_u(-1).eval(1) == 0);
    BiPoly f1 = curve_f1();
    CHECK(f1.coeff(0, 4) == 1);
    CHECK(f1.coeff(4, 4) == 16);
    CHECK(f1.coeff(1, 0) == 1);
    CHECK(f1 == curve_f().scale_args(2).div_exact_scalar(16));
}

TEST_CASE("bipoly exact division and serialization") {
    BiPoly f = curve_f();
    BiPoly g = f * f;
    CHECK(BiPoly::exact_div(g, f) == f);
    std::stringstream ss;
    f.write(ss);
    CHECK(BiPoly::read(ss) == f);
}

TEST_CASE("bipoly diagonal gives R1") {
    // f(x,x) = x(x+1)(x^2-x+2)(x^4-4x^3+5x^2-2x+4)
    IntPoly r1 = curve_f().diagonal();
    IntPoly expect = IntPoly({0, 1}) * IntPoly({1, 1}) * IntPoly({2, -1, 1}) *
                     IntPoly({4, -2, 5, -4, 1});
    CHECK(r1 == expect);
}
