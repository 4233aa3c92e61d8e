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

#include "qdyn/errors.hpp"
#include "qdyn/tmap.hpp"

using namespace qdyn;

namespace {
constexpr int N = 64;
const Extension& E1 = Extension::of_degree(1);
const Extension& E2 = Extension::of_degree(2);
const Extension& E4 = Extension::of_degree(4);
const Extension& E6 = Extension::of_degree(6);

UnramifiedElement Z(const Extension& e, long v) {
    return UnramifiedElement::from_integer(e, N, v);
}
} // namespace

TEST_CASE("eval_f matches the curve polynomial") {
    CHECK_FALSE(eval_f(Z(E2, 0), Z(E2, 0)).val2().finite);  // f(0,0) = 0
    // f(1, y) = 16 for any y
    std::uint64_t rng = 1;
    for (int i = 0; i < 5; ++i) {
        UnramifiedElement y = random_element(E2, N, rng, i % 4);
        CHECK(eval_f(Z(E2, 1), y).congruent(Z(E2, 16), N));
    }
    // f(-1, 1) = 0
    CHECK_FALSE(eval_f(Z(E1, -1), Z(E1, 1)).val2().finite);
    // agreement with the BiPoly evaluation at integer points
    BiPoly f = curve_f();
    for (long a : {-3L, 2L, 5L})
        for (long b : {1L, -2L}) {
            mpz_class direct = f.eval_u(a).eval(b);
            CHECK(eval_f(Z(E1, a), Z(E1, b))
                      .congruent(UnramifiedElement::from_integer(E1, N, direct),
                                 N));
        }
}

TEST_CASE("T1 branch identities") {
    std::uint64_t rng = 7;
    for (const Extension* e : {&E1, &E2, &E6}) {
        for (int v = 1; v <= 3; ++v) {
            UnramifiedElement y = random_element(*e, N, rng, v);
            ScaledValue z = eval_T1(y);
            CHECK(z.exp == 3 - 4 * v);
            CHECK(z.unit.is_unit());
            // the two roots of w^2 + t w + 4 multiply to 4, where
            // t = (8 - 4 y^4)/y^4 and the sibling root is -t - T1(y)
            UnramifiedElement u4inv = y.shift_right(v).invert().pow(4);
            // -t = 4 - 8/y^4 = 2^(3-4v) (2^(4v-1) - u^-4)
            UnramifiedElement minus_t_unit =
                UnramifiedElement::from_integer(*e, N, 1)
                    .shift_left(4 * v - 1) -
                u4inv;
            UnramifiedElement sib_unit = minus_t_unit - z.unit;
            // T1 * sibling = 4, both scaled by 2^(3-4v):
            // unit * sib_unit = 4 / 2^(2(3-4v)) = 2^(8v-4)
            UnramifiedElement prod = z.unit * sib_unit;
            Val2 pv = prod.val2();
            CHECK(pv.finite);
            CHECK(pv.v == 8 * v - 4);
            UnramifiedElement four =
                UnramifiedElement::from_integer(*e, N, 1).shift_left(8 * v - 4);
            CHECK(prod.congruent(four.with_precision(prod.precision()),
                                 prod.precision()));
        }
    }
    CHECK_THROWS_AS(eval_T1(Z(E2, 1)), domain_error);   // unit input
    CHECK_THROWS_AS(eval_T1(Z(E2, 0)), domain_error);   // zero input
}

TEST_CASE("T2: valuation flip and the quadratic-branch identity") {
    // z = 2^-20: T2 has valuation 20 and T2 (z - T2) = 1
    UnramifiedElement w = Z(E1, 1);
    UnramifiedElement t2 = eval_T2(ScaledValue{w, -20});
    CHECK(t2.val2().v == 20);
    // z T2 - T2^2 = 1 with z = 2^-20 exactly, so z T2 = T2 >> 20
    UnramifiedElement zT2 = t2.shift_right(20);
    UnramifiedElement check = zT2 - t2 * t2;
    CHECK(check.congruent(Z(E1, 1).with_precision(check.precision()),
                          check.precision()));
    // random scaled inputs across extensions: z - T2 = 1/T2; scaled
    // by 2^ex this reads u = tunit^-1 + 2^ex T2, tunit = T2 / 2^ex
    std::uint64_t rng = 23;
    for (const Extension* e : {&E2, &E6}) {
        for (int ex = 1; ex <= 4; ++ex) {
            UnramifiedElement u = random_element(*e, N, rng, 0);
            UnramifiedElement t = eval_T2(ScaledValue{u, -ex});
            CHECK(t.val2().v == ex);
            UnramifiedElement tunit = t.shift_right(ex);
            UnramifiedElement identity = tunit.invert() + t.shift_left(ex);
            int k = std::min(identity.precision(), u.precision());
            CHECK(identity.congruent(u.with_precision(k), k));
        }
    }
}

TEST_CASE("T2 rejects integral input") {
    CHECK_THROWS_AS(eval_T2(ScaledValue{Z(E2, 1), 0}), domain_error);
}

TEST_CASE("T2 series constants 1, 1, 2, 5, 14, 42 appear verbatim") {
    // at z = 2^-5 every term below 2^64 is visible:
    // T2 = 2^5 + 2^15 + 2*2^25 + 5*2^35 + 14*2^45 + 42*2^55 mod 2^64
    UnramifiedElement t2 = eval_T2(ScaledValue{Z(E1, 1), -5});
    mpz_class expect = 0;
    const long cat[6] = {1, 1, 2, 5, 14, 42};
    for (int n = 1; n <= 6; ++n) {
        mpz_class term(cat[n - 1]);
        mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), 5 * (2 * n - 1));
        expect += term;
    }
    CHECK(t2.congruent(UnramifiedElement::from_integer(E1, N, expect), 64));
}

TEST_CASE("T1 leading behavior: first series term is 8 y1^4") {
    // T1(2 y1) + 1/(2 y1^4) - 4 = 8 y1^4 + 64 y1^8 + ..., so the
    // difference against 8 y1^4 vanishes mod 2^6 at unit y1
    std::uint64_t rng = 31;
    for (const Extension* e : {&E1, &E2, &E6}) {
        UnramifiedElement y1 = random_element(*e, N, rng, 0);
        ScaledValue t1 = eval_T1(y1.shift_left(1));
        REQUIRE(t1.exp == -1);
        // 2 T1(2 y1) + y1^-4 - 8 = 16 y1^4 mod 2^7
        UnramifiedElement lhs = t1.unit + y1.invert().pow(4) -
                                UnramifiedElement::from_integer(*e, N, 8);
        UnramifiedElement rhs = y1.pow(4).shift_left(4);
        CHECK(lhs.congruent(rhs, 7));
        // the next series term is 2^7 y1^8 with y1 a unit
        Val2 gap = (lhs - rhs).val2();
        CHECK(gap.finite);
        CHECK(gap.v == 7);
    }
}

TEST_CASE("T maps the punctured disk to itself with f(T(y), y) = 0") {
    std::uint64_t rng = 40;
    int count = 0;
    for (const Extension* e : {&E1, &E2, &E4, &E6}) {
        for (int v = 1; v <= 3; ++v) {
            for (int i = 0; i < 9; ++i) {
                UnramifiedElement y = random_element(*e, N, rng, v);
                UnramifiedElement t = eval_T(y);
                Val2 vt = t.val2();
                CHECK(vt.finite);
                CHECK(vt.v == 4 * v - 3);
                CHECK(vt.v >= 1);
                UnramifiedElement fval = eval_f(t, y);
                int k = std::min(fval.precision(), 48);
                CHECK(fval.congruent(
                    UnramifiedElement(*e, N).with_precision(k), k));
                ++count;
            }
        }
    }
    CHECK(count >= 100);
}

TEST_CASE("congruence of 8 T(xi) / xi^4 to 1 mod 2 on val-1 inputs") {
    std::uint64_t rng = 55;
    for (const Extension* e : {&E1, &E2, &E4, &E6}) {
        for (int i = 0; i < 10; ++i) {
            UnramifiedElement xi = random_element(*e, N, rng, 1);
            UnramifiedElement t = eval_T(xi);  // val 1
            UnramifiedElement q =
                t.shift_right(1) * xi.shift_right(1).invert().pow(4);
            CHECK(q.is_unit());
            CHECK(q.reduce_mod2() == ResidueElement(*e, 1));
        }
    }
}

TEST_CASE("T fixes the val-1 root of x^2 - x + 2") {
    IntPoly g({2, -1, 1});
    for (const Extension* e : {&E1, &E2}) {
        UnramifiedElement xi = newton_root(g, UnramifiedElement(*e, N));
        REQUIRE(xi.val2().v == 1);
        UnramifiedElement t = eval_T(xi);
        CHECK(t.congruent(xi.with_precision(t.precision()),
                          std::min(56, t.precision())));
    }
}

TEST_CASE("Ttilde: unit domain, residue fourth power, fixed point") {
    std::uint64_t rng = 66;
    for (const Extension* e : {&E1, &E2, &E4, &E6}) {
        for (int i = 0; i < 13; ++i) {
            UnramifiedElement z = random_element(*e, N, rng, 0);
            UnramifiedElement t = eval_Ttilde(z);
            CHECK(t.is_unit());
            ResidueElement r = z.reduce_mod2();
            CHECK(t.reduce_mod2() == r.pow(4));
        }
    }
    CHECK_THROWS_AS(eval_Ttilde(Z(E2, 2)), domain_error);
    // Ttilde fixes the unit root of 2x^2 - x + 1
    IntPoly b7t({1, -1, 2});
    UnramifiedElement z =
        newton_root(b7t, UnramifiedElement::from_integer(E2, N, 1));
    REQUIRE(z.is_unit());
    UnramifiedElement t = eval_Ttilde(z);
    CHECK(t.congruent(z.with_precision(t.precision()),
                      std::min(56, t.precision())));
}

TEST_CASE("Ttilde is a contraction on residue disks") {
    std::uint64_t rng = 13;
    for (int i = 0; i < 50; ++i) {
        UnramifiedElement a = random_element(E4, N, rng, 0);
        UnramifiedElement d = random_element(E4, N, rng, 1 + (i % 5));
        UnramifiedElement b = a + d;
        Val2 vd = (a - b).val2();
        REQUIRE(vd.finite);
        Val2 vt = (eval_Ttilde(a) - eval_Ttilde(b)).val2();
        CHECK((!vt.finite || vt.v >= vd.v + 1));
    }
}

TEST_CASE("frobenius equivariance of Ttilde") {
    std::uint64_t rng = 17;
    for (const Extension* e : {&E2, &E4, &E6}) {
        for (int i = 0; i < 8; ++i) {
            UnramifiedElement z = random_element(*e, N, rng, 0);
            UnramifiedElement lhs = eval_Ttilde(frobenius(z));
            UnramifiedElement rhs = frobenius(eval_Ttilde(z));
            int k = std::min(lhs.precision(), rhs.precision());
            CHECK(lhs.congruent(rhs, k));
        }
    }
}

TEST_CASE("mobius involution") {
    UnramifiedElement x = Z(E2, 3);
    UnramifiedElement y = mobius_involution(x);
    CHECK(mobius_involution(y).congruent(x, y.precision()));
    // image of a val-1 element is a unit
    std::uint64_t rng = 3;
    UnramifiedElement v1 = random_element(E4, N, rng, 1);
    CHECK(mobius_involution(v1).is_unit());
    CHECK_THROWS_AS(mobius_involution(Z(E2, 1)), domain_error);
    // x = 5 has (x+1)/(x-1) = 3/2, not integral
    CHECK_THROWS_AS(mobius_involution(Z(E2, 5)), domain_error);
}

TEST_CASE("the exact bivariate twist identity") {
    CHECK(mobius_twist_f_lhs() == mobius_twist_f_rhs());
}
