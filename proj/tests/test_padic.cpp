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
#include "qdyn/padic.hpp"

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

TEST_CASE("defining polynomials are the lowest-code irreducibles") {
    CHECK(E1.modulus_bits == 0b10);          // x
    CHECK(E2.modulus_bits == 0b111);         // x^2+x+1
    CHECK(E4.modulus_bits == 0b10011);       // x^4+x+1
    CHECK(E6.modulus_bits == 0b1000011);     // x^6+x+1
}

TEST_CASE("residue field arithmetic") {
    ResidueElement u(E2, 2);                 // u
    CHECK((u * u).bits() == 0b11);           // u^2 = u+1
    CHECK((u * u.inverse()).bits() == 1);
    CHECK(u.pow(3).bits() == 1);             // order 3 in F_4^*
    ResidueElement w(E6, 2);
    CHECK((w.pow((1 << 6) - 1)).bits() == 1);
}

TEST_CASE("val2 basics") {
    CHECK(Z(E2, 2).val2().v == 1);
    CHECK(Z(E2, 2).val2().finite);
    UnramifiedElement unit =
        UnramifiedElement::from_coeffs(E2, N, {mpz_class(3), mpz_class(4)});
    CHECK(unit.val2().v == 0);
    CHECK_FALSE(Z(E2, 0).val2().finite);
}

TEST_CASE("val-1 root of x^2 - x + 2, and val2(2 xi) = 2") {
    IntPoly g({2, -1, 1});
    // residue-0 start inside the degree-2 extension
    UnramifiedElement xi = newton_root(g, UnramifiedElement(E2, N));
    CHECK_FALSE(eval_poly(g, xi).val2().finite);
    CHECK(xi.val2().v == 1);
    UnramifiedElement beta = xi.shift_left(1);  // 2 xi
    CHECK(beta.val2().v == 2);
    // the sibling root is a unit (residue 1)
    UnramifiedElement other = newton_root(g, Z(E2, 1));
    CHECK(other.val2().v == 0);
}

TEST_CASE("invert") {
    CHECK(Z(E2, 1).invert().congruent(Z(E2, 1), N));
    // integer case: inverse of 3 mod 2^N
    UnramifiedElement i3 = Z(E2, 3).invert();
    CHECK((i3 * Z(E2, 3)).congruent(Z(E2, 1), N));
    // extension generator
    UnramifiedElement u =
        UnramifiedElement::from_coeffs(E2, N, {mpz_class(0), mpz_class(1)});
    CHECK((u.invert() * u).congruent(Z(E2, 1), N));
    CHECK_THROWS_AS(Z(E2, 2).invert(), domain_error);
}

TEST_CASE("binomial sqrt: examples and property") {
    // t = 0 -> 1
    UnramifiedElement s0 = binomial_sqrt_one_plus(Z(E2, 0));
    CHECK(s0.congruent(Z(E2, 1).with_precision(s0.precision()),
                       s0.precision()));
    // val2(t) = 4 exactly: s = 1 + t/2 mod 2^5 and not mod 2^6
    std::uint64_t rng = 99;
    for (int i = 0; i < 10; ++i) {
        UnramifiedElement t = random_element(E2, N, rng, 4);
        UnramifiedElement s = binomial_sqrt_one_plus(t);
        UnramifiedElement lin = Z(E2, 1) + t.shift_right(1);
        CHECK(s.congruent(lin, 5));
        CHECK_FALSE(s.congruent(lin, 6));
        CHECK(s.congruent(Z(E2, 1), 2));  // s = 1 mod 4
    }
    // squaring oracle across degrees and valuations
    for (const Extension* e : {&E1, &E2, &E4, &E6}) {
        for (int v = 3; v <= 6; ++v) {
            for (int i = 0; i < 5; ++i) {
                UnramifiedElement t = random_element(*e, N, rng, v);
                UnramifiedElement s = binomial_sqrt_one_plus(t);
                UnramifiedElement one_plus_t =
                    UnramifiedElement::from_integer(*e, N, 1) + t;
                int k = s.precision();
                CHECK((s * s).congruent(one_plus_t.with_precision(k), k));
            }
        }
    }
    CHECK_THROWS_AS(binomial_sqrt_one_plus(Z(E2, 4)), domain_error);
}

TEST_CASE("teichmuller lift") {
    CHECK(teichmuller_lift(ResidueElement(E1, 1), N).congruent(Z(E1, 1), N));
    // generator of F_4^*: omega^3 = 1, omega != 1
    UnramifiedElement omega = teichmuller_lift(ResidueElement(E2, 2), N);
    CHECK(omega.pow(3).congruent(Z(E2, 1), N));
    CHECK_FALSE(omega.congruent(Z(E2, 1), 2));
    // zero residue lifts to exact zero
    CHECK_FALSE(teichmuller_lift(ResidueElement(E2, 0), N).val2().finite);
    // round trip through the residue field
    std::uint64_t rng = 5;
    for (int i = 0; i < 20; ++i) {
        std::uint64_t bits = (rng = rng * 6364136223846793005ULL + 1) % 16;
        ResidueElement r(E4, bits);
        if (r.is_zero()) continue;
        CHECK(teichmuller_lift(r, N).reduce_mod2() == r);
    }
}

TEST_CASE("ring laws and ultrametric inequality on random values") {
    std::uint64_t rng = 2718;
    for (int i = 0; i < 40; ++i) {
        UnramifiedElement a = random_element(E6, N, rng, i % 3);
        UnramifiedElement b = random_element(E6, N, rng, (i + 1) % 3);
        UnramifiedElement c = random_element(E6, N, rng, 0);
        int k = std::min(((a * b) * c).precision(),
                         (a * (b * c)).precision());
        CHECK(((a * b) * c).congruent(a * (b * c), k));
        int k2 = std::min((a * (b + c)).precision(),
                          (a * b + a * c).precision());
        CHECK((a * (b + c)).congruent(a * b + a * c, k2));
        Val2 va = a.val2(), vb = b.val2(), vs = (a + b).val2();
        if (va.finite && vb.finite) {
            int lo = std::min(va.v, vb.v);
            if (vs.finite) CHECK(vs.v >= lo);
            if (va.v != vb.v) {
                CHECK(vs.finite);
                CHECK(vs.v == lo);
            }
        }
    }
}

TEST_CASE("frobenius fixes the base and squares residues") {
    std::uint64_t rng = 31415;
    for (const Extension* e : {&E2, &E4, &E6}) {
        for (int i = 0; i < 10; ++i) {
            UnramifiedElement a = random_element(*e, N, rng, 0);
            UnramifiedElement fa = frobenius(a);
            CHECK(fa.reduce_mod2() == a.reduce_mod2().frobenius());
            UnramifiedElement b = random_element(*e, N, rng, 0);
            int k = std::min(frobenius(a * b).precision(),
                             (fa * frobenius(b)).precision());
            CHECK(frobenius(a * b).congruent(fa * frobenius(b), k));
        }
        // frobenius^m = identity
        UnramifiedElement a = random_element(*e, N, rng, 0);
        UnramifiedElement it = a;
        for (int s = 0; s < (*e).m; ++s) it = frobenius(it);
        CHECK(it.congruent(a, it.precision()));
    }
    CHECK(frobenius(Z(E6, 12345)).congruent(Z(E6, 12345), N));
}

TEST_CASE("embedding is a ring map compatible with towers") {
    std::uint64_t rng = 101;
    for (int i = 0; i < 10; ++i) {
        UnramifiedElement a = random_element(E2, N, rng, 0);
        UnramifiedElement b = random_element(E2, N, rng, 1);
        UnramifiedElement ea = embed(a, E6), eb = embed(b, E6);
        int k = std::min(embed(a * b, E6).precision(), (ea * eb).precision());
        CHECK(embed(a * b, E6).congruent(ea * eb, k));
        CHECK(embed(a + b, E6).congruent(ea + eb,
                                         embed(a + b, E6).precision()));
        Val2 v1 = a.val2(), v2 = ea.val2();
        CHECK(v1.finite == v2.finite);
        if (v1.finite) CHECK(v1.v == v2.v);
    }
    CHECK_THROWS_AS(embed(random_element(E4, N, rng, 0), E6), domain_error);
}

TEST_CASE("serialization round trip") {
    std::uint64_t rng = 77;
    UnramifiedElement a = random_element(E6, 96, rng, 2).with_precision(80);
    UnramifiedElement b = UnramifiedElement::deserialize(a.serialize());
    CHECK(b.working_precision() == 96);
    CHECK(b.precision() == 80);
    CHECK(a.congruent(b, 80));
}

TEST_CASE("precision bookkeeping caps and degrades as specified") {
    UnramifiedElement a = Z(E2, 6).with_precision(10);  // val 1, 10 bits
    UnramifiedElement b = Z(E2, 12).with_precision(20); // val 2
    UnramifiedElement p = a * b;
    // error floor: min(v(a) + prec(b), v(b) + prec(a)) = min(21, 12) = 12
    CHECK(p.precision() == 12);
    CHECK(a.shift_left(5).precision() == 15);
    CHECK(a.shift_right(1).precision() == 9);
    CHECK_THROWS_AS(Z(E2, 1).shift_right(1), domain_error);
    CHECK_THROWS_AS(a.congruent(b, 15), domain_error);
}
