/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#include "qdyn/tmap.hpp"

#include "qdyn/errors.hpp"

namespace qdyn {

UnramifiedElement eval_f(const UnramifiedElement& x,
                         const UnramifiedElement& y) {
    const Extension& ext = x.ext();
    int N = x.working_precision();
    UnramifiedElement one = UnramifiedElement::from_integer(ext, N, 1);
    UnramifiedElement xm1 = x - one;
    UnramifiedElement xm1_4 = (xm1 * xm1) * (xm1 * xm1);
    UnramifiedElement y2 = y * y;
    UnramifiedElement y4 = y2 * y2;
    UnramifiedElement x2 = x * x;
    return y4 * xm1_4 + (x * (x2 + one)).shift_left(3);
}

ScaledValue eval_T1(const UnramifiedElement& y) {
    Val2 vy = y.val2();
    if (!vy.finite || vy.v < 1)
        throw domain_error("T1: input must lie in the punctured disk");
    int v = vy.v;
    const Extension& ext = y.ext();
    int N = y.working_precision();

    // integral part: 4 + sum_{n>=2} C_{n-1} y^(4n-4) / 2^(2n-3)
    //              = 4 - (4/y^4) * tail(-y^4)
    UnramifiedElement y4 = (y * y) * (y * y);
    UnramifiedElement tail = binomial_sqrt_tail(-y4);
    UnramifiedElement u = y.shift_right(v);                 // unit part of y
    UnramifiedElement uinv4 = u.invert().pow(4);            // u^-4
    // (4/y^4) tail = 2^(2-4v) u^-4 tail; tail has valuation >= 8v-3
    UnramifiedElement scaled_tail = (uinv4 * tail).shift_right(4 * v - 2);
    UnramifiedElement A =
        UnramifiedElement::from_integer(ext, N, 4) - scaled_tail;
    // T1 = A - 8/y^4 = 2^(3-4v) (A 2^(4v-3) - u^-4)
    UnramifiedElement w = A.shift_left(4 * v - 3) - uinv4;
    return ScaledValue{w, 3 - 4 * v};
}

UnramifiedElement eval_T2(const ScaledValue& z) {
    if (z.exp > -1) throw domain_error("T2: |z| must be at least 2");
    if (!z.unit.is_unit())
        throw domain_error("T2: scaled value has a non-unit mantissa");
    const Extension& ext = z.unit.ext();
    int N = z.unit.working_precision();
    int e = -z.exp;  // >= 1
    UnramifiedElement winv = z.unit.invert();
    // z^-2 = 2^(2e) w^-2, integral of valuation 2e
    UnramifiedElement zinv2 = (winv * winv).shift_left(2 * e);
    // S = sum_{n>=1} C_{n-1} (z^-2)^(n-1)
    UnramifiedElement S = UnramifiedElement::from_integer(ext, N, 1);
    UnramifiedElement pw = zinv2;
    mpz_class cat = 1;
    int n = 2;
    while ((2 * n - 2) * e <= N) {
        cat = cat * 2 * (2 * n - 3);
        mpz_divexact_ui(cat.get_mpz_t(), cat.get_mpz_t(), n);  // C_{n-1}
        S = S + pw * cat;
        pw = pw * zinv2;
        ++n;
    }
    // T2 = z^-1 S = 2^e (w^-1 S)
    return (winv * S).shift_left(e);
}

UnramifiedElement eval_T(const UnramifiedElement& y) {
    return eval_T2(eval_T1(y));
}

UnramifiedElement eval_Ttilde(const UnramifiedElement& z) {
    if (!z.is_unit())
        throw domain_error("Ttilde: input must be a unit");
    UnramifiedElement t = eval_T(z.shift_left(1));
    return t.shift_right(1);
}

UnramifiedElement mobius_involution(const UnramifiedElement& x) {
    const Extension& ext = x.ext();
    int N = x.working_precision();
    UnramifiedElement one = UnramifiedElement::from_integer(ext, N, 1);
    UnramifiedElement den = x - one;
    UnramifiedElement num = x + one;
    Val2 vd = den.val2();
    if (!vd.finite)
        throw domain_error("mobius: x - 1 is not invertible at this precision");
    if (vd.v > 0) {
        // integral image needs val(x+1) >= val(x-1); both are even for
        // odd x and exactly one of them has valuation 1
        Val2 vn = num.val2();
        if (!vn.finite || vn.v < vd.v)
            throw domain_error("mobius: image is not integral");
        num = num.shift_right(vd.v);
        den = den.shift_right(vd.v);
    }
    return num * den.invert();
}

BiPoly mobius_twist_f_lhs() {
    // (x-1)^4 (y-1)^4 f((x+1)/(x-1), (y+1)/(y-1))
    //   = sum c_ij (x+1)^i (x-1)^(4-i) (y+1)^j (y-1)^(4-j)
    BiPoly f = curve_f();
    IntPoly xp1({1, 1}), xm1({-1, 1});
    std::vector<IntPoly> up(5), dn(5);
    up[0] = IntPoly({1});
    dn[0] = IntPoly({1});
    for (int i = 1; i <= 4; ++i) {
        up[i] = up[i - 1] * xp1;
        dn[i] = dn[i - 1] * xm1;
    }
    BiPoly acc;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) {
            const mpz_class& c = f.coeff(i, j);
            if (c == 0) continue;
            acc = acc + BiPoly::from_u(up[i] * dn[4 - i]) *
                            BiPoly::from_v(up[j] * dn[4 - j]) * c;
        }
    return acc;
}

BiPoly mobius_twist_f_rhs() {
    return curve_f().swapped() * mpz_class(16);
}

BranchSuiteReport verify_branch_suite(int N, std::uint64_t seed, int count,
                                      int check_bits) {
    BranchSuiteReport rep;
    rep.count = count;
    const int degrees[4] = {1, 2, 4, 6};
    std::uint64_t state = seed;
    for (int i = 0; i < count; ++i) {
        const Extension& ext = Extension::of_degree(degrees[i % 4]);
        int v = 1 + (i % 3);
        UnramifiedElement y = random_element(ext, N, state, v);
        UnramifiedElement t = eval_T(y);
        Val2 vt = t.val2();
        bool dom = vt.finite && vt.v == 4 * v - 3 && vt.v >= 1;
        if (dom) ++rep.domain_ok;
        UnramifiedElement fv = eval_f(t, y);
        Val2 vf = fv.val2();
        int bits = std::min(check_bits, fv.precision());
        bool curve = !vf.finite || vf.v >= bits;
        if (curve) ++rep.curve_ok;
        bool cong = true;
        if (v == 1) {
            ++rep.congruence_total;
            UnramifiedElement q =
                t.shift_right(1) * y.shift_right(1).invert().pow(4);
            cong = q.is_unit() && q.reduce_mod2() == ResidueElement(ext, 1);
            if (cong) ++rep.congruence_ok;
        }
        if ((!dom || !curve || !cong) && rep.witness.empty())
            rep.witness = y.serialize();
    }
    return rep;
}

} // namespace qdyn
