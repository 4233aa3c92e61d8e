/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_PADIC_HPP
#define QDYN_PADIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdyn/intpoly.hpp"

namespace qdyn {

/// Descriptor of the degree-m unramified extension of the 2-adic
/// integers.  The defining polynomial U is the lowest irreducible of
/// degree m over F_2 in the coefficient-code order (sum c_i 2^i), lifted
/// verbatim to integer coefficients in {0,1}.  Descriptors are built
/// once per degree and shared read-only afterwards.
struct Extension {
    int m;
    std::uint64_t modulus_bits;   // bits 0..m of U over F_2 (bit m set)
    std::vector<int> modulus;     // the same coefficients as ints, size m+1

    static const Extension& of_degree(int m);
};

/// Element of the residue field F_{2^m} on the reduced basis.
class ResidueElement {
public:
    ResidueElement() : ext_(&Extension::of_degree(1)), bits_(0) {}
    ResidueElement(const Extension& ext, std::uint64_t bits)
        : ext_(&ext), bits_(bits) {}

    const Extension& ext() const { return *ext_; }
    std::uint64_t bits() const { return bits_; }
    bool is_zero() const { return bits_ == 0; }

    ResidueElement operator+(const ResidueElement& o) const;
    ResidueElement operator*(const ResidueElement& o) const;
    ResidueElement pow(std::uint64_t e) const;
    ResidueElement inverse() const;
    ResidueElement frobenius() const { return *this * *this; }
    bool operator==(const ResidueElement& o) const {
        return bits_ == o.bits_ && ext_->m == o.ext_->m;
    }
    bool operator!=(const ResidueElement& o) const { return !(*this == o); }
    bool operator<(const ResidueElement& o) const { return bits_ < o.bits_; }

private:
    const Extension* ext_;
    std::uint64_t bits_;
};

/// 2-adic valuation result: either a finite value or "zero to working
/// precision".
struct Val2 {
    bool finite;
    int v;  // meaningful when finite
};

/// Element of the degree-m unramified extension of Z_2, truncated mod
/// 2^N, with a guaranteed-precision tag prec <= N.  Coordinates are
/// with respect to the basis 1, u, ..., u^{m-1} where u is the fixed
/// root of the extension's defining polynomial.
class UnramifiedElement {
public:
    UnramifiedElement() = default;
    UnramifiedElement(const Extension& ext, int N);  // zero, prec = N
    static UnramifiedElement from_integer(const Extension& ext, int N,
                                          const mpz_class& v);
    static UnramifiedElement from_coeffs(const Extension& ext, int N,
                                         std::vector<mpz_class> coeffs,
                                         int prec = -1);

    const Extension& ext() const { return *ext_; }
    int working_precision() const { return N_; }
    int precision() const { return prec_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    /// a copy whose guarantee is lowered to k bits
    UnramifiedElement with_precision(int k) const;

    UnramifiedElement operator-() const;
    UnramifiedElement operator+(const UnramifiedElement& o) const;
    UnramifiedElement operator-(const UnramifiedElement& o) const;
    UnramifiedElement operator*(const UnramifiedElement& o) const;
    UnramifiedElement operator*(const mpz_class& s) const;

    /// multiply by 2^j (j >= 0): guarantee improves with the valuation
    UnramifiedElement shift_left(int j) const;
    /// exact division by 2^j; the value must have valuation >= j
    UnramifiedElement shift_right(int j) const;

    UnramifiedElement pow(unsigned long e) const;

    /// smallest i < prec with a nonzero mod 2^(i+1), or the
    /// zero-to-precision marker
    Val2 val2() const;
    bool is_unit() const;

    /// multiplicative inverse of a unit (throws domain_error otherwise)
    UnramifiedElement invert() const;

    ResidueElement reduce_mod2() const;

    /// congruence a = b mod 2^bits; bits must not exceed either guarantee
    bool congruent(const UnramifiedElement& o, int bits) const;

    std::string serialize() const;  // "m N k c0 ... c_{m-1}"
    static UnramifiedElement deserialize(const std::string& line);

private:
    const Extension* ext_ = nullptr;
    int N_ = 0;
    int prec_ = 0;
    std::vector<mpz_class> c_;

    void reduce();
    // valuation lower bound of the stored representative, clamped to prec
    int vlow() const;
    friend UnramifiedElement mul_impl(const UnramifiedElement&,
                                      const UnramifiedElement&);
};

/// sqrt(1 + t) by the binomial series; requires val2(t) >= 3 so that the
/// series converges with one guaranteed bit per term.  The result
/// squares to 1 + t and is congruent to 1 mod 4.
UnramifiedElement binomial_sqrt_one_plus(const UnramifiedElement& t);

/// sum_{n>=2} C(1/2, n) t^n -- the tail of the same series with the two
/// leading terms removed, used where subtracting full square roots would
/// cancel catastrophically
UnramifiedElement binomial_sqrt_tail(const UnramifiedElement& t);

/// Teichmuller representative: the unique root of unity (or 0) reducing
/// to r, computed to N bits.
UnramifiedElement teichmuller_lift(const ResidueElement& r, int N);

/// the arithmetic Frobenius lift: reduces to x -> x^2, fixes the base
UnramifiedElement frobenius(const UnramifiedElement& a);

/// Hensel/Newton root of g near the given start (g'(start) must be a
/// unit and g(start) = 0 mod 2); converges quadratically to N bits.
UnramifiedElement newton_root(const IntPoly& g, const UnramifiedElement& start);

/// evaluate an integer polynomial at a ring element
UnramifiedElement eval_poly(const IntPoly& g, const UnramifiedElement& x);

/// canonical embedding of the degree-d ring into the degree-(d*e) ring,
/// fixed by mapping the small generator to the lift of its smallest
/// residue root; images agree across calls
UnramifiedElement embed(const UnramifiedElement& a, const Extension& target);

/// deterministic test helper: element with exact valuation v
UnramifiedElement random_element(const Extension& ext, int N,
                                 std::uint64_t& rng_state, int v);

} // namespace qdyn

#endif
