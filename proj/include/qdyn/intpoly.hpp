/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_INTPOLY_HPP
#define QDYN_INTPOLY_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

namespace qdyn {

/// Dense univariate polynomial with arbitrary-precision integer
/// coefficients.  coeff(i) is the coefficient of x^i; the zero
/// polynomial has degree -1.  The leading coefficient of a nonzero
/// polynomial is always nonzero (trailing zeros are trimmed on
/// construction and after every mutating operation).
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly zero() { return IntPoly(); }
    static IntPoly constant(const mpz_class& c);
    /// x^k
    static IntPoly monomial(int k, const mpz_class& c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const mpz_class& coeff(int i) const;
    const mpz_class& lc() const;
    const std::vector<mpz_class>& coeffs() const { return c_; }

    IntPoly operator-() const;
    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const mpz_class& s) const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

    /// multiply by x^k
    IntPoly shifted(int k) const;
    IntPoly derivative() const;
    mpz_class eval(const mpz_class& x) const;
    /// p(c*x)
    IntPoly scale_arg(const mpz_class& c) const;

    /// gcd of all coefficients, non-negative; 0 for the zero polynomial
    mpz_class content() const;
    /// p / content, sign-normalized so the leading coefficient is > 0
    IntPoly primitive_part() const;
    mpz_class max_abs_coeff() const;

    /// coefficients reduced into [0, m)
    IntPoly reduced_mod(const mpz_class& m) const;

    std::string to_string(const std::string& var = "x") const;

private:
    std::vector<mpz_class> c_;
    void trim();
    friend IntPoly mul_basecase(const IntPoly&, const IntPoly&);
};

/// Exact division over the integers.  Throws inexact_division_error if
/// den does not divide num exactly.
IntPoly exact_div(const IntPoly& num, const IntPoly& den);

/// Division with remainder when every elimination step is integral
/// (always the case for monic den).  Returns false if some step would
/// require a fractional quotient coefficient.
bool try_divide(const IntPoly& num, const IntPoly& den, IntPoly& quot,
                IntPoly& rem);

/// true iff den divides num exactly over the rationals; on success quot
/// is the (integer) quotient.  Works for non-monic den via primitive
/// parts.
bool divides(const IntPoly& den, const IntPoly& num, IntPoly* quot = nullptr);

/// gcd over Q returned as a primitive integer polynomial with positive
/// leading coefficient (subresultant PRS).
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// true iff gcd(p, p') is constant.  Uses one-prime certificates before
/// falling back to the exact gcd.
bool is_squarefree(const IntPoly& p);

/// Resultant of two integer polynomials (subresultant PRS, exact sign).
mpz_class resultant(const IntPoly& a, const IntPoly& b);

/// Discriminant: (-1)^{d(d-1)/2} resultant(p, p') / lc(p).
mpz_class discriminant(const IntPoly& p);

/// (x-1)^{deg g} * g((x+1)/(x-1)), sign-normalized primitive.  Involution
/// on the factor sets handled here; applying it twice gives back the
/// primitive part of the input.
IntPoly mobius_twist(const IntPoly& g);

/// Shared one-line text format: "deg c0 c1 ... cdeg".
std::string write_poly_line(const IntPoly& p);
IntPoly read_poly_line(const std::string& line);

std::ostream& operator<<(std::ostream& os, const IntPoly& p);

} // namespace qdyn

#endif
