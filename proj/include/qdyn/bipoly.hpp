/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_BIPOLY_HPP
#define QDYN_BIPOLY_HPP

#include <string>
#include <vector>

#include "qdyn/intpoly.hpp"

namespace qdyn {

/// Dense bivariate integer polynomial.  coeff(i, j) is the coefficient
/// of u^i v^j where (u, v) are the first and second variable; which
/// names they carry is the caller's business.  The grid is kept trimmed
/// so degree bounds match the stored shape.
class BiPoly {
public:
    BiPoly() = default;
    BiPoly(int du, int dv);  // zero-filled grid

    static BiPoly from_u(const IntPoly& p);  // p(u) as a bivariate
    static BiPoly from_v(const IntPoly& p);  // p(v)
    static BiPoly constant(const mpz_class& c);

    int deg_u() const { return du_; }
    int deg_v() const { return dv_; }
    bool is_zero() const { return du_ < 0; }

    const mpz_class& coeff(int i, int j) const;
    void set_coeff(int i, int j, const mpz_class& c);
    /// call after batch set_coeff writes that may have left zero fringes
    void trim();

    BiPoly operator-() const;
    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator*(const mpz_class& s) const;
    bool operator==(const BiPoly& o) const;

    /// coefficient of u^i as a polynomial in v, and vice versa
    IntPoly coeff_of_u(int i) const;
    IntPoly coeff_of_v(int j) const;

    IntPoly eval_u(const mpz_class& a) const;  // substitute u = a
    IntPoly eval_v(const mpz_class& b) const;  // substitute v = b
    IntPoly diagonal() const;                  // substitute v = u
    BiPoly swapped() const;                    // exchange the variables

    /// p(c*u, c*v)
    BiPoly scale_args(const mpz_class& c) const;
    /// divide every coefficient exactly, throws if inexact
    BiPoly div_exact_scalar(const mpz_class& s) const;
    BiPoly reduced_mod(const mpz_class& m) const;

    /// Exact multivariate division (throws inexact_division_error).
    static BiPoly exact_div(const BiPoly& num, const BiPoly& den);

    std::string to_string(const std::string& u = "x",
                          const std::string& v = "y") const;

    /// Shared text format: header "du dv", then du+1 lines of dv+1
    /// coefficients.
    void write(std::ostream& os) const;
    static BiPoly read(std::istream& is);

private:
    int du_ = -1, dv_ = -1;
    std::vector<mpz_class> a_;  // (du+1)*(dv+1), row-major in u
    mpz_class& at(int i, int j) { return a_[size_t(i) * (dv_ + 1) + j]; }
    const mpz_class& at(int i, int j) const {
        return a_[size_t(i) * (dv_ + 1) + j];
    }
};

/// The curve polynomial f(x,y) = y^4 (x-1)^4 + 8x(x^2+1), first
/// variable x, second y.
BiPoly curve_f();
/// f1(x,y) = f(2x,2y)/16.
BiPoly curve_f1();

} // namespace qdyn

#endif
