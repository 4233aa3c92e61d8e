/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_MODPOLY_HPP
#define QDYN_MODPOLY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qdyn/intpoly.hpp"

namespace qdyn {

/// Polynomials over F_q, q an odd prime or 2, coefficients in [0, q).
/// Stored least-significant first and always trimmed.
using FqVec = std::vector<std::uint64_t>;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t q);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t q);

int fq_deg(const FqVec& f);
void fq_trim(FqVec& f);
FqVec fq_reduce(const IntPoly& p, std::uint64_t q);
IntPoly fq_to_intpoly(const FqVec& f);
FqVec fq_add(const FqVec& a, const FqVec& b, std::uint64_t q);
FqVec fq_sub(const FqVec& a, const FqVec& b, std::uint64_t q);
FqVec fq_mul(const FqVec& a, const FqVec& b, std::uint64_t q);
FqVec fq_scalar(const FqVec& a, std::uint64_t c, std::uint64_t q);
void fq_divmod(const FqVec& a, const FqVec& b, FqVec& quot, FqVec& rem,
               std::uint64_t q);
FqVec fq_rem(const FqVec& a, const FqVec& b, std::uint64_t q);
FqVec fq_gcd(FqVec a, FqVec b, std::uint64_t q);  // monic result
FqVec fq_monic(const FqVec& a, std::uint64_t q);
FqVec fq_derivative(const FqVec& a, std::uint64_t q);
/// base^e mod (m, q), e an arbitrary-precision exponent
FqVec fq_powmod(const FqVec& base, const mpz_class& e, const FqVec& m,
                std::uint64_t q);

/// squarefree decomposition of a monic polynomial: (g_i, m_i) with
/// f = prod g_i^{m_i}, the g_i squarefree and pairwise coprime
std::vector<std::pair<FqVec, int>> fq_squarefree_decomp(const FqVec& f,
                                                        std::uint64_t q);
/// distinct-degree splitting of a monic squarefree polynomial:
/// (product of all irreducible factors of degree d, d)
std::vector<std::pair<FqVec, int>> fq_distinct_degree(const FqVec& f,
                                                      std::uint64_t q);
/// equal-degree splitting (Cantor-Zassenhaus; trace maps when q = 2)
std::vector<FqVec> fq_equal_degree(const FqVec& f, int d, std::uint64_t q);

/// full factorization of a monic polynomial, canonically sorted
std::vector<std::pair<FqVec, int>> fq_factor(const FqVec& f, std::uint64_t q);

/// number of irreducible factors (with multiplicity ignored) -- cheap
/// census used for Zassenhaus prime selection
int fq_count_irreducible_factors(const FqVec& f, std::uint64_t q);

struct ModFactorization {
    std::uint64_t lead;  // leading unit of the reduction
    std::vector<std::pair<IntPoly, int>> factors;  // monic, coeffs in [0,q)
};

/// Factor p modulo the prime q.  The leading coefficient of p must not
/// vanish mod q (domain_error otherwise); the product of the returned
/// monic factor powers times `lead` reproduces p mod q.
ModFactorization factor_mod_q(const IntPoly& p, std::uint64_t q);

} // namespace qdyn

#endif
