/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_TMAP_HPP
#define QDYN_TMAP_HPP

#include "qdyn/bipoly.hpp"
#include "qdyn/padic.hpp"

namespace qdyn {

/// Carrier for values of negative 2-adic valuation: value = 2^exp * unit
/// with exp <= -1.  Integral ring elements never need this; the inner
/// branch of the composition does.
struct ScaledValue {
    UnramifiedElement unit;
    int exp;
};

/// f(x, y) evaluated in the ring with tracked precision.
UnramifiedElement eval_f(const UnramifiedElement& x, const UnramifiedElement& y);

/// First branch: maps the punctured disk 0 < |y| <= 1/2 onto values of
/// absolute value >= 2.  val2(input) must be finite and >= 1.
/// Computed from the series around -8/y^4 so no cancellation of full
/// square roots occurs.
ScaledValue eval_T1(const UnramifiedElement& y);

/// Second branch: |z| >= 2 back into the punctured disk; returns an
/// integral element of valuation -exp >= 1.
UnramifiedElement eval_T2(const ScaledValue& z);

/// The composite branch: punctured disk to itself, f(T(y), y) = 0.
UnramifiedElement eval_T(const UnramifiedElement& y);

/// Normalized map T(2z)/2 on units of the ring (val2(z) = 0); the
/// residue dynamics is z -> z^4.
UnramifiedElement eval_Ttilde(const UnramifiedElement& z);

/// x -> (x+1)/(x-1); requires x-1 to be a unit.  An involution.
UnramifiedElement mobius_involution(const UnramifiedElement& x);

/// The exact bivariate identity
/// (x-1)^4 (y-1)^4 f((x+1)/(x-1), (y+1)/(y-1)) == 16 f(y, x),
/// as polynomials; returns both sides for the test to compare.
BiPoly mobius_twist_f_lhs();
BiPoly mobius_twist_f_rhs();

/// Randomized suite over the branch: for `count` random points of
/// valuation 1..3 spread across extension degrees 1, 2, 4, 6, checks
/// that the image stays in the punctured disk with valuation 4v-3,
/// that f(T(y), y) vanishes to `check_bits` bits, and the unit
/// congruence 8 T(y)/y^4 = 1 mod 2 on valuation-1 inputs.
struct BranchSuiteReport {
    int count = 0;
    int domain_ok = 0;      // valuation landed at 4v-3
    int curve_ok = 0;       // f(T(y), y) = 0 to check_bits
    int congruence_ok = 0;  // the val-1 unit congruence (those inputs only)
    int congruence_total = 0;
    std::string witness;
    bool all_ok() const {
        return domain_ok == count && curve_ok == count &&
               congruence_ok == congruence_total;
    }
};
BranchSuiteReport verify_branch_suite(int N, std::uint64_t seed, int count,
                                      int check_bits = 48);

} // namespace qdyn

#endif
