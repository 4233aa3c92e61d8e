/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_FACTORIZE_HPP
#define QDYN_FACTORIZE_HPP

#include <vector>

#include "qdyn/intpoly.hpp"

namespace qdyn {

struct FactorOptions {
    /// primes examined before giving up on finding a good one
    int prime_tries = 100;
    /// among the good primes, how many are censused to pick the one
    /// with the fewest modular factors
    int census_size = 24;
    /// extra primes whose factor-degree multisets prune the subset
    /// search (possible-degree intersection)
    int mask_primes = 5;
    /// subset cardinality handled by the staged search before the
    /// unbounded fallback takes over
    int subset_cap = 8;
};

/// Factor a primitive squarefree integer polynomial into its
/// irreducible factors over Q, returned primitive with positive
/// leading coefficients, product equal to the input up to sign.
/// Zassenhaus: good-prime selection, quadratic Hensel lifting to a
/// Landau-Mignotte style bound, staged subset recombination.
std::vector<IntPoly> factor_squarefree_over_Z(const IntPoly& p,
                                              const FactorOptions& opt = {});

} // namespace qdyn

#endif
