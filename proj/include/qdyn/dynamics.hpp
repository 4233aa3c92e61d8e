/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_DYNAMICS_HPP
#define QDYN_DYNAMICS_HPP

#include <string>
#include <vector>

#include "qdyn/intpoly.hpp"
#include "qdyn/padic.hpp"

namespace qdyn {

/// One periodic cycle of the normalized map on units: the residue
/// cycle (closed under r -> r^4 inside the field of 4^n elements), the
/// lifted points in the degree-2n ring at working precision N, and the
/// bookkeeping filled in by the factor-matching and labeling passes.
struct OrbitRecord {
    int period = 0;
    std::vector<ResidueElement> residue_cycle;
    std::vector<UnramifiedElement> lifted_cycle;
    int matched_factor = -1;     // index into the caller's factor list
    int discriminant_label = 0;  // d > 0 once labeled
};

/// Residues of minimal period n under r -> r^4: the elements of the
/// 4^n-element field of degree exactly n over the 4-element subfield,
/// zero excluded.  Grouped into cycles of length n and ordered by the
/// smallest coordinate vector in each cycle.
std::vector<std::vector<ResidueElement>> residue_periodic_orbits(int n);
/// the same points flattened
std::vector<ResidueElement> residue_periodic_points(int n);

/// The unique periodic point in the residue disk of r: fixed-point
/// iteration of the n-fold normalized map from the Teichmuller lift,
/// stopping when successive sweeps agree to the full guarantee
/// (iteration cap 4N sweeps).
UnramifiedElement lift_periodic_point(const ResidueElement& r, int n, int N);

/// Enumerate every period-n orbit at precision N.  Each cycle is closed
/// under the map to its guaranteed precision minus `margin` bits and the
/// residue cycles partition residue_periodic_points(n).
std::vector<OrbitRecord> assemble_orbits(int n, int N, int threads = 0,
                                         int margin = 8);

/// The unique factor that every point of the orbit annihilates to
/// precision-minus-margin bits; zero or multiple matches raise
/// integrity_error.  `factors` comes from factoring the minimal-period
/// polynomial of the rescaled family.
int match_orbit_to_factor(const OrbitRecord& orbit,
                          const std::vector<IntPoly>& factors,
                          int margin = 8);

/// The two designated exceptional fixed points of the unnormalized map,
/// recorded separately from the orbit records.
struct ExceptionalFixedPoint {
    long t_coordinate;        // fixed point of the unnormalized branch
    std::string normalized;   // value in normalized coordinates
    std::string note;
};
std::vector<ExceptionalFixedPoint> exceptional_fixed_points();

} // namespace qdyn

#endif
