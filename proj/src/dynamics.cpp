/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#include "qdyn/dynamics.hpp"

#include <algorithm>

#include "qdyn/errors.hpp"
#include "qdyn/parallel.hpp"
#include "qdyn/tmap.hpp"

namespace qdyn {

std::vector<std::vector<ResidueElement>> residue_periodic_orbits(int n) {
    if (n < 1) throw domain_error("period must be positive");
    const Extension& ext = Extension::of_degree(2 * n);
    std::vector<std::vector<ResidueElement>> orbits;
    std::vector<bool> seen(1ULL << (2 * n), false);
    for (std::uint64_t b = 1; b < (1ULL << (2 * n)); ++b) {
        if (seen[b]) continue;
        ResidueElement r(ext, b);
        // minimal period of r under r -> r^4 must be exactly n
        ResidueElement it = r;
        int period = 0;
        for (int k = 1; k <= n; ++k) {
            it = it.pow(4);
            if (it == r) {
                period = k;
                break;
            }
        }
        if (period != n) {
            seen[b] = true;  // either shorter period or not dividing n
            continue;
        }
        std::vector<ResidueElement> cycle;
        ResidueElement cur = r;
        for (int k = 0; k < n; ++k) {
            cycle.push_back(cur);
            seen[cur.bits()] = true;
            cur = cur.pow(4);
        }
        // rotate so the smallest coordinate vector leads
        size_t lead = 0;
        for (size_t i = 1; i < cycle.size(); ++i)
            if (cycle[i] < cycle[lead]) lead = i;
        std::rotate(cycle.begin(), cycle.begin() + lead, cycle.end());
        orbits.push_back(std::move(cycle));
    }
    std::sort(orbits.begin(), orbits.end(),
              [](const auto& a, const auto& b) {
                  return a.front() < b.front();
              });
    return orbits;
}

std::vector<ResidueElement> residue_periodic_points(int n) {
    std::vector<ResidueElement> out;
    for (const auto& orbit : residue_periodic_orbits(n))
        for (const auto& r : orbit) out.push_back(r);
    return out;
}

UnramifiedElement lift_periodic_point(const ResidueElement& r, int n, int N) {
    if (r.is_zero())
        throw domain_error("lift: zero residue is not a unit periodic point");
    UnramifiedElement z = teichmuller_lift(r, N);
    int cap = 4 * N;
    for (int sweep = 0; sweep < cap; ++sweep) {
        UnramifiedElement next = z;
        for (int k = 0; k < n; ++k) next = eval_Ttilde(next);
        int agree = std::min(z.precision(), next.precision());
        if (next.congruent(z, agree)) return next;
        z = next;
    }
    throw convergence_error("periodic-point lift did not converge in 4N sweeps");
}

std::vector<OrbitRecord> assemble_orbits(int n, int N, int threads,
                                         int margin) {
    auto orbits = residue_periodic_orbits(n);
    std::vector<OrbitRecord> out(orbits.size());
    parallel_for(static_cast<int>(orbits.size()), threads, [&](int i) {
        OrbitRecord rec;
        rec.period = n;
        rec.residue_cycle = orbits[i];
        UnramifiedElement z = lift_periodic_point(orbits[i][0], n, N);
        rec.lifted_cycle.push_back(z);
        for (int k = 1; k < n; ++k)
            rec.lifted_cycle.push_back(eval_Ttilde(rec.lifted_cycle.back()));
        // integrity: residues follow the cycle, points are units, the
        // cycle closes to precision minus the margin
        for (int k = 0; k < n; ++k) {
            if (!rec.lifted_cycle[k].is_unit())
                throw integrity_error("lifted point is not a unit");
            if (rec.lifted_cycle[k].reduce_mod2() != rec.residue_cycle[k])
                throw integrity_error("lifted cycle leaves its residue cycle");
        }
        UnramifiedElement back = eval_Ttilde(rec.lifted_cycle.back());
        int k = std::min(back.precision(), rec.lifted_cycle[0].precision());
        if (!back.congruent(rec.lifted_cycle[0], std::max(1, k - margin)))
            throw integrity_error("orbit does not close under the map");
        out[i] = std::move(rec);
    });
    return out;
}

int match_orbit_to_factor(const OrbitRecord& orbit,
                          const std::vector<IntPoly>& factors, int margin) {
    int found = -1;
    for (size_t fi = 0; fi < factors.size(); ++fi) {
        bool all = true;
        for (const auto& z : orbit.lifted_cycle) {
            UnramifiedElement v = eval_poly(factors[fi], z);
            int k = std::max(1, v.precision() - margin);
            Val2 val = v.val2();
            if (val.finite && val.v < k) {
                all = false;
                break;
            }
        }
        if (!all) continue;
        if (found >= 0)
            throw integrity_error("orbit matches more than one factor");
        found = static_cast<int>(fi);
    }
    if (found < 0) throw integrity_error("orbit matches no factor");
    return found;
}

std::vector<ExceptionalFixedPoint> exceptional_fixed_points() {
    return {
        {0, "0", "outside the punctured disk; fixed by the correspondence"},
        {-1, "-1/2", "unit-coefficient root 2x+1: not integral after scaling"},
    };
}

} // namespace qdyn
