/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_RESULTANTS_HPP
#define QDYN_RESULTANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qdyn/bipoly.hpp"
#include "qdyn/resultant.hpp"

namespace qdyn {

/// The iterated-resultant pipeline.  Level n >= 1:
///   level 1 is f(x, x1) itself, and level k eliminates the shared
///   middle variable between level k-1 and a fresh copy of the curve.
/// The diagonal of level n is the degree 2*4^n polynomial whose roots
/// are the period-n cycle starters; the tilde family comes from the
/// rescaled curve.  Results are cached on disk keyed by (kind, n,
/// pipeline version) since level 3 upward is expensive to recompute.
class ResultantPipeline {
public:
    static constexpr int kVersion = 1;
    static constexpr int kDefaultMaxLevel = 4;

    /// cache_dir may be empty: no persistence, everything in memory
    explicit ResultantPipeline(std::string cache_dir = "", int threads = 0,
                               int max_level = kDefaultMaxLevel);

    /// R^(n)(x, x_n) for the plain curve, or the rescaled one
    const BiPoly& iterated_resultant(int n, bool tilde = false);

    IntPoly Rn(int n);        ///< diagonal of level n, monic, degree 2*4^n
    IntPoly Rn_tilde(int n);  ///< diagonal for the rescaled curve
    IntPoly Pn(int n);        ///< minimal-period part by Mobius division
    IntPoly Pn_tilde(int n);

    int max_level() const { return max_level_; }
    const std::string& cache_dir() const { return cache_dir_; }

    struct CongruenceReport {
        struct Item {
            std::string identity;
            int n;
            bool ok;
            std::string detail;  // counterexample payload when !ok
        };
        std::vector<Item> items;
        bool all_ok() const;
    };

    /// degree, monicity, mod-2 shapes, the 2-power scaling identity and
    /// the Mobius reconstitution, for every level up to n_max
    CongruenceReport verify_congruences(int n_max);

    // ---- cache administration ----
    struct CacheEntry {
        std::string file;
        std::string kind;
        int n;
        int version;
        bool valid;
        std::string detail;
    };
    std::vector<CacheEntry> cache_list() const;
    int cache_clear();
    std::vector<CacheEntry> cache_verify();

private:
    std::string cache_dir_;
    int threads_;
    int max_level_;
    // in-memory layers: [tilde][n]
    std::vector<std::optional<BiPoly>> bi_[2];
    std::vector<std::optional<IntPoly>> diag_[2];
    std::vector<std::optional<IntPoly>> pn_[2];

    void check_level(int n) const;
    std::string cache_path(const std::string& kind, int n) const;
    bool load_bipoly(const std::string& kind, int n, BiPoly& out) const;
    void store_bipoly(const std::string& kind, int n, const BiPoly& p) const;
};

/// Mobius function on small integers.
int mobius(int n);

/// divisors of n in increasing order
std::vector<int> divisors(int n);

} // namespace qdyn

#endif
