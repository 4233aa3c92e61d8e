/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#include "qdyn/resultants.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdyn/errors.hpp"

namespace fs = std::filesystem;

namespace qdyn {

int mobius(int n) {
    if (n < 1) throw domain_error("mobius of a nonpositive integer");
    int count = 0;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        ++count;
        if (n % p == 0) return 0;
    }
    if (n > 1) ++count;
    return count % 2 ? -1 : 1;
}

std::vector<int> divisors(int n) {
    std::vector<int> out;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

ResultantPipeline::ResultantPipeline(std::string cache_dir, int threads,
                                     int max_level)
    : cache_dir_(std::move(cache_dir)), threads_(threads),
      max_level_(max_level) {
    for (int t = 0; t < 2; ++t) {
        bi_[t].resize(max_level_ + 1);
        diag_[t].resize(max_level_ + 1);
        pn_[t].resize(max_level_ + 1);
    }
    if (!cache_dir_.empty()) fs::create_directories(cache_dir_);
}

void ResultantPipeline::check_level(int n) const {
    if (n < 1) throw domain_error("level must be at least 1");
    if (n > max_level_)
        throw capacity_error("level " + std::to_string(n) +
                             " exceeds the configured maximum " +
                             std::to_string(max_level_));
}

std::string ResultantPipeline::cache_path(const std::string& kind,
                                          int n) const {
    return cache_dir_ + "/" + kind + "_" + std::to_string(n) + ".txt";
}

bool ResultantPipeline::load_bipoly(const std::string& kind, int n,
                                    BiPoly& out) const {
    if (cache_dir_.empty()) return false;
    std::ifstream in(cache_path(kind, n));
    if (!in) return false;
    std::string k;
    int nn, ver;
    if (!(in >> k >> nn >> ver)) return false;
    if (k != kind || nn != n || ver != kVersion) return false;
    try {
        out = BiPoly::read(in);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

void ResultantPipeline::store_bipoly(const std::string& kind, int n,
                                     const BiPoly& p) const {
    if (cache_dir_.empty()) return;
    std::string path = cache_path(kind, n);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << kind << ' ' << n << ' ' << kVersion << '\n';
        p.write(out);
    }
    fs::rename(tmp, path);
}

const BiPoly& ResultantPipeline::iterated_resultant(int n, bool tilde) {
    check_level(n);
    auto& slot = bi_[tilde ? 1 : 0][n];
    if (slot) return *slot;
    const std::string kind = tilde ? "Rt_bi" : "R_bi";
    BiPoly loaded;
    if (load_bipoly(kind, n, loaded)) {
        slot = std::move(loaded);
        return *slot;
    }
    BiPoly curve = tilde ? curve_f1() : curve_f();
    if (n == 1) {
        slot = curve;
    } else {
        const BiPoly& prev = iterated_resultant(n - 1, tilde);
        slot = resultant_elim(prev, curve, threads_);
    }
    store_bipoly(kind, n, *slot);
    return *slot;
}

IntPoly ResultantPipeline::Rn(int n) {
    check_level(n);
    auto& slot = diag_[0][n];
    if (!slot) slot = iterated_resultant(n, false).diagonal();
    return *slot;
}

IntPoly ResultantPipeline::Rn_tilde(int n) {
    check_level(n);
    auto& slot = diag_[1][n];
    if (!slot) slot = iterated_resultant(n, true).diagonal();
    return *slot;
}

IntPoly ResultantPipeline::Pn(int n) {
    check_level(n);
    auto& slot = pn_[0][n];
    if (slot) return *slot;
    // numerator: product of R_k with mu(n/k) = +1; denominator with -1;
    // fully multiplied before one exact division
    IntPoly num({1}), den({1});
    for (int k : divisors(n)) {
        int mu = mobius(n / k);
        if (mu == 1) num = num * Rn(k);
        else if (mu == -1) den = den * Rn(k);
    }
    slot = exact_div(num, den);
    return *slot;
}

IntPoly ResultantPipeline::Pn_tilde(int n) {
    check_level(n);
    auto& slot = pn_[1][n];
    if (slot) return *slot;
    IntPoly num({1}), den({1});
    for (int k : divisors(n)) {
        int mu = mobius(n / k);
        if (mu == 1) num = num * Rn_tilde(k);
        else if (mu == -1) den = den * Rn_tilde(k);
    }
    slot = exact_div(num, den);
    return *slot;
}

bool ResultantPipeline::CongruenceReport::all_ok() const {
    for (const auto& item : items)
        if (!item.ok) return false;
    return true;
}

ResultantPipeline::CongruenceReport
ResultantPipeline::verify_congruences(int n_max) {
    check_level(n_max);
    CongruenceReport rep;
    auto push = [&](const std::string& id, int n, bool ok,
                    const std::string& detail = "") {
        rep.items.push_back({id, n, ok, detail});
    };
    mpz_class two = 2;
    for (int n = 1; n <= n_max; ++n) {
        long deg_target = 2L * (1L << (2 * n));  // 2*4^n
        IntPoly rn = Rn(n);
        push("deg R_n = 2*4^n", n, rn.degree() == deg_target,
             "deg = " + std::to_string(rn.degree()));
        push("R_n monic", n, rn.lc() == 1, rn.lc().get_str());

        // R^(n) mod 2 == x_n^(4^n) (x+1)^(4^n)
        {
            const BiPoly& bi = iterated_resultant(n, false);
            long q = 1L << (2 * n);
            BiPoly expect =
                BiPoly::from_v(IntPoly::monomial(q)) *
                BiPoly::from_u(([&] {
                    // (x+1)^q mod 2 = x^q + 1
                    IntPoly p = IntPoly::monomial(q) + IntPoly({1});
                    return p;
                })());
            push("R^(n) = x_n^(4^n)(x+1)^(4^n) mod 2", n,
                 bi.reduced_mod(two) == expect.reduced_mod(two));
        }

        // Rtilde_n mod 2 == x^(4^n) + x
        {
            IntPoly rt = Rn_tilde(n);
            long q = 1L << (2 * n);
            IntPoly expect = IntPoly::monomial(q) + IntPoly({0, 1});
            push("Rtilde_n = x^(4^n) + x mod 2", n,
                 rt.reduced_mod(two) == expect);
        }

        // scaling: R_n(2x) = 2^(4^n) Rtilde_n(x)
        {
            IntPoly lhs = rn.scale_arg(2);
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 2, 1UL << (2 * n));
            IntPoly rhs = Rn_tilde(n) * scale;
            push("R_n(2x) = 2^(4^n) Rtilde_n(x)", n, lhs == rhs);
        }

        // Mobius reconstitution: prod_{k|n} P_k == R_n
        {
            IntPoly prod({1});
            for (int k : divisors(n)) prod = prod * Pn(k);
            push("prod P_k = R_n over divisors", n, prod == rn);
        }

        // degree of P_n per the divisor sum
        {
            long expect = 0;
            for (int k : divisors(n))
                expect += mobius(n / k) * (2L << (2 * k));  // 2*4^k
            push("deg P_n = 2 sum mu(n/k) 4^k", n,
                 Pn(n).degree() == expect,
                 "deg = " + std::to_string(Pn(n).degree()));
        }
    }
    return rep;
}

std::vector<ResultantPipeline::CacheEntry>
ResultantPipeline::cache_list() const {
    std::vector<CacheEntry> out;
    if (cache_dir_.empty() || !fs::exists(cache_dir_)) return out;
    for (const auto& e : fs::directory_iterator(cache_dir_)) {
        if (!e.is_regular_file()) continue;
        if (e.path().extension() != ".txt") continue;
        CacheEntry ce;
        ce.file = e.path().filename().string();
        std::ifstream in(e.path());
        if (in >> ce.kind >> ce.n >> ce.version) {
            ce.valid = true;
        } else {
            ce.valid = false;
            ce.detail = "unreadable header";
        }
        out.push_back(std::move(ce));
    }
    std::sort(out.begin(), out.end(),
              [](const CacheEntry& a, const CacheEntry& b) {
                  return a.file < b.file;
              });
    return out;
}

int ResultantPipeline::cache_clear() {
    int removed = 0;
    if (cache_dir_.empty() || !fs::exists(cache_dir_)) return removed;
    for (const auto& e : fs::directory_iterator(cache_dir_)) {
        if (!e.is_regular_file()) continue;
        if (e.path().extension() != ".txt") continue;
        fs::remove(e.path());
        ++removed;
    }
    return removed;
}

std::vector<ResultantPipeline::CacheEntry> ResultantPipeline::cache_verify() {
    auto entries = cache_list();
    for (auto& ce : entries) {
        if (!ce.valid) continue;
        BiPoly p;
        if (!load_bipoly(ce.kind, ce.n, p)) {
            ce.valid = false;
            ce.detail = "failed to reload";
            continue;
        }
        long q = 1L << (2 * ce.n);
        if (p.deg_u() != q || p.deg_v() != q) {
            ce.valid = false;
            ce.detail = "degree grid mismatch";
            continue;
        }
        IntPoly diag = p.diagonal();
        if (diag.degree() != 2 * q) {
            ce.valid = false;
            ce.detail = "diagonal degree mismatch";
            continue;
        }
        if (ce.kind == "R_bi" && diag.lc() != 1) {
            ce.valid = false;
            ce.detail = "diagonal not monic";
        }
    }
    return entries;
}

} // namespace qdyn
