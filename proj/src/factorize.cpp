/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#include "qdyn/factorize.hpp"

#include <algorithm>
#include <cstdint>

#include "qdyn/errors.hpp"
#include "qdyn/modpoly.hpp"

namespace qdyn {

namespace {

// ---- arithmetic on polynomials with coefficients in Z/M (M = q^K) ----

using ZPoly = std::vector<mpz_class>;  // least-significant first, trimmed

void zm_trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly zm_reduce(const IntPoly& p, const mpz_class& M) {
    ZPoly f(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i)
        mpz_mod(f[i].get_mpz_t(), p.coeff(i).get_mpz_t(), M.get_mpz_t());
    zm_trim(f);
    return f;
}

ZPoly zm_mul(const ZPoly& a, const ZPoly& b, const mpz_class& M) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(),
                       b[j].get_mpz_t());
    }
    for (auto& v : r) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), M.get_mpz_t());
    zm_trim(r);
    return r;
}

ZPoly zm_add(const ZPoly& a, const ZPoly& b, const mpz_class& M) {
    ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
        mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), M.get_mpz_t());
    }
    zm_trim(r);
    return r;
}

ZPoly zm_sub(const ZPoly& a, const ZPoly& b, const mpz_class& M) {
    ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
        mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), M.get_mpz_t());
    }
    zm_trim(r);
    return r;
}

// division by a monic divisor, coefficients mod M
void zm_divmod_monic(const ZPoly& a, const ZPoly& b, ZPoly& quot, ZPoly& rem,
                     const mpz_class& M) {
    rem = a;
    quot.clear();
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(rem.size()) - 1;
    if (da < db) return;
    quot.assign(da - db + 1, mpz_class(0));
    for (int i = da; i >= db; --i) {
        if (rem[i] == 0) continue;
        mpz_class c = rem[i];
        quot[i - db] = c;
        for (int j = 0; j <= db; ++j) {
            mpz_submul(rem[i - db + j].get_mpz_t(), c.get_mpz_t(),
                       b[j].get_mpz_t());
            mpz_mod(rem[i - db + j].get_mpz_t(), rem[i - db + j].get_mpz_t(),
                    M.get_mpz_t());
        }
    }
    zm_trim(rem);
    zm_trim(quot);
}

mpz_class zm_symmetric(const mpz_class& v, const mpz_class& M) {
    return (v * 2 > M) ? mpz_class(v - M) : v;
}

IntPoly zm_to_int_symmetric(const ZPoly& f, const mpz_class& M) {
    std::vector<mpz_class> c(f.size());
    for (size_t i = 0; i < f.size(); ++i) c[i] = zm_symmetric(f[i], M);
    return IntPoly(std::move(c));
}

// ---- Hensel machinery -------------------------------------------------

// one quadratic step: f = g h (mod m), s g + t h = 1 (mod m), h monic.
// updates everything to modulus m^2 (clamped to M).
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t,
                 const mpz_class& m, const mpz_class& M) {
    mpz_class m2 = m * m;
    if (m2 > M) m2 = M;
    ZPoly e = zm_sub(f, zm_mul(g, h, m2), m2);
    ZPoly se = zm_mul(s, e, m2);
    ZPoly qq, rr;
    zm_divmod_monic(se, h, qq, rr, m2);
    ZPoly gstar = zm_add(zm_add(g, zm_mul(t, e, m2), m2), zm_mul(qq, g, m2), m2);
    ZPoly hstar = zm_add(h, rr, m2);
    ZPoly b = zm_sub(zm_add(zm_mul(s, gstar, m2), zm_mul(t, hstar, m2), m2),
                     ZPoly{1}, m2);
    ZPoly sb = zm_mul(s, b, m2);
    ZPoly cc, dd;
    zm_divmod_monic(sb, hstar, cc, dd, m2);
    ZPoly sstar = zm_sub(s, dd, m2);
    ZPoly tstar = zm_sub(zm_sub(t, zm_mul(t, b, m2), m2), zm_mul(cc, gstar, m2),
                         m2);
    g = std::move(gstar);
    h = std::move(hstar);
    s = std::move(sstar);
    t = std::move(tstar);
}

// Bezout over F_q for coprime a, b: s a + t b = 1
void fq_bezout(const FqVec& a, const FqVec& b, FqVec& s, FqVec& t,
               std::uint64_t q) {
    FqVec r0 = a, r1 = b;
    FqVec s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        FqVec quot, rem;
        fq_divmod(r0, r1, quot, rem, q);
        FqVec s2 = fq_sub(s0, fq_mul(quot, s1, q), q);
        FqVec t2 = fq_sub(t0, fq_mul(quot, t1, q), q);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (fq_deg(r0) != 0)
        throw integrity_error("hensel: modular factors not coprime");
    std::uint64_t inv = invmod_u64(r0[0], q);
    s = fq_scalar(s0, inv, q);
    t = fq_scalar(t0, inv, q);
}

ZPoly fq_to_zpoly(const FqVec& f) {
    ZPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = mpz_class(f[i]);
    return r;
}

// F monic over Z/M with F = prod(leaves) mod q; returns monic lifts
// mod M whose product is F mod M.  M is a power of q.
std::vector<ZPoly> hensel_split(const ZPoly& F,
                                const std::vector<FqVec>& leaves,
                                std::uint64_t q, const mpz_class& M) {
    if (leaves.size() == 1) {
        // F is already the lift (monic by construction)
        return {F};
    }
    size_t half = leaves.size() / 2;
    std::vector<FqVec> L(leaves.begin(), leaves.begin() + half);
    std::vector<FqVec> R(leaves.begin() + half, leaves.end());
    FqVec g0{1}, h0{1};
    for (const auto& f : L) g0 = fq_mul(g0, f, q);
    for (const auto& f : R) h0 = fq_mul(h0, f, q);
    FqVec s0, t0;
    fq_bezout(g0, h0, s0, t0, q);
    ZPoly g = fq_to_zpoly(g0), h = fq_to_zpoly(h0);
    ZPoly s = fq_to_zpoly(s0), t = fq_to_zpoly(t0);
    mpz_class m(static_cast<unsigned long>(q));
    while (m < M) {
        hensel_step(F, g, h, s, t, m, M);
        m = m * m;
        if (m > M) m = M;
    }
    // recurse with exact sub-products
    auto left = hensel_split(g, L, q, M);
    auto right = hensel_split(h, R, q, M);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

// ---- recombination -----------------------------------------------------

struct Piece {
    ZPoly lifted;       // monic mod M
    int degree;
    mpz_class tc;       // value at 0 (mod M)
    mpz_class at1;      // value at 1 (mod M)
    mpz_class atm1;     // value at -1 (mod M)
};

mpz_class zm_eval(const ZPoly& f, long x, const mpz_class& M) {
    mpz_class acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        acc = acc * x + *it;
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), M.get_mpz_t());
    }
    return acc;
}

struct Recombiner {
    const mpz_class& M;
    mpz_class bound;            // Landau-Mignotte style coefficient bound
    std::vector<Piece> pool;
    IntPoly f;                  // monic remaining cofactor over Z
    mpz_class f0, f1, fm1;      // f(0), f(1), f(-1)
    mpz_class degree_mask;      // bit j set iff a degree-j factor is possible
    std::vector<IntPoly> out;

    Recombiner(const mpz_class& M_, const IntPoly& f_, mpz_class bound_,
               mpz_class mask)
        : M(M_), bound(std::move(bound_)), f(f_), degree_mask(std::move(mask)) {
        refresh_evals();
    }

    void refresh_evals() {
        f0 = f.eval(0);
        f1 = f.eval(1);
        fm1 = f.eval(-1);
    }

    bool degree_allowed(int d) const {
        return mpz_tstbit(degree_mask.get_mpz_t(), d) != 0;
    }

    // full test once the cheap running products survived
    bool leaf(const std::vector<int>& subset, const mpz_class& ptc,
              const mpz_class& p1, const mpz_class& pm1) {
        auto value_test = [&](const mpz_class& fval, const mpz_class& prod0) {
            if (fval == 0) return true;
            mpz_class prod = zm_symmetric(prod0, M);
            if (prod == 0) return false;
            return mpz_divisible_p(fval.get_mpz_t(), prod.get_mpz_t()) != 0;
        };
        if (!value_test(f0, ptc)) return false;
        if (!value_test(f1, p1)) return false;
        if (!value_test(fm1, pm1)) return false;
        ZPoly prod{1};
        for (int i : subset) prod = zm_mul(prod, pool[i].lifted, M);
        IntPoly cand = zm_to_int_symmetric(prod, M);
        if (cand.max_abs_coeff() > bound) return false;
        IntPoly quot, rem;
        if (!try_divide(f, cand, quot, rem) || !rem.is_zero()) return false;
        // found a true factor
        out.push_back(cand.primitive_part());
        f = quot;
        refresh_evals();
        std::vector<Piece> rest;
        std::vector<bool> used(pool.size(), false);
        for (int i : subset) used[i] = true;
        for (size_t i = 0; i < pool.size(); ++i)
            if (!used[i]) rest.push_back(std::move(pool[i]));
        pool = std::move(rest);
        return true;
    }

    // enumerate subsets of fixed cardinality c restricted to indices in
    // `candidates`; a found factor restarts the caller (return true)
    bool search_cardinality(int c, const std::vector<int>& candidates) {
        std::vector<int> subset;
        return dfs(c, 0, candidates, subset, 0, 1, 1, 1);
    }

    bool dfs(int c, size_t start, const std::vector<int>& candidates,
             std::vector<int>& subset, int dsum, const mpz_class& ptc,
             const mpz_class& p1, const mpz_class& pm1) {
        if (static_cast<int>(subset.size()) == c) {
            if (dsum == 0 || dsum > f.degree() || !degree_allowed(dsum))
                return false;
            return leaf(subset, ptc, p1, pm1);
        }
        if (candidates.size() - start <
            static_cast<size_t>(c) - subset.size())
            return false;
        for (size_t i = start; i < candidates.size(); ++i) {
            const Piece& pc = pool[candidates[i]];
            if (dsum + pc.degree > f.degree()) continue;
            subset.push_back(candidates[i]);
            mpz_class ntc = ptc * pc.tc;
            mpz_mod(ntc.get_mpz_t(), ntc.get_mpz_t(), M.get_mpz_t());
            mpz_class n1 = p1 * pc.at1;
            mpz_mod(n1.get_mpz_t(), n1.get_mpz_t(), M.get_mpz_t());
            mpz_class nm1 = pm1 * pc.atm1;
            mpz_mod(nm1.get_mpz_t(), nm1.get_mpz_t(), M.get_mpz_t());
            if (dfs(c, i + 1, candidates, subset, dsum + pc.degree, ntc, n1,
                    nm1)) {
                subset.pop_back();
                return true;
            }
            subset.pop_back();
        }
        return false;
    }

    void run(int cap) {
        bool restart = true;
        while (restart && !pool.empty()) {
            restart = false;
            int half = static_cast<int>(pool.size()) / 2;
            // stage 1: homogeneous-degree subsets
            for (int c = 1; c <= std::min(cap, half) && !restart; ++c) {
                std::vector<int> degs;
                for (const auto& p : pool)
                    if (std::find(degs.begin(), degs.end(), p.degree) ==
                        degs.end())
                        degs.push_back(p.degree);
                std::sort(degs.begin(), degs.end());
                for (int d : degs) {
                    std::vector<int> idx;
                    for (size_t i = 0; i < pool.size(); ++i)
                        if (pool[i].degree == d)
                            idx.push_back(static_cast<int>(i));
                    if (static_cast<int>(idx.size()) < c) continue;
                    if (search_cardinality(c, idx)) {
                        restart = true;
                        break;
                    }
                }
            }
            if (restart) continue;
            // stage 2: general subsets up to the cap
            std::vector<int> all(pool.size());
            for (size_t i = 0; i < pool.size(); ++i)
                all[i] = static_cast<int>(i);
            for (int c = 1; c <= std::min(cap, half) && !restart; ++c)
                restart = search_cardinality(c, all);
            if (restart) continue;
            // stage 3: exhaustive beyond the cap, still pruned
            for (int c = cap + 1; c <= half && !restart; ++c)
                restart = search_cardinality(c, all);
            if (!restart) {
                // no subset of at most half the pool divides f, so the
                // remaining product is a single irreducible factor
                out.push_back(f.primitive_part());
                pool.clear();
            }
        }
    }
};

mpz_class subset_sum_mask(const std::vector<int>& degrees, int maxdeg) {
    mpz_class bits = 1;
    for (int d : degrees) {
        mpz_class shifted;
        mpz_mul_2exp(shifted.get_mpz_t(), bits.get_mpz_t(), d);
        mpz_ior(bits.get_mpz_t(), bits.get_mpz_t(), shifted.get_mpz_t());
    }
    mpz_class mask = 0;
    for (int j = 0; j <= maxdeg; ++j)
        if (mpz_tstbit(bits.get_mpz_t(), j)) mpz_setbit(mask.get_mpz_t(), j);
    return mask;
}

std::vector<std::uint64_t> small_primes(int count) {
    std::vector<std::uint64_t> ps;
    std::uint64_t n = 3;
    while (static_cast<int>(ps.size()) < count) {
        bool prime = true;
        for (std::uint64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) {
                prime = false;
                break;
            }
        if (prime) ps.push_back(n);
        n += 2;
    }
    return ps;
}

// factor a MONIC squarefree integer polynomial
std::vector<IntPoly> factor_monic(const IntPoly& f, const FactorOptions& opt) {
    if (f.lc() != 1)
        throw integrity_error("factor_monic: leading coefficient is not 1");
    int d = f.degree();
    if (d <= 1) return {f};

    // ---- prime selection ----
    auto primes = small_primes(opt.prime_tries);
    struct Census {
        std::uint64_t q;
        int nfactors;
        std::vector<int> degrees;
    };
    std::vector<Census> good;
    for (std::uint64_t q : primes) {
        if (mpz_fdiv_ui(f.lc().get_mpz_t(), q) == 0) continue;
        FqVec fq = fq_reduce(f, q);
        if (fq_deg(fq) != d) continue;
        if (fq_deg(fq_gcd(fq, fq_derivative(fq, q), q)) != 0) continue;
        Census c;
        c.q = q;
        c.degrees.clear();
        auto ddf = fq_distinct_degree(fq_monic(fq, q), q);
        c.nfactors = 0;
        for (const auto& [g, dd] : ddf) {
            int k = fq_deg(g) / dd;
            c.nfactors += k;
            for (int i = 0; i < k; ++i) c.degrees.push_back(dd);
        }
        good.push_back(std::move(c));
        if (static_cast<int>(good.size()) >= opt.census_size) break;
    }
    if (good.empty())
        throw integrity_error(
            "factorization: no good prime among the tried candidates");

    auto best = std::min_element(good.begin(), good.end(),
                                 [](const Census& a, const Census& b) {
                                     if (a.nfactors != b.nfactors)
                                         return a.nfactors < b.nfactors;
                                     return a.q < b.q;
                                 });
    if (best->nfactors == 1) return {f};

    // possible factor degrees: intersect subset sums over a few censuses
    mpz_class mask = subset_sum_mask(best->degrees, d);
    {
        int used = 1;
        for (const auto& c : good) {
            if (used >= opt.mask_primes) break;
            if (c.q == best->q) continue;
            mpz_class m2 = subset_sum_mask(c.degrees, d);
            mpz_and(mask.get_mpz_t(), mask.get_mpz_t(), m2.get_mpz_t());
            ++used;
        }
    }

    std::uint64_t q = best->q;
    FqVec fq = fq_monic(fq_reduce(f, q), q);
    auto modfactors = fq_factor(fq, q);
    std::vector<FqVec> leaves;
    for (const auto& [g, m] : modfactors) {
        if (m != 1)
            throw integrity_error("factorization: multiplicity at good prime");
        leaves.push_back(g);
    }

    // ---- lifting bound ----
    // Landau-Mignotte style: factors of f have coefficients bounded by
    // 2^d * (d+1) * H(f) for monic f
    mpz_class H = f.max_abs_coeff();
    mpz_class B = H * (d + 1);
    mpz_mul_2exp(B.get_mpz_t(), B.get_mpz_t(), d);
    mpz_class target = 2 * B + 1;
    mpz_class M(static_cast<unsigned long>(q));
    while (M < target) M = M * M;

    ZPoly F = zm_reduce(f, M);
    auto lifted = hensel_split(F, leaves, q, M);

    Recombiner rec(M, f, B, mask);
    rec.pool.reserve(lifted.size());
    for (auto& g : lifted) {
        Piece p;
        p.degree = static_cast<int>(g.size()) - 1;
        p.tc = g.empty() ? mpz_class(0) : g[0];
        p.at1 = zm_eval(g, 1, M);
        p.atm1 = zm_eval(g, -1, M);
        p.lifted = std::move(g);
        rec.pool.push_back(std::move(p));
    }
    // deterministic order: by degree, then lexicographic coefficients
    std::sort(rec.pool.begin(), rec.pool.end(),
              [](const Piece& a, const Piece& b) {
                  if (a.degree != b.degree) return a.degree < b.degree;
                  return a.lifted < b.lifted;
              });
    rec.run(opt.subset_cap);
    return rec.out;
}

} // namespace

std::vector<IntPoly> factor_squarefree_over_Z(const IntPoly& p0,
                                              const FactorOptions& opt) {
    if (p0.is_zero() || p0.degree() == 0)
        throw domain_error("factor: constant input");
    IntPoly p = p0.primitive_part();
    if (!is_squarefree(p))
        throw domain_error("factor: input is not squarefree");

    std::vector<IntPoly> out;
    // x divides at most once (squarefree)
    if (p.coeff(0) == 0) {
        out.push_back(IntPoly({0, 1}));
        std::vector<mpz_class> c(p.coeffs().begin() + 1, p.coeffs().end());
        p = IntPoly(std::move(c));
    }
    if (p.degree() >= 1) {
        if (p.lc() == 1) {
            auto fs = factor_monic(p, opt);
            out.insert(out.end(), fs.begin(), fs.end());
        } else {
            // monicize: q(x) = L^(d-1) p(x/L), so q_i = p_i L^(d-1-i)
            const mpz_class L = p.lc();
            int d = p.degree();
            std::vector<mpz_class> c(d + 1);
            c[d] = 1;
            mpz_class pw = 1;
            for (int i = d - 1; i >= 0; --i) {
                c[i] = p.coeff(i) * pw;
                pw *= L;
            }
            IntPoly monic = IntPoly(std::move(c));
            auto fs = factor_monic(monic, opt);
            for (auto& g : fs)
                out.push_back(g.scale_arg(L).primitive_part());
        }
    }
    // integrity: the product must reproduce the input up to sign
    IntPoly prod = IntPoly({1});
    for (const auto& g : out) prod = prod * g;
    if (prod != p0.primitive_part() && prod != -p0.primitive_part())
        throw integrity_error("factorization product mismatch");
    std::sort(out.begin(), out.end(), [](const IntPoly& a, const IntPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.coeffs() < b.coeffs();
    });
    return out;
}

} // namespace qdyn
