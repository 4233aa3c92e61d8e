/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#include "qdyn/modpoly.hpp"

#include <algorithm>

#include "qdyn/errors.hpp"

namespace qdyn {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % q);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
    std::uint64_t r = 1 % q;
    a %= q;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, q);
        a = mulmod_u64(a, a, q);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t q) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(q),
                 nr = static_cast<std::int64_t>(a % q);
    while (nr != 0) {
        std::int64_t k = r / nr;
        std::int64_t tmp = t - k * nt;
        t = nt;
        nt = tmp;
        tmp = r - k * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw domain_error("invmod: not invertible");
    if (t < 0) t += static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(t);
}

int fq_deg(const FqVec& f) { return static_cast<int>(f.size()) - 1; }

void fq_trim(FqVec& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FqVec fq_reduce(const IntPoly& p, std::uint64_t q) {
    FqVec f(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i)
        f[i] = mpz_fdiv_ui(p.coeff(i).get_mpz_t(), q);
    fq_trim(f);
    return f;
}

IntPoly fq_to_intpoly(const FqVec& f) {
    std::vector<mpz_class> c(f.size());
    for (size_t i = 0; i < f.size(); ++i) c[i] = mpz_class(f[i]);
    return IntPoly(std::move(c));
}

FqVec fq_add(const FqVec& a, const FqVec& b, std::uint64_t q) {
    FqVec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = s >= q ? s - q : s;
    }
    fq_trim(r);
    return r;
}

FqVec fq_sub(const FqVec& a, const FqVec& b, std::uint64_t q) {
    FqVec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = x >= y ? x - y : x + q - y;
    }
    fq_trim(r);
    return r;
}

FqVec fq_mul(const FqVec& a, const FqVec& b, std::uint64_t q) {
    if (a.empty() || b.empty()) return {};
    FqVec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            r[i + j] = (r[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % q;
        }
    }
    fq_trim(r);
    return r;
}

FqVec fq_scalar(const FqVec& a, std::uint64_t c, std::uint64_t q) {
    FqVec r = a;
    for (auto& v : r) v = mulmod_u64(v, c, q);
    fq_trim(r);
    return r;
}

void fq_divmod(const FqVec& a, const FqVec& b, FqVec& quot, FqVec& rem,
               std::uint64_t q) {
    if (b.empty()) throw domain_error("fq division by zero");
    rem = a;
    quot.clear();
    int db = fq_deg(b);
    if (fq_deg(a) < db) return;
    quot.assign(a.size() - b.size() + 1, 0);
    std::uint64_t linv = invmod_u64(b.back(), q);
    for (int i = fq_deg(rem); i >= db; --i) {
        if (static_cast<int>(rem.size()) <= i || rem[i] == 0) continue;
        std::uint64_t c = mulmod_u64(rem[i], linv, q);
        quot[i - db] = c;
        for (int j = 0; j <= db; ++j) {
            std::uint64_t s = mulmod_u64(c, b[j], q);
            std::uint64_t& t = rem[i - db + j];
            t = t >= s ? t - s : t + q - s;
        }
    }
    fq_trim(rem);
    fq_trim(quot);
}

FqVec fq_rem(const FqVec& a, const FqVec& b, std::uint64_t q) {
    FqVec quot, rem;
    fq_divmod(a, b, quot, rem, q);
    return rem;
}

FqVec fq_monic(const FqVec& a, std::uint64_t q) {
    if (a.empty()) return a;
    return fq_scalar(a, invmod_u64(a.back(), q), q);
}

FqVec fq_gcd(FqVec a, FqVec b, std::uint64_t q) {
    while (!b.empty()) {
        FqVec r = fq_rem(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    return fq_monic(a, q);
}

FqVec fq_derivative(const FqVec& a, std::uint64_t q) {
    if (a.size() <= 1) return {};
    FqVec r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i)
        r[i - 1] = mulmod_u64(a[i], i % q, q);
    fq_trim(r);
    return r;
}

FqVec fq_powmod(const FqVec& base, const mpz_class& e, const FqVec& m,
                std::uint64_t q) {
    if (e == 0) return FqVec{1};
    FqVec r{1};
    FqVec b = fq_rem(base, m, q);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = fq_rem(fq_mul(r, r, q), m, q);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = fq_rem(fq_mul(r, b, q), m, q);
    }
    return r;
}

namespace {

// characteristic-p p-th root: all exponents are multiples of p and
// coefficients are Frobenius-fixed in the prime field
FqVec fq_pth_root(const FqVec& f, std::uint64_t q) {
    FqVec r(f.size() / q + 1, 0);
    for (size_t i = 0; i * q < f.size(); ++i) r[i] = f[i * q];
    fq_trim(r);
    return r;
}

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

std::vector<std::pair<FqVec, int>> fq_squarefree_decomp(const FqVec& f0,
                                                        std::uint64_t q) {
    std::vector<std::pair<FqVec, int>> out;
    FqVec f = fq_monic(f0, q);
    int e = 1;
    while (fq_deg(f) > 0) {
        FqVec fp = fq_derivative(f, q);
        if (fp.empty()) {
            f = fq_pth_root(f, q);
            e *= static_cast<int>(q);
            continue;
        }
        FqVec c = fq_gcd(f, fp, q);
        FqVec w;
        {
            FqVec quot, rem;
            fq_divmod(f, c, quot, rem, q);
            w = quot;
        }
        int j = 1;
        while (fq_deg(w) > 0) {
            FqVec y = fq_gcd(w, c, q);
            FqVec z, rem;
            fq_divmod(w, y, z, rem, q);
            if (fq_deg(z) > 0) out.emplace_back(fq_monic(z, q), e * j);
            FqVec cq;
            fq_divmod(c, y, cq, rem, q);
            c = cq;
            w = y;
            ++j;
        }
        if (fq_deg(c) > 0) {
            f = fq_pth_root(c, q);
            e *= static_cast<int>(q);
        } else {
            break;
        }
    }
    return out;
}

std::vector<std::pair<FqVec, int>> fq_distinct_degree(const FqVec& f,
                                                      std::uint64_t q) {
    std::vector<std::pair<FqVec, int>> out;
    FqVec g = fq_monic(f, q);
    FqVec x{0, 1};
    FqVec h = fq_rem(x, g, q);
    int i = 0;
    while (fq_deg(g) >= 2 * (i + 1)) {
        ++i;
        h = fq_powmod(h, mpz_class(q), g, q);
        FqVec d = fq_gcd(g, fq_sub(h, x, q), q);
        if (fq_deg(d) > 0) {
            out.emplace_back(d, i);
            FqVec quot, rem;
            fq_divmod(g, d, quot, rem, q);
            g = quot;
            h = fq_rem(h, g, q);
        }
    }
    if (fq_deg(g) > 0) out.emplace_back(g, fq_deg(g));
    return out;
}

std::vector<FqVec> fq_equal_degree(const FqVec& f0, int d, std::uint64_t q) {
    std::vector<FqVec> out;
    FqVec f = fq_monic(f0, q);
    if (fq_deg(f) == d) {
        out.push_back(f);
        return out;
    }
    std::uint64_t state = 0xC0FFEE ^ (q << 16) ^ static_cast<std::uint64_t>(d);
    for (auto c : f) state ^= splitmix64(state) + c;
    mpz_class qd_half;
    if (q != 2) {
        mpz_class qz(static_cast<unsigned long>(q));
        mpz_pow_ui(qd_half.get_mpz_t(), qz.get_mpz_t(), d);
        qd_half = (qd_half - 1) / 2;
    }
    FqVec split;
    for (int tries = 0; tries < 512; ++tries) {
        FqVec a(fq_deg(f), 0);
        for (auto& v : a) v = splitmix64(state) % q;
        fq_trim(a);
        if (a.empty()) continue;
        FqVec g = fq_gcd(f, a, q);
        if (fq_deg(g) > 0 && fq_deg(g) < fq_deg(f)) {
            split = g;
            break;
        }
        FqVec b;
        if (q == 2) {
            // trace map a + a^2 + a^4 + ... + a^(2^(d-1)) mod f
            b = fq_rem(a, f, q);
            FqVec t = b;
            for (int k = 1; k < d; ++k) {
                t = fq_rem(fq_mul(t, t, q), f, q);
                b = fq_add(b, t, q);
            }
        } else {
            b = fq_powmod(a, qd_half, f, q);
            b = fq_sub(b, FqVec{1}, q);
        }
        g = fq_gcd(f, b, q);
        if (fq_deg(g) > 0 && fq_deg(g) < fq_deg(f)) {
            split = g;
            break;
        }
    }
    if (split.empty())
        throw convergence_error("equal-degree splitting failed to split");
    FqVec quot, rem;
    fq_divmod(f, split, quot, rem, q);
    auto left = fq_equal_degree(split, d, q);
    auto right = fq_equal_degree(quot, d, q);
    out.insert(out.end(), left.begin(), left.end());
    out.insert(out.end(), right.begin(), right.end());
    return out;
}

std::vector<std::pair<FqVec, int>> fq_factor(const FqVec& f, std::uint64_t q) {
    std::vector<std::pair<FqVec, int>> out;
    if (fq_deg(f) <= 0) return out;
    for (const auto& [g, mult] : fq_squarefree_decomp(f, q)) {
        for (const auto& [h, d] : fq_distinct_degree(g, q)) {
            if (fq_deg(h) == d) {
                out.emplace_back(h, mult);
                continue;
            }
            for (const auto& irr : fq_equal_degree(h, d, q))
                out.emplace_back(irr, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (fq_deg(a.first) != fq_deg(b.first))
            return fq_deg(a.first) < fq_deg(b.first);
        if (a.first != b.first)
            return std::lexicographical_compare(a.first.begin(), a.first.end(),
                                                b.first.begin(), b.first.end());
        return a.second < b.second;
    });
    return out;
}

int fq_count_irreducible_factors(const FqVec& f, std::uint64_t q) {
    int count = 0;
    for (const auto& [g, d] : fq_distinct_degree(f, q))
        count += fq_deg(g) / d;
    return count;
}

ModFactorization factor_mod_q(const IntPoly& p, std::uint64_t q) {
    if (p.is_zero()) throw domain_error("factor_mod_q: zero polynomial");
    if (mpz_fdiv_ui(p.lc().get_mpz_t(), q) == 0)
        throw domain_error("factor_mod_q: q divides the leading coefficient");
    FqVec f = fq_reduce(p, q);
    ModFactorization res;
    res.lead = f.back();
    for (const auto& [g, m] : fq_factor(f, q))
        res.factors.emplace_back(fq_to_intpoly(g), m);
    return res;
}

} // namespace qdyn
