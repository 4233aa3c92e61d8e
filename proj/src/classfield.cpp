/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#include "qdyn/classfield.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qdyn/errors.hpp"
#include "qdyn/modpoly.hpp"
#include "qdyn/resultants.hpp"

namespace qdyn {

namespace {

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
    return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c));
}

// extended gcd: returns g, sets x, y with a x + b y = g
std::int64_t extgcd(std::int64_t a, std::int64_t b, std::int64_t& x,
                    std::int64_t& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return std::llabs(a);
    }
    std::int64_t x1, y1;
    std::int64_t g = extgcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace

bool is_primitive(const QuadForm& g) { return gcd3(g.a, g.b, g.c) == 1; }

bool is_reduced(const QuadForm& g) {
    if (std::llabs(g.b) > g.a || g.a > g.c) return false;
    if ((std::llabs(g.b) == g.a || g.a == g.c) && g.b < 0) return false;
    return true;
}

QuadForm reduce_form(QuadForm g) {
    if (g.a <= 0 || g.disc() >= 0)
        throw domain_error("reduce: not a positive definite form");
    for (int guard = 0; guard < 8000; ++guard) {
        if (g.c < g.a) {
            g = {g.c, -g.b, g.a};
            continue;
        }
        if (g.b > g.a || g.b <= -g.a) {
            // normalize b into (-a, a]
            std::int64_t twoa = 2 * g.a;
            std::int64_t bn = mod_pos(g.b + g.a, twoa) - g.a;
            if (bn == -g.a) bn = g.a;
            std::int64_t k = (g.b - bn) / twoa;
            g = {g.a, bn, g.c - k * g.b + k * k * g.a};
            continue;
        }
        if ((std::llabs(g.b) == g.a || g.a == g.c) && g.b < 0) {
            g = {g.a, -g.b, g.c};
            continue;
        }
        return g;
    }
    throw integrity_error("form reduction did not terminate");
}

QuadForm principal_form(std::int64_t d) {
    if (d <= 0 || d % 4 != 3)
        throw domain_error("principal form needs -d = 1 mod 4");
    return {1, 1, (d + 1) / 4};
}

QuadForm compose_reduce(const QuadForm& f1, const QuadForm& f2) {
    if (f1.disc() != f2.disc())
        throw domain_error("composition of forms of different discriminants");
    if (!is_primitive(f1) || !is_primitive(f2))
        throw domain_error("composition needs primitive forms");
    const std::int64_t D = f1.disc();
    std::int64_t a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b;
    std::int64_t s = (b1 + b2) / 2;
    // e = gcd(a1, a2, s); the composite has A = a1 a2 / e^2 and B
    // satisfying B = b1 mod 2 a1/e, B = b2 mod 2 a2/e, B^2 = D mod 4A
    std::int64_t x, y;
    std::int64_t g12 = extgcd(a1, a2, x, y);
    std::int64_t e = std::gcd(g12, std::llabs(s));
    std::int64_t A = (a1 / e) * (a2 / e);
    std::int64_t m1 = 2 * a1 / e, m2 = 2 * a2 / e;
    // CRT for B mod lcm(m1, m2)
    std::int64_t gm = extgcd(m1, m2, x, y);
    if ((b2 - b1) % gm != 0)
        throw integrity_error("composition congruences are incompatible");
    std::int64_t lcm = m1 / gm * m2;
    // B = b1 + m1 * t, with t = x * (b2-b1)/gm mod (m2/gm)
    std::int64_t t = mod_pos(x % (m2 / gm), m2 / gm);
    t = static_cast<std::int64_t>(
        (__int128)t * mod_pos(((b2 - b1) / gm) % (m2 / gm), m2 / gm) %
        (m2 / gm));
    std::int64_t B0 = b1 + m1 * t;
    B0 = mod_pos(B0, lcm);
    // among B0 + k lcm mod 2A, exactly one satisfies B^2 = D mod 4A
    std::int64_t period = 2 * A;
    for (std::int64_t B = mod_pos(B0, period);; B += lcm) {
        if (B >= mod_pos(B0, period) + period)
            throw integrity_error("no composite middle coefficient found");
        __int128 bb = (__int128)B * B - D;
        if (bb % (4 * A) == 0) {
            std::int64_t C = static_cast<std::int64_t>(bb / (4 * A));
            return reduce_form({A, B, C});
        }
    }
}

QuadForm form_inverse(const QuadForm& g) {
    return reduce_form({g.a, -g.b, g.c});
}

int form_order(const QuadForm& g) {
    std::int64_t d = -g.disc();
    QuadForm id = reduce_form(principal_form(d));
    QuadForm acc = reduce_form(g);
    if (acc == id) return 1;
    QuadForm cur = acc;
    for (int k = 1; k < 4096; ++k) {
        if (cur == id) return k;
        cur = compose_reduce(cur, acc);
    }
    throw integrity_error("order computation exceeded the group bound");
}

std::vector<QuadForm> reduced_forms(std::int64_t d) {
    if (d <= 0 || (d % 4 != 3 && d % 4 != 0))
        throw domain_error("discriminant must be -d with -d = 0 or 1 mod 4");
    std::vector<QuadForm> out;
    for (std::int64_t a = 1; 3 * a * a <= d; ++a) {
        for (std::int64_t b = -a; b <= a; ++b) {
            std::int64_t t = b * b + d;
            if (t % (4 * a)) continue;
            std::int64_t c = t / (4 * a);
            if (c < a) continue;
            if ((std::llabs(b) == a || a == c) && b < 0) continue;
            QuadForm g{a, b, c};
            if (is_primitive(g)) out.push_back(g);
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

int class_number(std::int64_t d) {
    return static_cast<int>(reduced_forms(d).size());
}

int frob2_square_order(std::int64_t d, int b_choice) {
    if (d % 8 != 7)
        throw domain_error("frob2_square_order needs -d = 1 mod 8");
    if (b_choice != 1 && b_choice != 3)
        throw domain_error("norm-2 form uses b = 1 or 3");
    std::int64_t b = b_choice;
    QuadForm f2{2, b, (b * b + d) / 8};
    QuadForm sq = compose_reduce(f2, f2);
    return form_order(sq);
}

std::vector<DiscriminantRecord> discriminants_with_order(int n) {
    if (n < 1) throw domain_error("order must be positive");
    std::int64_t bound = 1;
    for (int i = 0; i <= n; ++i) bound *= 4;  // 4^(n+1)
    std::vector<DiscriminantRecord> out;
    for (std::int64_t d = 7; d < bound; d += 8) {
        int ord = frob2_square_order(d);
        if (ord == n)
            out.push_back({d, class_number(d), ord});
    }
    return out;
}

ClassRelation verify_class_relation(int n) {
    long lhs = 0;
    for (const auto& rec : discriminants_with_order(n)) lhs += rec.h;
    long rhs;
    if (n == 1) {
        rhs = 3;  // 4 - 1: the two exceptional fixed points drop out
    } else {
        rhs = 0;
        for (int k : divisors(n))
            rhs += mobius(n / k) * (1L << (2 * k));
    }
    return {lhs, rhs, lhs == rhs};
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<std::uint64_t> represented_primes(std::int64_t d, int count) {
    if (d <= 0) throw domain_error("represented_primes needs d > 0");
    std::set<std::uint64_t> found;
    std::uint64_t bound = 4096;
    const std::uint64_t kMaxBound = 1ULL << 40;
    while (static_cast<int>(found.size()) < count) {
        found.clear();
        for (std::uint64_t y = 1; d * y * y < bound; ++y) {
            for (std::uint64_t x = 1;; ++x) {
                std::uint64_t v = x * x + d * y * y;
                if (v >= bound) break;
                if (is_prime_u64(v)) found.insert(v);
            }
        }
        if (static_cast<int>(found.size()) >= count) break;
        bound *= 4;
        if (bound > kMaxBound)
            throw capacity_error("prime search bound exhausted");
    }
    std::vector<std::uint64_t> out(found.begin(), found.end());
    out.resize(count);
    return out;
}

bool splits_completely_mod(const IntPoly& g, std::uint64_t q) {
    FqVec f = fq_reduce(g, q);
    if (fq_deg(f) != g.degree()) return false;  // degree dropped mod q
    // distinct linear factors: gcd(f, f') = 1 and x^q = x mod f
    if (fq_deg(fq_gcd(f, fq_derivative(f, q), q)) != 0) return false;
    FqVec x{0, 1};
    FqVec xq = fq_powmod(x, mpz_class(static_cast<unsigned long>(q)), f, q);
    return xq == fq_rem(x, f, q);
}

LabelWitness label_factor_discriminant(const IntPoly& g, int n) {
    if (g.degree() < 2 || g.degree() % 2 != 0)
        throw integrity_error("labeling: factor degree is not twice a class number");
    auto records = discriminants_with_order(n);
    std::vector<DiscriminantRecord> candidates;
    for (const auto& rec : records)
        if (2 * rec.h == g.degree()) candidates.push_back(rec);
    if (candidates.empty())
        throw integrity_error("labeling: no degree-compatible discriminant");
    mpz_class disc_g = discriminant(g);
    auto usable = [&](std::uint64_t q) {
        if (mpz_divisible_ui_p(disc_g.get_mpz_t(), q)) return false;
        if (mpz_divisible_ui_p(g.lc().get_mpz_t(), q)) return false;
        return true;
    };
    const int kPrimeBudget = 10;
    std::vector<LabelWitness> winners;
    for (const auto& cand : candidates) {
        auto primes = represented_primes(cand.d, kPrimeBudget + 4);
        int split = 0, nonsplit = 0;
        LabelWitness w{cand.d, cand.h, {}};
        int tried = 0;
        for (std::uint64_t q : primes) {
            if (!usable(q)) continue;
            if (++tried > kPrimeBudget && split < 3) break;
            if (splits_completely_mod(g, q)) {
                w.split_primes.push_back(q);
                if (++split >= 3) break;
            } else {
                ++nonsplit;
            }
        }
        if (split >= 3) {
            winners.push_back(std::move(w));
        } else if (nonsplit == 0 && split > 0) {
            throw integrity_error(
                "labeling: inconclusive splitting data for d = " +
                std::to_string(cand.d));
        }
    }
    if (winners.empty())
        throw integrity_error("labeling: no candidate split at three primes");
    if (winners.size() > 1)
        throw integrity_error("labeling: ambiguous candidates survived");
    // negative check: every rival candidate must own a represented prime
    // that refuses to split g completely
    for (const auto& cand : candidates) {
        if (cand.d == winners[0].d) continue;
        auto primes = represented_primes(cand.d, kPrimeBudget);
        bool refuted = false;
        for (std::uint64_t q : primes) {
            if (!usable(q)) continue;
            if (!splits_completely_mod(g, q)) {
                refuted = true;
                break;
            }
        }
        if (!refuted)
            throw integrity_error("labeling: rival candidate d = " +
                                  std::to_string(cand.d) +
                                  " not refuted within the prime budget");
    }
    return winners[0];
}

} // namespace qdyn
