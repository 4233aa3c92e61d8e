/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#include "qdyn/padic.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "qdyn/errors.hpp"

namespace qdyn {

// ---- F_2[x] on machine words -------------------------------------------

namespace {

int f2_deg(std::uint64_t p) { return p ? 63 - __builtin_clzll(p) : -1; }

std::uint64_t f2_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    std::uint64_t r = 0;
    int dm = f2_deg(mod);
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (f2_deg(a) == dm) a ^= mod;
    }
    return r;
}

std::uint64_t f2_mod(std::uint64_t a, std::uint64_t mod) {
    int dm = f2_deg(mod);
    for (int d = f2_deg(a); d >= dm; d = f2_deg(a))
        a ^= mod << (d - dm);
    return a;
}

std::uint64_t f2_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t r = f2_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

// x^(2^k) mod `mod`
std::uint64_t f2_x_pow_2k(int k, std::uint64_t mod) {
    std::uint64_t r = 2;  // x
    for (int i = 0; i < k; ++i) r = f2_mulmod(r, r, mod);
    return r;
}

bool f2_irreducible(std::uint64_t p, int m) {
    if (f2_deg(p) != m) return false;
    if (f2_x_pow_2k(m, p) != 2) return false;
    for (int q = 2; q <= m; ++q) {
        if (m % q) continue;
        bool prime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) prime = false;
        if (!prime) continue;
        std::uint64_t h = f2_x_pow_2k(m / q, p) ^ 2ULL;  // x^(2^(m/q)) - x
        if (f2_deg(f2_gcd(p, h)) != 0) return false;
    }
    return true;
}

} // namespace

const Extension& Extension::of_degree(int m) {
    if (m < 1 || m > 32) throw domain_error("extension degree out of range");
    static std::map<int, Extension> table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(m);
    if (it != table.end()) return it->second;
    std::uint64_t best = 0;
    if (m == 1) {
        best = 2;  // U = x
    } else {
        std::uint64_t top = 1ULL << m;
        for (std::uint64_t low = 0; low < top; ++low) {
            if (f2_irreducible(top | low, m)) {
                best = top | low;
                break;
            }
        }
        if (!best) throw integrity_error("no irreducible polynomial found");
    }
    Extension e;
    e.m = m;
    e.modulus_bits = best;
    e.modulus.assign(m + 1, 0);
    for (int i = 0; i <= m; ++i)
        e.modulus[i] = (best >> i) & 1;
    return table.emplace(m, std::move(e)).first->second;
}

// ---- ResidueElement ------------------------------------------------------

ResidueElement ResidueElement::operator+(const ResidueElement& o) const {
    return ResidueElement(*ext_, bits_ ^ o.bits_);
}

ResidueElement ResidueElement::operator*(const ResidueElement& o) const {
    return ResidueElement(*ext_, f2_mulmod(bits_, o.bits_, ext_->modulus_bits));
}

ResidueElement ResidueElement::pow(std::uint64_t e) const {
    ResidueElement r(*ext_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

ResidueElement ResidueElement::inverse() const {
    if (bits_ == 0) throw domain_error("residue inverse of zero");
    return pow((1ULL << ext_->m) - 2);  // Fermat
}

// ---- UnramifiedElement ---------------------------------------------------

UnramifiedElement::UnramifiedElement(const Extension& ext, int N)
    : ext_(&ext), N_(N), prec_(N), c_(ext.m, mpz_class(0)) {
    if (N < 1) throw domain_error("working precision must be positive");
}

UnramifiedElement UnramifiedElement::from_integer(const Extension& ext, int N,
                                                  const mpz_class& v) {
    UnramifiedElement r(ext, N);
    r.c_[0] = v;
    r.reduce();
    return r;
}

UnramifiedElement UnramifiedElement::from_coeffs(const Extension& ext, int N,
                                                 std::vector<mpz_class> coeffs,
                                                 int prec) {
    UnramifiedElement r(ext, N);
    if (static_cast<int>(coeffs.size()) > ext.m)
        throw domain_error("coefficient vector longer than the basis");
    for (size_t i = 0; i < coeffs.size(); ++i) r.c_[i] = std::move(coeffs[i]);
    r.prec_ = prec < 0 ? N : std::min(prec, N);
    r.reduce();
    return r;
}

void UnramifiedElement::reduce() {
    for (auto& v : c_)
        mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), N_);
}

UnramifiedElement UnramifiedElement::with_precision(int k) const {
    if (k < 0 || k > prec_)
        throw domain_error("cannot raise a precision guarantee");
    UnramifiedElement r = *this;
    r.prec_ = k;
    return r;
}

int UnramifiedElement::vlow() const {
    unsigned long best = ~0ul;
    for (const auto& v : c_) {
        if (v == 0) continue;
        unsigned long s = mpz_scan1(v.get_mpz_t(), 0);
        if (s < best) best = s;
    }
    if (best >= static_cast<unsigned long>(prec_)) return prec_;
    return static_cast<int>(best);
}

Val2 UnramifiedElement::val2() const {
    int v = vlow();
    if (v >= prec_) return {false, prec_};
    return {true, v};
}

bool UnramifiedElement::is_unit() const {
    Val2 v = val2();
    return v.finite && v.v == 0;
}

static void check_compatible(const UnramifiedElement& a,
                             const UnramifiedElement& b) {
    if (&a.ext() != &b.ext())
        throw domain_error("elements of different extensions; embed first");
}

UnramifiedElement UnramifiedElement::operator-() const {
    UnramifiedElement r = *this;
    for (auto& v : r.c_) v = -v;
    r.reduce();
    return r;
}

UnramifiedElement UnramifiedElement::operator+(const UnramifiedElement& o) const {
    check_compatible(*this, o);
    UnramifiedElement r(*ext_, std::min(N_, o.N_));
    r.prec_ = std::min(prec_, o.prec_);
    for (int i = 0; i < ext_->m; ++i) r.c_[i] = c_[i] + o.c_[i];
    r.reduce();
    return r;
}

UnramifiedElement UnramifiedElement::operator-(const UnramifiedElement& o) const {
    return *this + (-o);
}

UnramifiedElement UnramifiedElement::operator*(const UnramifiedElement& o) const {
    check_compatible(*this, o);
    int m = ext_->m;
    int N = std::min(N_, o.N_);
    UnramifiedElement r(*ext_, N);
    // worst-case guarantee from the tags and the operands' valuations
    int prec = std::min(vlow() + o.prec_, o.vlow() + prec_);
    r.prec_ = std::min(prec, N);
    std::vector<mpz_class> full(2 * m - 1, mpz_class(0));
    for (int i = 0; i < m; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < m; ++j) {
            if (o.c_[j] == 0) continue;
            mpz_addmul(full[i + j].get_mpz_t(), c_[i].get_mpz_t(),
                       o.c_[j].get_mpz_t());
        }
    }
    // fold u^k for k >= m using u^m = -(lower terms of U)
    for (int k = 2 * m - 2; k >= m; --k) {
        if (full[k] == 0) continue;
        mpz_class top = std::move(full[k]);
        full[k] = 0;
        for (int i = 0; i < m; ++i)
            if (ext_->modulus[i]) full[k - m + i] -= top;
    }
    for (int i = 0; i < m; ++i) r.c_[i] = std::move(full[i]);
    r.reduce();
    return r;
}

UnramifiedElement UnramifiedElement::operator*(const mpz_class& s) const {
    UnramifiedElement r = *this;
    for (auto& v : r.c_) v *= s;
    r.reduce();
    return r;
}

UnramifiedElement UnramifiedElement::shift_left(int j) const {
    if (j < 0) throw domain_error("negative shift");
    UnramifiedElement r = *this;
    for (auto& v : r.c_) mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), j);
    r.prec_ = std::min(N_, prec_ + j);
    r.reduce();
    return r;
}

UnramifiedElement UnramifiedElement::shift_right(int j) const {
    if (j < 0) throw domain_error("negative shift");
    if (j == 0) return *this;
    if (j >= prec_)
        throw domain_error("shift_right: guarantee too small to divide");
    if (vlow() < j)
        throw domain_error("shift_right: valuation below the shift");
    UnramifiedElement r = *this;
    for (auto& v : r.c_)
        mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), j);
    r.prec_ = prec_ - j;
    return r;
}

UnramifiedElement UnramifiedElement::pow(unsigned long e) const {
    UnramifiedElement r = from_integer(*ext_, N_, 1);
    UnramifiedElement b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

UnramifiedElement UnramifiedElement::invert() const {
    if (!is_unit()) throw domain_error("invert: not a unit");
    // start from the residue inverse, double the bits with Newton
    ResidueElement rinv = reduce_mod2().inverse();
    UnramifiedElement x(*ext_, N_);
    for (int i = 0; i < ext_->m; ++i)
        x.c_[i] = (rinv.bits() >> i) & 1;
    UnramifiedElement two = from_integer(*ext_, N_, 2);
    for (int bits = 1; bits < N_; bits *= 2)
        x = x * (two - *this * x);
    x.prec_ = prec_;
    return x;
}

ResidueElement UnramifiedElement::reduce_mod2() const {
    if (prec_ < 1)
        throw domain_error("reduce_mod2: no guaranteed bits");
    std::uint64_t bits = 0;
    for (int i = 0; i < ext_->m; ++i)
        if (mpz_tstbit(c_[i].get_mpz_t(), 0)) bits |= 1ULL << i;
    return ResidueElement(*ext_, bits);
}

bool UnramifiedElement::congruent(const UnramifiedElement& o, int bits) const {
    check_compatible(*this, o);
    if (bits > prec_ || bits > o.prec_)
        throw domain_error("congruence beyond the guaranteed precision");
    mpz_class d;
    for (int i = 0; i < ext_->m; ++i) {
        d = c_[i] - o.c_[i];
        mpz_fdiv_r_2exp(d.get_mpz_t(), d.get_mpz_t(), bits);
        if (d != 0) return false;
    }
    return true;
}

std::string UnramifiedElement::serialize() const {
    std::ostringstream os;
    os << ext_->m << ' ' << N_ << ' ' << prec_;
    for (const auto& v : c_) os << ' ' << v.get_str();
    return os.str();
}

UnramifiedElement UnramifiedElement::deserialize(const std::string& line) {
    std::istringstream is(line);
    int m, N, k;
    if (!(is >> m >> N >> k)) throw domain_error("bad element line");
    std::vector<mpz_class> c(m);
    for (int i = 0; i < m; ++i) {
        std::string tok;
        if (!(is >> tok)) throw domain_error("truncated element line");
        c[i] = mpz_class(tok);
    }
    return from_coeffs(Extension::of_degree(m), N, std::move(c), k);
}

// ---- series, lifts, embeddings ------------------------------------------

namespace {

mpz_class catalan_number(int k) {
    static std::vector<mpz_class> cache{1};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= k) {
        int n = static_cast<int>(cache.size());
        // C_n = C_{n-1} * 2(2n-1) / (n+1)
        mpz_class next = cache.back() * 2 * (2 * n - 1);
        mpz_class q, r;
        mpz_tdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), next.get_mpz_t(), n + 1);
        cache.push_back(q);
    }
    return cache[k];
}

} // namespace

UnramifiedElement binomial_sqrt_tail(const UnramifiedElement& t) {
    Val2 vt = t.val2();
    const Extension& ext = t.ext();
    int N = t.working_precision();
    if (!vt.finite) {
        // t = 0 to its guarantee: the tail is 0 mod 2^(2 prec - 3)
        int k = std::min(N, 2 * t.precision() - 3);
        return UnramifiedElement(ext, N).with_precision(std::max(k, 0));
    }
    if (vt.v < 3)
        throw domain_error("binomial square root: valuation below 3");
    // term_n = (-1)^(n+1) 2 C_{n-1} g^n with g = t/4; tail starts at n = 2
    UnramifiedElement g = t.shift_right(2);
    int vg = vt.v - 2;
    int target = std::min(N, t.precision() - 1);
    UnramifiedElement acc(ext, N);
    UnramifiedElement gp = g * g;  // g^2
    int n = 2;
    while (1 + n * vg <= target) {
        mpz_class coef = catalan_number(n - 1) * 2;
        if (n % 2 == 0) coef = -coef;  // sign (-1)^(n+1)
        acc = acc + gp * coef;
        gp = gp * g;
        ++n;
    }
    return acc.with_precision(std::min(acc.precision(), target));
}

UnramifiedElement binomial_sqrt_one_plus(const UnramifiedElement& t) {
    const Extension& ext = t.ext();
    int N = t.working_precision();
    Val2 vt = t.val2();
    UnramifiedElement one = UnramifiedElement::from_integer(ext, N, 1);
    if (!vt.finite)
        return one.with_precision(std::min(N, t.precision() - 1));
    if (vt.v < 3)
        throw domain_error("binomial square root: valuation below 3");
    return one + t.shift_right(1) + binomial_sqrt_tail(t);
}

UnramifiedElement teichmuller_lift(const ResidueElement& r, int N) {
    const Extension& ext = r.ext();
    UnramifiedElement x(ext, N);
    if (r.is_zero()) return x;
    std::vector<mpz_class> c(ext.m);
    for (int i = 0; i < ext.m; ++i) c[i] = (r.bits() >> i) & 1;
    x = UnramifiedElement::from_coeffs(ext, N, std::move(c));
    for (int it = 0; it < N + 2; ++it) {
        UnramifiedElement y = x;
        for (int s = 0; s < ext.m; ++s) y = y * y;  // y = x^(2^m)
        if (y.congruent(x, N)) return y;
        x = y;
    }
    throw convergence_error("teichmuller lift did not stabilize");
}

UnramifiedElement eval_poly(const IntPoly& g, const UnramifiedElement& x) {
    const Extension& ext = x.ext();
    int N = x.working_precision();
    UnramifiedElement acc(ext, N);
    for (int i = g.degree(); i >= 0; --i)
        acc = acc * x + UnramifiedElement::from_integer(ext, N, g.coeff(i));
    return acc;
}

UnramifiedElement newton_root(const IntPoly& g, const UnramifiedElement& start) {
    UnramifiedElement x = start;
    int N = x.working_precision();
    IntPoly gp = g.derivative();
    if (!eval_poly(gp, x).is_unit())
        throw domain_error("newton_root: derivative is not a unit");
    int cap = 2 * (32 - __builtin_clz(static_cast<unsigned>(N))) + 8;
    for (int it = 0; it < cap; ++it) {
        UnramifiedElement fx = eval_poly(g, x);
        if (!fx.val2().finite) return x;  // zero to full guarantee
        x = x - fx * eval_poly(gp, x).invert();
    }
    throw convergence_error("newton_root: no convergence within the cap");
}

UnramifiedElement frobenius(const UnramifiedElement& a) {
    const Extension& ext = a.ext();
    int N = a.working_precision();
    if (ext.m == 1) return a;
    struct Key {
        int m, N;
        bool operator<(const Key& o) const {
            return m != o.m ? m < o.m : N < o.N;
        }
    };
    static std::map<Key, UnramifiedElement> cache;
    static std::mutex mu;
    UnramifiedElement phi_u(ext, N);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({ext.m, N});
        if (it != cache.end()) {
            phi_u = it->second;
        } else {
            // the image of u is the root of U whose residue is u^2
            ResidueElement u2 = ResidueElement(ext, 2).frobenius();
            std::vector<mpz_class> c(ext.m);
            for (int i = 0; i < ext.m; ++i) c[i] = (u2.bits() >> i) & 1;
            UnramifiedElement start =
                UnramifiedElement::from_coeffs(ext, N, std::move(c));
            IntPoly U(std::vector<mpz_class>(ext.modulus.begin(),
                                             ext.modulus.end()));
            phi_u = newton_root(U, start);
            cache.emplace(Key{ext.m, N}, phi_u);
        }
    }
    UnramifiedElement acc(ext, N);
    UnramifiedElement pw = UnramifiedElement::from_integer(ext, N, 1);
    for (int i = 0; i < ext.m; ++i) {
        acc = acc + pw * a.coeffs()[i];
        if (i + 1 < ext.m) pw = pw * phi_u;
    }
    return acc.with_precision(std::min(acc.precision(), a.precision()));
}

UnramifiedElement embed(const UnramifiedElement& a, const Extension& target) {
    const Extension& src = a.ext();
    int N = a.working_precision();
    if (&src == &target) return a;
    if (target.m % src.m != 0)
        throw domain_error("embedding requires the degree to divide");
    if (src.m == 1) {
        UnramifiedElement r =
            UnramifiedElement::from_integer(target, N, a.coeffs()[0]);
        return r.with_precision(std::min(a.precision(), N));
    }
    struct Key {
        int d, D, N;
        bool operator<(const Key& o) const {
            if (d != o.d) return d < o.d;
            if (D != o.D) return D < o.D;
            return N < o.N;
        }
    };
    static std::map<Key, UnramifiedElement> cache;
    static std::mutex mu;
    UnramifiedElement img(target, N);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({src.m, target.m, N});
        if (it != cache.end()) {
            img = it->second;
        } else {
            // smallest residue root of U_src inside the target field
            IntPoly U(std::vector<mpz_class>(src.modulus.begin(),
                                             src.modulus.end()));
            std::uint64_t found = 0;
            bool any = false;
            for (std::uint64_t b = 0; b < (1ULL << target.m); ++b) {
                ResidueElement r(target, b);
                ResidueElement acc(target, 0);
                ResidueElement pw(target, 1);
                for (int i = 0; i <= src.m; ++i) {
                    if (src.modulus[i]) acc = acc + pw;
                    pw = pw * r;
                }
                if (acc.is_zero()) {
                    found = b;
                    any = true;
                    break;
                }
            }
            if (!any)
                throw integrity_error("no residue root for the embedding");
            std::vector<mpz_class> c(target.m);
            for (int i = 0; i < target.m; ++i) c[i] = (found >> i) & 1;
            UnramifiedElement start =
                UnramifiedElement::from_coeffs(target, N, std::move(c));
            img = newton_root(U, start);
            cache.emplace(Key{src.m, target.m, N}, img);
        }
    }
    UnramifiedElement acc(target, N);
    UnramifiedElement pw = UnramifiedElement::from_integer(target, N, 1);
    for (int i = 0; i < src.m; ++i) {
        acc = acc + pw * a.coeffs()[i];
        if (i + 1 < src.m) pw = pw * img;
    }
    return acc.with_precision(std::min(a.precision(), acc.precision()));
}

UnramifiedElement random_element(const Extension& ext, int N,
                                 std::uint64_t& state, int v) {
    auto next = [&state]() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    std::vector<mpz_class> c(ext.m);
    for (auto& coef : c) {
        mpz_class acc = 0;
        for (int w = 0; w < (N + 63) / 64; ++w) {
            mpz_class word(next());
            mpz_mul_2exp(word.get_mpz_t(), word.get_mpz_t(), 64 * w);
            acc += word;
        }
        coef = acc;
    }
    c[0] |= 1;  // force a unit residue
    UnramifiedElement u = UnramifiedElement::from_coeffs(ext, N, std::move(c));
    return v ? u.shift_left(v) : u;
}

} // namespace qdyn
