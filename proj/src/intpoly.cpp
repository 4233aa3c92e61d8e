/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#include "qdyn/intpoly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {
const mpz_class kZero = 0;
}

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
    trim();
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

IntPoly IntPoly::constant(const mpz_class& c) {
    IntPoly p;
    if (c != 0) p.c_.push_back(c);
    return p;
}

IntPoly IntPoly::monomial(int k, const mpz_class& c) {
    IntPoly p;
    if (c != 0) {
        p.c_.assign(k + 1, kZero);
        p.c_[k] = c;
    }
    return p;
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[i];
}

const mpz_class& IntPoly::lc() const {
    if (c_.empty()) return kZero;
    return c_.back();
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    IntPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
    r.trim();
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    IntPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
    r.trim();
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    IntPoly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, kZero);
    mpz_class t;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            mpz_addmul(r.c_[i + j].get_mpz_t(), c_[i].get_mpz_t(),
                       o.c_[j].get_mpz_t());
        }
    }
    r.trim();
    return r;
}

IntPoly IntPoly::operator*(const mpz_class& s) const {
    if (s == 0) return IntPoly();
    IntPoly r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
}

IntPoly IntPoly::shifted(int k) const {
    if (k < 0) throw domain_error("shifted: negative power");
    if (is_zero() || k == 0) return *this;
    IntPoly r;
    r.c_.assign(c_.size() + k, kZero);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
    return r;
}

IntPoly IntPoly::derivative() const {
    if (degree() <= 0) return IntPoly();
    IntPoly r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * (long)i;
    r.trim();
    return r;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPoly IntPoly::scale_arg(const mpz_class& c) const {
    IntPoly r = *this;
    mpz_class pw = 1;
    for (size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] *= pw;
        pw *= c;
    }
    r.trim();
    return r;
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& v : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    mpz_class g = content();
    if (lc() < 0) g = -g;
    IntPoly r = *this;
    for (auto& v : r.c_) v /= g;
    return r;
}

mpz_class IntPoly::max_abs_coeff() const {
    mpz_class m = 0;
    for (const auto& v : c_) {
        mpz_class a = abs(v);
        if (a > m) m = a;
    }
    return m;
}

IntPoly IntPoly::reduced_mod(const mpz_class& m) const {
    IntPoly r = *this;
    for (auto& v : r.c_) {
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    }
    r.trim();
    return r;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& v = c_[i];
        if (v == 0) continue;
        if (!first) os << (v > 0 ? " + " : " - ");
        else if (v < 0) os << "-";
        mpz_class a = abs(v);
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

bool try_divide(const IntPoly& num, const IntPoly& den, IntPoly& quot,
                IntPoly& rem) {
    if (den.is_zero()) throw domain_error("division by zero polynomial");
    if (num.degree() < den.degree()) {
        quot = IntPoly();
        rem = num;
        return true;
    }
    std::vector<mpz_class> r(num.coeffs());
    int dn = num.degree(), dd = den.degree();
    std::vector<mpz_class> q(dn - dd + 1, mpz_class(0));
    const mpz_class& l = den.lc();
    for (int i = dn; i >= dd; --i) {
        if (r[i] == 0) continue;
        mpz_class qc;
        mpz_class rr;
        mpz_tdiv_qr(qc.get_mpz_t(), rr.get_mpz_t(), r[i].get_mpz_t(),
                    l.get_mpz_t());
        if (rr != 0) return false;
        q[i - dd] = qc;
        for (int j = 0; j <= dd; ++j)
            mpz_submul(r[i - dd + j].get_mpz_t(), qc.get_mpz_t(),
                       den.coeff(j).get_mpz_t());
    }
    quot = IntPoly(std::move(q));
    rem = IntPoly(std::move(r));
    return true;
}

IntPoly exact_div(const IntPoly& num, const IntPoly& den) {
    IntPoly q, r;
    if (!try_divide(num, den, q, r) || !r.is_zero())
        throw inexact_division_error("exact_div: nonzero remainder");
    return q;
}

bool divides(const IntPoly& den, const IntPoly& num, IntPoly* quot) {
    if (den.is_zero()) return num.is_zero();
    if (num.is_zero()) {
        if (quot) *quot = IntPoly();
        return true;
    }
    if (den.degree() > num.degree()) return false;
    // cheap necessary conditions first
    if (den.coeff(0) != 0 && num.coeff(0) != 0) {
        if (!mpz_divisible_p(num.coeff(0).get_mpz_t(),
                             den.coeff(0).get_mpz_t()))
            return false;
    }
    IntPoly q, r;
    if (try_divide(num, den, q, r)) {
        if (!r.is_zero()) return false;
        if (quot) *quot = q;
        return true;
    }
    // non-monic with fractional steps: decide over Q via primitive parts
    IntPoly dp = den.primitive_part();
    IntPoly np = num.primitive_part();
    // scale num by lc(dp)^(deg gap + 1) to force integral steps
    int k = np.degree() - dp.degree() + 1;
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), dp.lc().get_mpz_t(), k);
    if (!try_divide(np * scale, dp, q, r) || !r.is_zero()) return false;
    q = q.primitive_part();
    // reconstruct integer quotient of the original pair, if it exists
    IntPoly prod = q * den;
    if (prod == num) {
        if (quot) *quot = q;
        return true;
    }
    if (-prod == num) {
        if (quot) *quot = -q;
        return true;
    }
    // den | num over Q but the quotient may need a rational constant;
    // that cannot happen when num is divisible over Z by den
    return false;
}

namespace {

// textbook pseudo-remainder: rem of lc(b)^(da-db+1) * a divided by b
IntPoly prem_full(const IntPoly& a, const IntPoly& b) {
    int da = a.degree(), db = b.degree();
    if (da < db) return a;
    IntPoly r = a;
    const mpz_class& l = b.lc();
    for (int i = da; i >= db; --i) {
        mpz_class top = r.coeff(i);
        r = r * l - b.shifted(i - db) * top;
    }
    return r;
}

} // namespace

IntPoly gcd(const IntPoly& a0, const IntPoly& b0) {
    if (a0.is_zero()) return b0.primitive_part();
    if (b0.is_zero()) return a0.primitive_part();
    IntPoly a = a0.primitive_part(), b = b0.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = prem_full(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero() && a.degree() < b.degree()) std::swap(a, b);
    }
    return a.primitive_part();
}

bool is_squarefree(const IntPoly& p) {
    if (p.degree() <= 1) return p.degree() >= 0;
    IntPoly d = p.derivative();
    // one-prime certificate: gcd(p, p') == 1 mod q implies squarefree
    static const unsigned long primes[] = {3,  5,  7,  11, 13, 17, 19, 23,
                                           29, 31, 37, 41, 43, 47, 53, 59};
    for (unsigned long q : primes) {
        if (mpz_divisible_ui_p(p.lc().get_mpz_t(), q)) continue;
        // compute gcd mod q on small vectors
        auto red = [&](const IntPoly& f) {
            std::vector<unsigned long> v(f.degree() + 1);
            for (int i = 0; i <= f.degree(); ++i)
                v[i] = mpz_fdiv_ui(f.coeff(i).get_mpz_t(), q);
            while (!v.empty() && v.back() == 0) v.pop_back();
            return v;
        };
        auto va = red(p), vb = red(d);
        while (!vb.empty()) {
            // va mod vb over F_q
            unsigned long linv = 1;
            {
                // modular inverse of vb.back()
                long t = 0, newt = 1;
                long r = (long)q, newr = (long)vb.back();
                while (newr != 0) {
                    long qq = r / newr;
                    std::swap(t -= qq * newt, newt);
                    std::swap(r -= qq * newr, newr);
                }
                linv = (unsigned long)((t % (long)q + (long)q) % (long)q);
            }
            while (va.size() >= vb.size() && !va.empty()) {
                unsigned long c = (va.back() * linv) % q;
                size_t off = va.size() - vb.size();
                for (size_t i = 0; i < vb.size(); ++i) {
                    unsigned long s = (c * vb[i]) % q;
                    va[off + i] = (va[off + i] + q - s) % q;
                }
                while (!va.empty() && va.back() == 0) va.pop_back();
            }
            std::swap(va, vb);
        }
        if (va.size() == 1) return true;  // gcd constant mod q
    }
    return gcd(p, d).degree() == 0;
}

mpz_class resultant(const IntPoly& A0, const IntPoly& B0) {
    // subresultant PRS (Cohen, Alg. 3.3.7) -- exact value with sign
    if (A0.is_zero() || B0.is_zero()) return 0;
    int s = 1;
    IntPoly Ap = A0, Bp = B0;
    if (Ap.degree() < Bp.degree()) {
        if ((Ap.degree() & 1) && (Bp.degree() & 1)) s = -s;
        std::swap(Ap, Bp);
    }
    if (Bp.degree() == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), Bp.lc().get_mpz_t(), Ap.degree());
        return s * r;
    }
    mpz_class ca = Ap.content(), cb = Bp.content();
    for (auto* pp : {&Ap, &Bp}) {
        const mpz_class& c = (pp == &Ap) ? ca : cb;
        std::vector<mpz_class> v(pp->coeffs());
        for (auto& x : v) x /= c;
        *pp = IntPoly(std::move(v));
    }
    mpz_class t, tb;
    mpz_pow_ui(t.get_mpz_t(), ca.get_mpz_t(), Bp.degree());
    mpz_pow_ui(tb.get_mpz_t(), cb.get_mpz_t(), Ap.degree());
    t *= tb;
    mpz_class g = 1, h = 1;
    while (Bp.degree() > 0) {
        int d = Ap.degree() - Bp.degree();
        if ((Ap.degree() & 1) && (Bp.degree() & 1)) s = -s;
        IntPoly R = prem_full(Ap, Bp);
        Ap = Bp;
        mpz_class hd;
        mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), d);
        mpz_class den = g * hd;
        {
            std::vector<mpz_class> v(R.coeffs());
            for (auto& x : v) {
                mpz_class qq, rr;
                mpz_tdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), x.get_mpz_t(),
                            den.get_mpz_t());
                if (rr != 0)
                    throw integrity_error("subresultant PRS inexact step");
                x = qq;
            }
            Bp = IntPoly(std::move(v));
        }
        if (Bp.is_zero()) return 0;
        g = Ap.lc();
        if (d >= 1) {
            mpz_class gd;
            mpz_pow_ui(gd.get_mpz_t(), g.get_mpz_t(), d);
            mpz_class hdm1;
            mpz_pow_ui(hdm1.get_mpz_t(), h.get_mpz_t(), d - 1);
            mpz_class qq, rr;
            mpz_tdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), gd.get_mpz_t(),
                        hdm1.get_mpz_t());
            if (rr != 0) throw integrity_error("subresultant h update inexact");
            h = qq;
        }
    }
    // Bp is a nonzero constant
    mpz_class bn;
    mpz_pow_ui(bn.get_mpz_t(), Bp.lc().get_mpz_t(), Ap.degree());
    mpz_class hp;
    if (Ap.degree() >= 1) {
        mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), Ap.degree() - 1);
        mpz_class qq, rr;
        mpz_tdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), bn.get_mpz_t(),
                    hp.get_mpz_t());
        if (rr != 0) throw integrity_error("subresultant final step inexact");
        bn = qq;
    }
    return s * t * bn;
}

mpz_class discriminant(const IntPoly& p) {
    if (p.degree() < 1) throw domain_error("discriminant of constant");
    mpz_class r = resultant(p, p.derivative());
    mpz_class q, rr;
    mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), r.get_mpz_t(),
                p.lc().get_mpz_t());
    if (rr != 0) throw integrity_error("discriminant: lc division inexact");
    int d = p.degree();
    if (((long)d * (d - 1) / 2) % 2) q = -q;
    return q;
}

IntPoly mobius_twist(const IntPoly& g) {
    // sum_i g_i (x+1)^i (x-1)^(deg-i), then primitive/sign normalized
    int d = g.degree();
    if (d < 0) return IntPoly();
    IntPoly xp1({1, 1}), xm1({-1, 1});
    std::vector<IntPoly> up(d + 1), dn(d + 1);
    up[0] = IntPoly({1});
    dn[0] = IntPoly({1});
    for (int i = 1; i <= d; ++i) {
        up[i] = up[i - 1] * xp1;
        dn[i] = dn[i - 1] * xm1;
    }
    IntPoly acc;
    for (int i = 0; i <= d; ++i) {
        if (g.coeff(i) == 0) continue;
        acc = acc + up[i] * dn[d - i] * g.coeff(i);
    }
    return acc.primitive_part();
}

std::string write_poly_line(const IntPoly& p) {
    std::ostringstream os;
    os << p.degree();
    for (int i = 0; i <= p.degree(); ++i) os << ' ' << p.coeff(i).get_str();
    if (p.degree() < 0) os << "";
    return os.str();
}

IntPoly read_poly_line(const std::string& line) {
    std::istringstream is(line);
    int deg;
    if (!(is >> deg)) throw domain_error("bad polynomial line");
    if (deg < 0) return IntPoly();
    std::vector<mpz_class> c(deg + 1);
    for (int i = 0; i <= deg; ++i) {
        std::string tok;
        if (!(is >> tok)) throw domain_error("truncated polynomial line");
        c[i] = mpz_class(tok);
    }
    return IntPoly(std::move(c));
}

std::ostream& operator<<(std::ostream& os, const IntPoly& p) {
    return os << p.to_string();
}

} // namespace qdyn
