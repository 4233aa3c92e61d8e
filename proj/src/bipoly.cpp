/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#include "qdyn/bipoly.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {
const mpz_class kZero = 0;
}

BiPoly::BiPoly(int du, int dv) : du_(du), dv_(dv) {
    if (du < 0 || dv < 0) {
        du_ = dv_ = -1;
        return;
    }
    a_.assign(size_t(du + 1) * (dv + 1), kZero);
}

BiPoly BiPoly::from_u(const IntPoly& p) {
    if (p.is_zero()) return BiPoly();
    BiPoly r(p.degree(), 0);
    for (int i = 0; i <= p.degree(); ++i) r.at(i, 0) = p.coeff(i);
    r.trim();
    return r;
}

BiPoly BiPoly::from_v(const IntPoly& p) {
    if (p.is_zero()) return BiPoly();
    BiPoly r(0, p.degree());
    for (int j = 0; j <= p.degree(); ++j) r.at(0, j) = p.coeff(j);
    r.trim();
    return r;
}

BiPoly BiPoly::constant(const mpz_class& c) {
    if (c == 0) return BiPoly();
    BiPoly r(0, 0);
    r.at(0, 0) = c;
    return r;
}

const mpz_class& BiPoly::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i > du_ || j > dv_) return kZero;
    return at(i, j);
}

void BiPoly::set_coeff(int i, int j, const mpz_class& c) {
    if (i > du_ || j > dv_) {
        if (c == 0) return;
        BiPoly bigger(std::max(i, du_), std::max(j, dv_));
        for (int u = 0; u <= du_; ++u)
            for (int v = 0; v <= dv_; ++v) bigger.at(u, v) = at(u, v);
        *this = std::move(bigger);
    }
    at(i, j) = c;
}

void BiPoly::trim() {
    if (du_ < 0) return;
    int mu = -1, mv = -1;
    for (int i = 0; i <= du_; ++i)
        for (int j = 0; j <= dv_; ++j)
            if (at(i, j) != 0) {
                if (i > mu) mu = i;
                if (j > mv) mv = j;
            }
    if (mu < 0) {
        du_ = dv_ = -1;
        a_.clear();
        return;
    }
    if (mu == du_ && mv == dv_) return;
    BiPoly r(mu, mv);
    for (int i = 0; i <= mu; ++i)
        for (int j = 0; j <= mv; ++j) r.at(i, j) = at(i, j);
    *this = std::move(r);
}

BiPoly BiPoly::operator-() const {
    BiPoly r = *this;
    for (auto& v : r.a_) v = -v;
    return r;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    BiPoly r(std::max(du_, o.du_), std::max(dv_, o.dv_));
    for (int i = 0; i <= r.du_; ++i)
        for (int j = 0; j <= r.dv_; ++j) r.at(i, j) = coeff(i, j) + o.coeff(i, j);
    r.trim();
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
    if (is_zero() || o.is_zero()) return BiPoly();
    BiPoly r(du_ + o.du_, dv_ + o.dv_);
    for (int i = 0; i <= du_; ++i)
        for (int j = 0; j <= dv_; ++j) {
            const mpz_class& c = at(i, j);
            if (c == 0) continue;
            for (int k = 0; k <= o.du_; ++k)
                for (int l = 0; l <= o.dv_; ++l) {
                    const mpz_class& d = o.at(k, l);
                    if (d == 0) continue;
                    mpz_addmul(r.at(i + k, j + l).get_mpz_t(), c.get_mpz_t(),
                               d.get_mpz_t());
                }
        }
    r.trim();
    return r;
}

BiPoly BiPoly::operator*(const mpz_class& s) const {
    if (s == 0) return BiPoly();
    BiPoly r = *this;
    for (auto& v : r.a_) v *= s;
    return r;
}

bool BiPoly::operator==(const BiPoly& o) const {
    return du_ == o.du_ && dv_ == o.dv_ && a_ == o.a_;
}

IntPoly BiPoly::coeff_of_u(int i) const {
    if (i < 0 || i > du_) return IntPoly();
    std::vector<mpz_class> c(dv_ + 1);
    for (int j = 0; j <= dv_; ++j) c[j] = at(i, j);
    return IntPoly(std::move(c));
}

IntPoly BiPoly::coeff_of_v(int j) const {
    if (j < 0 || j > dv_) return IntPoly();
    std::vector<mpz_class> c(du_ + 1);
    for (int i = 0; i <= du_; ++i) c[i] = at(i, j);
    return IntPoly(std::move(c));
}

IntPoly BiPoly::eval_u(const mpz_class& a) const {
    if (is_zero()) return IntPoly();
    std::vector<mpz_class> c(dv_ + 1, kZero);
    for (int j = 0; j <= dv_; ++j) {
        mpz_class acc = 0;
        for (int i = du_; i >= 0; --i) acc = acc * a + at(i, j);
        c[j] = acc;
    }
    return IntPoly(std::move(c));
}

IntPoly BiPoly::eval_v(const mpz_class& b) const {
    if (is_zero()) return IntPoly();
    std::vector<mpz_class> c(du_ + 1, kZero);
    for (int i = 0; i <= du_; ++i) {
        mpz_class acc = 0;
        for (int j = dv_; j >= 0; --j) acc = acc * b + at(i, j);
        c[i] = acc;
    }
    return IntPoly(std::move(c));
}

IntPoly BiPoly::diagonal() const {
    if (is_zero()) return IntPoly();
    std::vector<mpz_class> c(du_ + dv_ + 1, kZero);
    for (int i = 0; i <= du_; ++i)
        for (int j = 0; j <= dv_; ++j) c[i + j] += at(i, j);
    return IntPoly(std::move(c));
}

BiPoly BiPoly::swapped() const {
    if (is_zero()) return BiPoly();
    BiPoly r(dv_, du_);
    for (int i = 0; i <= du_; ++i)
        for (int j = 0; j <= dv_; ++j) r.at(j, i) = at(i, j);
    return r;
}

BiPoly BiPoly::scale_args(const mpz_class& c) const {
    if (is_zero()) return BiPoly();
    BiPoly r = *this;
    for (int i = 0; i <= du_; ++i)
        for (int j = 0; j <= dv_; ++j) {
            if (r.at(i, j) == 0) continue;
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), c.get_mpz_t(), i + j);
            r.at(i, j) *= pw;
        }
    r.trim();
    return r;
}

BiPoly BiPoly::div_exact_scalar(const mpz_class& s) const {
    if (s == 0) throw domain_error("division by zero");
    BiPoly r = *this;
    for (auto& v : r.a_) {
        mpz_class q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(),
                    s.get_mpz_t());
        if (rem != 0)
            throw inexact_division_error("BiPoly scalar division inexact");
        v = q;
    }
    return r;
}

BiPoly BiPoly::reduced_mod(const mpz_class& m) const {
    BiPoly r = *this;
    for (auto& v : r.a_)
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    r.trim();
    return r;
}

BiPoly BiPoly::exact_div(const BiPoly& num, const BiPoly& den) {
    if (den.is_zero()) throw domain_error("division by zero polynomial");
    if (num.is_zero()) return BiPoly();
    // eliminate on the lex-leading term (u first) of den
    int li = den.du_;
    int lj = den.dv_;
    for (int j = den.dv_; j >= 0; --j)
        if (den.at(li, j) != 0) {
            lj = j;
            break;
        }
    const mpz_class& lcoef = den.at(li, lj);
    BiPoly r = num;
    BiPoly q(std::max(num.du_ - den.du_, 0), std::max(num.dv_ - den.dv_, 0));
    while (!r.is_zero()) {
        // lex-leading term of r
        int ri = r.du_, rj = -1;
        for (int j = r.dv_; j >= 0; --j)
            if (r.at(ri, j) != 0) {
                rj = j;
                break;
            }
        int qi = ri - li, qj = rj - lj;
        if (qi < 0 || qj < 0)
            throw inexact_division_error("BiPoly exact_div: degree underflow");
        mpz_class qc, rem;
        mpz_tdiv_qr(qc.get_mpz_t(), rem.get_mpz_t(), r.at(ri, rj).get_mpz_t(),
                    lcoef.get_mpz_t());
        if (rem != 0)
            throw inexact_division_error("BiPoly exact_div: inexact step");
        BiPoly t(qi, qj);
        t.at(qi, qj) = qc;
        q = q + t;
        r = r - t * den;
    }
    return q;
}

std::string BiPoly::to_string(const std::string& u, const std::string& v) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = du_; i >= 0; --i)
        for (int j = dv_; j >= 0; --j) {
            const mpz_class& c = at(i, j);
            if (c == 0) continue;
            if (!first) os << (c > 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            mpz_class a = abs(c);
            bool unit = (a == 1) && (i > 0 || j > 0);
            if (!unit) os << a.get_str();
            if (i > 0) {
                if (!unit) os << "*";
                os << u;
                if (i > 1) os << "^" << i;
            }
            if (j > 0) {
                if (i > 0 || !unit) os << "*";
                os << v;
                if (j > 1) os << "^" << j;
            }
            first = false;
        }
    return os.str();
}

void BiPoly::write(std::ostream& os) const {
    os << du_ << ' ' << dv_ << '\n';
    for (int i = 0; i <= du_; ++i) {
        for (int j = 0; j <= dv_; ++j) {
            if (j) os << ' ';
            os << at(i, j).get_str();
        }
        os << '\n';
    }
}

BiPoly BiPoly::read(std::istream& is) {
    int du, dv;
    if (!(is >> du >> dv)) throw domain_error("bad BiPoly header");
    if (du < 0) return BiPoly();
    BiPoly r(du, dv);
    for (int i = 0; i <= du; ++i)
        for (int j = 0; j <= dv; ++j) {
            std::string tok;
            if (!(is >> tok)) throw domain_error("truncated BiPoly body");
            r.at(i, j) = mpz_class(tok);
        }
    r.trim();
    return r;
}

BiPoly curve_f() {
    // y^4 (x-1)^4 + 8x(x^2+1)
    BiPoly r(4, 4);
    const long binom[5] = {1, -4, 6, -4, 1};
    for (int i = 0; i <= 4; ++i) r.set_coeff(i, 4, binom[i]);
    r.set_coeff(1, 0, r.coeff(1, 0) + 8);
    r.set_coeff(3, 0, r.coeff(3, 0) + 8);
    r.trim();
    return r;
}

BiPoly curve_f1() {
    return curve_f().scale_args(2).div_exact_scalar(16);
}

} // namespace qdyn
