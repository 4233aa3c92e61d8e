/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#include "qdyn/resultant.hpp"

#include <mutex>

#include "qdyn/errors.hpp"
#include "qdyn/parallel.hpp"

namespace qdyn {

namespace {

// Sylvester dimension above which the evaluation/interpolation route
// takes over from Bareiss elimination.
constexpr int kBareissMaxDim = 16;

// Newton interpolation through (xs[i], ys[i]); the data must come from
// an integer polynomial, which is asserted on conversion.
IntPoly interpolate_integer(const std::vector<long>& xs,
                            const std::vector<mpz_class>& ys) {
    size_t n = xs.size();
    std::vector<mpq_class> dd(n);
    for (size_t i = 0; i < n; ++i) dd[i] = mpq_class(ys[i]);
    for (size_t k = 1; k < n; ++k)
        for (size_t i = n - 1; i >= k; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / mpq_class(xs[i] - xs[i - k]);
            if (i == k) break;
        }
    std::vector<mpq_class> poly{dd[n - 1]};
    for (int i = static_cast<int>(n) - 2; i >= 0; --i) {
        // poly <- poly*(t - xs[i]) + dd[i]
        poly.insert(poly.begin(), mpq_class(0));
        for (size_t j = 0; j + 1 < poly.size(); ++j)
            poly[j] -= mpq_class(xs[i]) * poly[j + 1];
        poly[0] += dd[i];
    }
    std::vector<mpz_class> out(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) {
        poly[i].canonicalize();
        if (poly[i].get_den() != 1)
            throw integrity_error(
                "interpolation produced a non-integer coefficient");
        out[i] = poly[i].get_num();
    }
    return IntPoly(std::move(out));
}

// nodes 0, 1, -1, 2, -2, ... skipping roots of `avoid`
std::vector<long> pick_nodes(int count, const IntPoly& avoid) {
    std::vector<long> nodes;
    auto consider = [&](long cand) {
        if (static_cast<int>(nodes.size()) >= count) return;
        if (!avoid.is_zero() && avoid.eval(cand) == 0) return;
        nodes.push_back(cand);
    };
    consider(0);
    for (long k = 1; static_cast<int>(nodes.size()) < count; ++k) {
        consider(k);
        consider(-k);
        if (k > 100000) throw capacity_error("node selection exhausted");
    }
    return nodes;
}

} // namespace

BiPoly resultant_elim_bareiss(const BiPoly& A, const BiPoly& B) {
    int m = A.deg_v();  // degree in the eliminated variable
    int n = B.deg_u();
    if (m <= 0 || n <= 0)
        throw domain_error("resultant: degree-zero input in eliminated variable");
    int N = m + n;
    // Sylvester matrix: n rows of A coefficients, m rows of B coefficients.
    std::vector<std::vector<BiPoly>> M(N, std::vector<BiPoly>(N));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i <= m; ++i)
            M[k][k + i] = BiPoly::from_u(A.coeff_of_v(m - i));
    for (int k = 0; k < m; ++k)
        for (int j = 0; j <= n; ++j)
            M[n + k][k + j] = BiPoly::from_v(B.coeff_of_u(n - j));
    int sign = 1;
    BiPoly prev = BiPoly::constant(1);
    for (int k = 0; k + 1 < N; ++k) {
        if (M[k][k].is_zero()) {
            int swap_row = -1;
            for (int i = k + 1; i < N; ++i)
                if (!M[i][k].is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return BiPoly();  // singular: resultant 0
            std::swap(M[k], M[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                BiPoly t = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                M[i][j] = BiPoly::exact_div(t, prev);
            }
            M[i][k] = BiPoly();
        }
        prev = M[k][k];
    }
    BiPoly r = M[N - 1][N - 1];
    return sign < 0 ? -r : r;
}

BiPoly resultant_elim_interp(const BiPoly& A, const BiPoly& B, int threads) {
    int m = A.deg_v();
    int n = B.deg_u();
    if (m <= 0 || n <= 0)
        throw domain_error("resultant: degree-zero input in eliminated variable");
    int Dx = A.deg_u() * n;
    int Dz = B.deg_v() * m;
    IntPoly lcA = A.coeff_of_v(m);  // in x
    IntPoly lcB = B.coeff_of_u(n);  // in z
    std::vector<long> xs = pick_nodes(Dx + 1, lcA);
    std::vector<long> zs = pick_nodes(Dz + 1, lcB);

    // specializations of B are shared by every row of the grid
    std::vector<IntPoly> Bspec(zs.size());
    for (size_t j = 0; j < zs.size(); ++j) Bspec[j] = B.eval_v(zs[j]);

    // row i: resultants against A(x=a_i, w), then interpolate along z
    std::vector<IntPoly> rows(xs.size());
    parallel_for(static_cast<int>(xs.size()), threads, [&](int i) {
        IntPoly Aspec = A.eval_u(xs[i]);  // univariate in w, degree m
        std::vector<mpz_class> vals(zs.size());
        for (size_t j = 0; j < zs.size(); ++j)
            vals[j] = resultant(Aspec, Bspec[j]);
        rows[i] = interpolate_integer(zs, vals);
    });

    // interpolate along x for each z-coefficient
    std::vector<IntPoly> xcols(Dz + 1);
    parallel_for(Dz + 1, threads, [&](int j) {
        std::vector<mpz_class> vals(xs.size());
        for (size_t i = 0; i < xs.size(); ++i) vals[i] = rows[i].coeff(j);
        xcols[j] = interpolate_integer(xs, vals);
    });

    BiPoly out(Dx, Dz);
    for (int j = 0; j <= Dz; ++j)
        for (int i = 0; i <= xcols[j].degree(); ++i)
            out.set_coeff(i, j, xcols[j].coeff(i));
    out.trim();
    return out;
}

BiPoly resultant_elim(const BiPoly& A, const BiPoly& B, int threads) {
    int m = A.deg_v();
    int n = B.deg_u();
    if (m <= 0 || n <= 0)
        throw domain_error("resultant: degree-zero input in eliminated variable");
    if (m + n <= kBareissMaxDim) return resultant_elim_bareiss(A, B);
    return resultant_elim_interp(A, B, threads);
}

} // namespace qdyn
