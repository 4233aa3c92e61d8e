/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_ISOGENY_HPP
#define QDYN_ISOGENY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qdyn {

/// Prime field context on 64-bit words (p < 2^62).
struct FpField {
    std::uint64_t p;
    explicit FpField(std::uint64_t prime) : p(prime) {}
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const { return a ? p - a : 0; }
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t from_int(std::int64_t v) const;
    int legendre(std::uint64_t a) const;  // 0, 1 or -1
    std::optional<std::uint64_t> sqrt(std::uint64_t a) const;  // Tonelli-Shanks
    std::optional<std::uint64_t> fourth_root(std::uint64_t a) const;
    /// a primitive eighth root of unity (requires p = 1 mod 8)
    std::uint64_t zeta8() const;
};

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct CurveModel {
    std::uint64_t a1, a2, a3, a4, a6;
};

struct Point {
    std::uint64_t x = 0, y = 0;
    bool inf = true;
};

bool on_curve(const FpField& F, const CurveModel& E, const Point& P);
Point neg_point(const FpField& F, const CurveModel& E, const Point& P);
Point add_points(const FpField& F, const CurveModel& E, const Point& P,
                 const Point& Q);
Point mul_point(const FpField& F, const CurveModel& E, const Point& P, int k);
std::uint64_t j_invariant(const FpField& F, const CurveModel& E);
/// lift an x-coordinate to a point when the fiber is rational
std::optional<Point> point_with_x(const FpField& F, const CurveModel& E,
                                  std::uint64_t x);

/// The three parametric curves; the parameter enters through b = 1/alpha^4.
CurveModel curve_E1(const FpField& F, std::uint64_t alpha);
CurveModel curve_E2(const FpField& F, std::uint64_t alpha);
CurveModel curve_E3(const FpField& F, std::uint64_t alpha);

/// displayed j-invariant formulas, evaluated exactly (throws domain_error
/// at a pole of the denominator)
std::uint64_t j1_formula(const FpField& F, std::uint64_t alpha);
std::uint64_t j2_formula(const FpField& F, std::uint64_t alpha);
std::uint64_t j3_formula(const FpField& F, std::uint64_t alpha);

/// the three affine 2-torsion points of E1(alpha) (beta from the quartic
/// relation) and of E2(beta)
std::vector<Point> two_torsion_E1(const FpField& F, std::uint64_t alpha,
                                  std::uint64_t beta);
std::vector<Point> two_torsion_E2(const FpField& F, std::uint64_t beta);

/// point on the quartic relation 16 X^4 + 16 Y^4 = X^4 Y^4 with the
/// eighth root of unity and sqrt(-1) fixed alongside
struct Fer4Point {
    std::uint64_t alpha, beta;
    std::uint64_t zeta8;
    std::uint64_t sqrt_m1;
};

Fer4Point sample_fer4_point(const FpField& F, std::uint64_t& rng_state);

/// 2-isogeny E1(alpha) -> E2(alpha); pole only at the kernel x = -b
Point psi_map(const FpField& F, std::uint64_t alpha, const Point& P);
/// 2-isogeny E2(alpha) -> E3(alpha); pole only at the kernel x = -4b
Point rho_map(const FpField& F, std::uint64_t alpha, const Point& P);
/// isomorphism E2(alpha) -> E2(beta) on the quartic relation
Point iota_map(const FpField& F, const Fer4Point& pt, const Point& P);
/// X-coordinate of the dual 2-isogeny E2(beta) -> E1(beta);
/// nullopt when X sits at the pole (the image is the base point)
std::optional<std::uint64_t> psi_hat_x(const FpField& F, std::uint64_t beta,
                                       std::uint64_t X);
/// the closed-form degree-4 X-coordinate map E1(alpha) -> E1(beta)
std::optional<std::uint64_t> phi1_closed_x(const FpField& F,
                                           const Fer4Point& pt,
                                           std::uint64_t X);

struct IdentityStat {
    std::string name;
    long trials = 0;
    long passes = 0;
    std::string witness;  // first failing instance, empty when clean
    bool ok() const { return trials == passes; }
};

struct Section4Report {
    std::vector<IdentityStat> items;
    bool all_ok() const {
        for (const auto& s : items)
            if (!s.ok()) return false;
        return true;
    }
};

/// Randomized verification of the displayed identities: (i) the twist
/// identity of the curve polynomial, (ii) curve-membership transport of
/// the maps, (iii) the shared j-invariant on the quartic relation,
/// (iv) invariance of r(z) under the degree-2 substitution, (v) the
/// degree-4 kernel generated by (0,0), (vi) the two-step change of
/// variables between the models, (vii) the sigma/torsion consequence
/// identities.  All primes must be = 1 mod 8.
Section4Report verify_section4(int trials,
                               const std::vector<std::uint64_t>& primes,
                               std::uint64_t seed);

} // namespace qdyn

#endif
