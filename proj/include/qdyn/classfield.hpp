/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_CLASSFIELD_HPP
#define QDYN_CLASSFIELD_HPP

#include <cstdint>
#include <vector>

#include "qdyn/intpoly.hpp"

namespace qdyn {

/// Primitive binary quadratic form a x^2 + b xy + c y^2 of negative
/// discriminant b^2 - 4ac = -d.
struct QuadForm {
    std::int64_t a, b, c;
    std::int64_t disc() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm& o) const {
        return a == o.a && b == o.b && c == o.c;
    }
};

/// reduced representative of the class of g
QuadForm reduce_form(QuadForm g);
bool is_reduced(const QuadForm& g);
bool is_primitive(const QuadForm& g);

/// the principal form of discriminant -d (d = 3 mod 4 here)
QuadForm principal_form(std::int64_t d);

/// Gauss composition followed by reduction; group law on classes of the
/// common discriminant (domain_error on a mismatch).
QuadForm compose_reduce(const QuadForm& g1, const QuadForm& g2);

QuadForm form_inverse(const QuadForm& g);
int form_order(const QuadForm& g);

/// all reduced primitive forms of discriminant -d
std::vector<QuadForm> reduced_forms(std::int64_t d);
/// h(-d) by counting reduced primitive forms
int class_number(std::int64_t d);

/// order of the square of the class of the norm-2 form (2, b, (b^2+d)/8),
/// b in {1, 3}; requires -d = 1 mod 8
int frob2_square_order(std::int64_t d, int b_choice = 1);

struct DiscriminantRecord {
    std::int64_t d;       // -d = 1 mod 8
    int h;                // class number
    int frob2_sq_order;   // order n of the squared norm-2 class
};

/// all d with -d = 1 mod 8, d < 4^(n+1), whose squared norm-2 class has
/// order exactly n
std::vector<DiscriminantRecord> discriminants_with_order(int n);

struct ClassRelation {
    long lhs;  // sum of h(-d) over the discriminant set
    long rhs;  // divisor sum (3 when n = 1)
    bool equal;
};
ClassRelation verify_class_relation(int n);

/// smallest `count` primes representable as x^2 + d y^2 with x, y >= 1
std::vector<std::uint64_t> represented_primes(std::int64_t d, int count);

bool is_prime_u64(std::uint64_t n);

/// true iff g splits into deg(g) distinct linear factors mod q
bool splits_completely_mod(const IntPoly& g, std::uint64_t q);

struct LabelWitness {
    std::int64_t d;
    int h;
    std::vector<std::uint64_t> split_primes;  // positive witnesses for d
};

/// The unique discriminant record of level n with deg g = 2h whose
/// represented primes split g completely (3 witnesses) while every rival
/// candidate owns a represented prime that fails; labeling-failure is an
/// integrity_error.
LabelWitness label_factor_discriminant(const IntPoly& g, int n);

} // namespace qdyn

#endif
