/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_RESULTANT_HPP
#define QDYN_RESULTANT_HPP

#include "qdyn/bipoly.hpp"

namespace qdyn {

/// Res_w(A(x,w), B(w,z)): eliminate the second variable of A, which is
/// identified with the first variable of B.  The result lives in (x,z).
/// Both inputs must have positive degree in w.
///
/// Two routes produce the identical value:
///  - Sylvester-matrix fraction-free (Bareiss) elimination with
///    bivariate entries, used while the Sylvester dimension stays small;
///  - evaluation at integer nodes / univariate integer resultants /
///    Newton interpolation, used for the large levels.
/// `threads` caps the worker count of the interpolation grid
/// (0 = hardware concurrency).
BiPoly resultant_elim(const BiPoly& A, const BiPoly& B, int threads = 0);

/// Force one specific route (exposed for the agreement tests).
BiPoly resultant_elim_bareiss(const BiPoly& A, const BiPoly& B);
BiPoly resultant_elim_interp(const BiPoly& A, const BiPoly& B,
                             int threads = 0);

} // namespace qdyn

#endif
