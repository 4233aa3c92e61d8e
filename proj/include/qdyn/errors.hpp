/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_ERRORS_HPP
#define QDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdyn {

// Bad input to an operation (precondition violated by the caller).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// A division that was promised to be exact left a remainder.  Always
// indicates a bug upstream in the pipeline, never a user error.
class inexact_division_error : public std::runtime_error {
public:
    explicit inexact_division_error(const std::string& what)
        : std::runtime_error(what) {}
};

// A structural invariant failed (factor product mismatch, ambiguous
// label, orbit that does not close, corrupt cache entry, ...).
class integrity_error : public std::runtime_error {
public:
    explicit integrity_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Request exceeds a configured resource limit (level > n_max, search
// bound exhausted, ...).
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what)
        : std::runtime_error(what) {}
};

// An iteration failed to converge within its cap.  Signals a precision
// bookkeeping bug rather than a property of the input.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace qdyn

#endif
