/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_CLI_HPP
#define QDYN_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qdyn {

struct RunConfig {
    int precision = 64;      // 16..256
    int nmax = 3;            // 1..4
    std::string cache_dir;   // QDYN_CACHE_DIR or .qdyn-cache when empty
    int threads = 0;         // 0 = hardware concurrency
    std::uint64_t seed = 1;
    std::string format = "text";  // text | json

    void validate() const;   // throws domain_error on a bad combination
};

/// exit codes: 0 ok, 2 usage, 3 invariant failure, 4 capacity
enum ExitCode {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInvariant = 3,
    kExitCapacity = 4,
};

/// Parse and run one invocation.  args excludes the program name.
/// Identical args yield byte-identical documents on `out`.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

} // namespace qdyn

#endif
