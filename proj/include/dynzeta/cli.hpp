/*
   Copyright 2026 The dynzeta Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DYNZETA_CLI_HPP
#define DYNZETA_CLI_HPP

#include <iosfwd>

#include "dynzeta/error.hpp"
#include "dynzeta/jobspec.hpp"

namespace dynzeta {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_invalid_spec = 2,
    exit_scale = 3,
    exit_inconsistent = 4,
};

int exit_code_for(Errc code);

// Runs one job; records go to out, diagnostics to err.
int run_job(const JobSpec& spec, std::ostream& out, std::ostream& err);

// Full command line: verb plus flags, or --job FILE.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dynzeta

#endif
