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

#ifndef DYNZETA_ERROR_HPP
#define DYNZETA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace dynzeta {

enum class Errc {
    invalid_argument,
    not_prime,
    no_irreducible_found,
    division_by_zero_poly,
    zero_polynomial,
    scale_exceeded,
    infinite,
    zero_element,
    zero_input,
    hypothesis_violated,
    inseparable_sigma,
    precision_exhausted,
    mismatch,
    invalid_combination,
    incomplete,
    not_realizable,
    subadditive_condition_violated,
    non_integer_orbit_count,
    non_integer_coefficient,
    not_a_root,
    singular_root,
    no_admissible_ell,
    internal,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

inline void require(bool cond, Errc code, const char* what) {
    if (!cond) fail(code, what);
}

}  // namespace dynzeta

#endif
