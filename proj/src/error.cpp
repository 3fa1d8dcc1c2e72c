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

#include "dynzeta/error.hpp"

namespace dynzeta {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_argument: return "InvalidArgument";
        case Errc::not_prime: return "NotPrime";
        case Errc::no_irreducible_found: return "NoIrreducibleFound";
        case Errc::division_by_zero_poly: return "DivisionByZeroPoly";
        case Errc::zero_polynomial: return "ZeroPolynomial";
        case Errc::scale_exceeded: return "ScaleExceeded";
        case Errc::infinite: return "Infinite";
        case Errc::zero_element: return "ZeroElement";
        case Errc::zero_input: return "ZeroInput";
        case Errc::hypothesis_violated: return "HypothesisViolated";
        case Errc::inseparable_sigma: return "InseparableSigma";
        case Errc::precision_exhausted: return "PrecisionExhausted";
        case Errc::mismatch: return "Mismatch";
        case Errc::invalid_combination: return "InvalidCombination";
        case Errc::incomplete: return "Incomplete";
        case Errc::not_realizable: return "NotRealizable";
        case Errc::subadditive_condition_violated: return "SubadditiveConditionViolated";
        case Errc::non_integer_orbit_count: return "NonIntegerOrbitCount";
        case Errc::non_integer_coefficient: return "NonIntegerCoefficient";
        case Errc::not_a_root: return "NotARoot";
        case Errc::singular_root: return "SingularRoot";
        case Errc::no_admissible_ell: return "NoAdmissibleEll";
        case Errc::internal: return "InternalError";
    }
    return "Unknown";
}

void fail(Errc code, const std::string& what) {
    throw Error(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace dynzeta
