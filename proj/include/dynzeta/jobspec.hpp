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

#ifndef DYNZETA_JOBSPEC_HPP
#define DYNZETA_JOBSPEC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dynzeta/families.hpp"

namespace dynzeta {

inline constexpr int job_schema_version = 1;

// A field element as written in a job: an integer, or a polynomial in the
// field generator ("a" for F_{p^k}, "u" for F_p(u)) such as "2*u^2 + 1".
using ElemSpec = std::variant<std::int64_t, std::string>;

struct FieldSpec {
    u64 p = 2;
    unsigned k = 1;
    bool rational = false;                      // F_p(u) instead of F_{p^k}
    std::optional<std::vector<u64>> modulus;    // monic, ascending
    bool operator==(const FieldSpec&) const = default;
};

struct MapSpec {
    std::string family;  // power chebyshev additive subadditive lattes_generic_j
                         // lattes_ordinary lattes_supersingular lattes_supersingular_norm rational
    std::optional<std::int64_t> d;
    std::vector<ElemSpec> sigma;  // twisted coefficients, or ring/quaternion coordinates
    std::optional<ElemSpec> translation;
    std::optional<std::vector<std::int64_t>> ring;   // [T, N]
    std::optional<std::string> order;                // hurwitz | order3
    std::vector<std::vector<std::int64_t>> gammas;
    std::optional<std::string> variant;              // squared | unsquared
    std::optional<std::vector<std::int64_t>> curve;  // [A, B]
    std::vector<ElemSpec> num, den;                  // raw rational map, ascending
    bool operator==(const MapSpec&) const = default;
};

struct RangeSpec {
    u64 n_min = 1;
    u64 n_max = 8;
    u64 terms = 30;  // zeta prefix
    unsigned max_k = 4;  // census extension degree
    bool operator==(const RangeSpec&) const = default;
};

struct AutomataSpec {
    std::string mode = "christol";  // christol | kernel
    std::string equation;           // P(t, y) for christol
    std::vector<u64> prefix;        // initial coefficients for christol
    std::string sequence = "valuation";  // valuation | exponent | christol (kernel mode)
    u64 a = 2, ell = 5, alpha = 1, beta = 0;
    u64 base = 2;
    unsigned depth = 4;
    u64 kernel_prefix = 256;
    bool operator==(const AutomataSpec&) const = default;
};

struct OutputSpec {
    std::string format = "jsonl";  // jsonl | table
    bool operator==(const OutputSpec&) const = default;
};

struct JobSpec {
    int schema = job_schema_version;
    std::string command;  // count zeta verdict oracle automata census
    std::optional<MapSpec> map;
    FieldSpec field;
    RangeSpec range;
    std::optional<AutomataSpec> automata;
    OutputSpec output;
    bool operator==(const JobSpec&) const = default;
};

// Strict: unknown keys and wrong types raise InvalidArgument.
JobSpec job_from_json(const nlohmann::json& j);
nlohmann::json job_to_json(const JobSpec& spec);

FieldRef build_field(const FieldSpec& spec);
FieldElem build_elem(const FieldRef& ctx, const ElemSpec& e);
DynAffineMap build_map(const MapSpec& spec, const FieldRef& ctx);
RatMap build_ratmap(const MapSpec& spec, const FieldRef& ctx);

}  // namespace dynzeta

#endif
