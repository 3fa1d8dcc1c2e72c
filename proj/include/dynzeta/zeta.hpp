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

#ifndef DYNZETA_ZETA_HPP
#define DYNZETA_ZETA_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dynzeta/certificate.hpp"
#include "dynzeta/families.hpp"

namespace dynzeta {

using IntPoly = std::vector<mpz_class>;  // coefficients in t, constant first

enum class ZetaProvenance { exp_formula, product_formula };

// Coefficients c_0 = 1, c_1, ..., c_N; always integral.
struct ZetaSeries {
    std::vector<mpz_class> coeffs;
    ZetaProvenance provenance = ZetaProvenance::exp_formula;
    std::size_t length() const { return coeffs.size(); }
};

// counts[i] = #Per_{i+1}; j c_j = sum_{i=1..j} Per_i c_{j-i}.
ZetaSeries zeta_from_counts(const std::vector<mpz_class>& counts);
ZetaSeries zeta_from_counts(const std::vector<u64>& counts);
// prod_L (1 - t^L)^{-cycles[L]}, cycles[0] unused, to t^n.
ZetaSeries zeta_from_cycles(const std::vector<u64>& cycles, std::size_t n);

// Power series of num/den to t^n; den must have constant term +-1.
std::vector<mpz_class> series_of_rational(const IntPoly& num, const IntPoly& den, std::size_t n);

struct ClosedForm {
    IntPoly numerator;
    IntPoly denominator;
    std::string to_string() const;
};

inline constexpr unsigned rationality_max_order = 8;
inline constexpr unsigned rationality_slack = 4;

struct RationalityGuess {
    std::vector<mpq_class> recurrence;  // s_n = sum_i recurrence[i-1] s_{n-i}
    std::vector<std::pair<mpz_class, long>> factors;  // zeta = prod (1 - alpha t)^{-e}
    std::optional<ClosedForm> zeta;
};

// Least-order linear recurrence of the counts (order <= 8), validated on the
// whole prefix; the closed form is present when the roots are integers.
std::optional<RationalityGuess> rationality_guess(const std::vector<mpz_class>& counts);

enum class VerdictKind { rational, transcendental_evidence };

struct VerdictParams {
    std::size_t series_terms = 30;
    CertificateParams certificate;
};

struct Verdict {
    VerdictKind kind = VerdictKind::rational;
    std::string basis;  // which result the outcome rests on
    std::optional<ClosedForm> closed_form;
    std::vector<mpz_class> series;  // zeta prefix from the counts
    bool series_verified = false;   // closed form expansion equals the series
    std::optional<Certificate> certificate;
};

Verdict verdict(const DynAffineMap& map, const VerdictParams& params = {});

}  // namespace dynzeta

#endif
