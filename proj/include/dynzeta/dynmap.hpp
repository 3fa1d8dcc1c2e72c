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

#ifndef DYNZETA_DYNMAP_HPP
#define DYNZETA_DYNMAP_HPP

#include <string>
#include <vector>

#include "dynzeta/field.hpp"

namespace dynzeta {

/**
 * @brief Rational self-map N/D of P^1 in reduced form.
 *
 * gcd(N, D) = 1, D is monic and deg = max(deg N, deg D) >= 1.
 */
class RatMap {
public:
    RatMap(Poly num, Poly den);
    static RatMap polynomial(Poly f);

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    const FieldRef& ctx() const noexcept { return num_.ctx(); }
    std::size_t degree() const noexcept;
    bool is_polynomial() const noexcept { return den_.degree() == 0; }
    bool fixes_infinity() const noexcept { return num_.degree() > den_.degree(); }
    bool operator==(const RatMap& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::string to_string() const;

private:
    RatMap() = default;
    friend RatMap compose(const RatMap&, const RatMap&);

    Poly num_, den_;
};

// f o g, with deg(f o g) = deg f * deg g.
RatMap compose(const RatMap& f, const RatMap& g);
RatMap iterate(const RatMap& f, unsigned n);
bool is_separable(const RatMap& f);

// Largest n with deg(f)^n within the degree cap (at least 1 when deg f is).
unsigned oracle_horizon(const RatMap& f);

// #Per_n(f) over the algebraic closure; throws infinite when f^n = id.
u64 per_n_oracle(const RatMap& f, unsigned n);
// #Per_1..#Per_nmax, reusing iterates.
std::vector<u64> per_n_oracle_range(const RatMap& f, unsigned n_max);

struct CycleCensus {
    u64 field_size = 0;  // q^k of the enumerated field
    unsigned max_n = 0;
    std::vector<u64> cycles;  // cycles[L] = number of cycles of length L, L <= max_n
    u64 longer_cycles = 0;  // cycles longer than max_n
};

// Orbit walk over P^1(F_{q^max_k}).
CycleCensus cycle_census(const RatMap& f, unsigned max_k, unsigned max_n);

// sum_{d | n} d * cycles[d] for n = 1..max_n.
std::vector<u64> census_per_n(const CycleCensus& c);

// Largest J such that the census totals agree with the given Per_1..Per_J.
unsigned census_complete_prefix(const CycleCensus& c, const std::vector<u64>& per_n);

}  // namespace dynzeta

#endif
