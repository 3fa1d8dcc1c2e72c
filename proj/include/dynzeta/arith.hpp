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

#ifndef DYNZETA_ARITH_HPP
#define DYNZETA_ARITH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace dynzeta {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return (s >= m || s < a) ? s - m : s;
}
inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);  // m prime or gcd(a, m) = 1

bool is_prime(u64 n);  // deterministic Miller-Rabin
u64 next_prime(u64 n);  // least prime >= n

// Prime factorization by trial division, ascending primes with exponents.
std::vector<std::pair<u64, unsigned>> factor(u64 n);

// Multiplicative order of a modulo m (gcd(a, m) = 1).
u64 mult_order(u64 a, u64 m);

// p-adic valuation of a nonzero integer; throws zero_input on 0.
unsigned v_p(const mpz_class& x, u64 p);
unsigned v_p(i64 x, u64 p);

mpz_class mpz_pow(u64 base, unsigned long e);
mpz_class mpz_pow(const mpz_class& base, unsigned long e);
u64 mpz_mod(const mpz_class& x, u64 m);  // result in [0, m)
mpz_class mpz_from_u64(u64 x);
u64 mpz_to_u64(const mpz_class& x);  // requires 0 <= x < 2^64

// Global caps. DYNZETA_SCALE_CAP lowers the degree cap.
u64 degree_cap();
constexpr u64 enumeration_cap = 1000000;

}  // namespace dynzeta

#endif
