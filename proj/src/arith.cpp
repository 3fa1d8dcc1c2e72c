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

#include "dynzeta/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "dynzeta/error.hpp"

namespace dynzeta {

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    u64 r = m, nr = a % m;
    u64 tm = 0, ntm = 1;
    while (nr) {
        u64 q = r / nr;
        u64 tmp = submod(tm, mulmod(q % m, ntm, m), m);
        tm = ntm;
        ntm = tmp;
        u64 rr = r - q * nr;
        r = nr;
        nr = rr;
    }
    require(r == 1, Errc::zero_element, "element is not invertible");
    return tm;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % sp == 0) return n == sp;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 next_prime(u64 n) {
    while (!is_prime(n)) ++n;
    return n;
}

namespace {

u64 rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return addmod(mulmod(x, x, n), c, n); };
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factor(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 d = 2; d < 1000 && d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    std::vector<u64> rest;
    factor_into(n, rest);
    std::sort(rest.begin(), rest.end());
    for (u64 r : rest) {
        if (!out.empty() && out.back().first == r) {
            ++out.back().second;
        } else {
            out.emplace_back(r, 1);
        }
    }
    return out;
}

u64 mult_order(u64 a, u64 m) {
    require(m >= 2, Errc::invalid_argument, "modulus must be at least 2");
    a %= m;
    require(std::gcd(a, m) == 1, Errc::invalid_argument, "order of a non-unit");
    // phi(m) from its factorization, then strip factors.
    u64 phi = m;
    for (auto [q, e] : factor(m)) phi = phi / q * (q - 1);
    u64 ord = phi;
    for (auto [q, e] : factor(phi)) {
        for (unsigned i = 0; i < e && ord % q == 0 && powmod(a, ord / q, m) == 1; ++i) ord /= q;
    }
    return ord;
}

unsigned v_p(const mpz_class& x, u64 p) {
    require(x != 0, Errc::zero_input, "valuation of zero");
    mpz_class pp = mpz_from_u64(p);
    mpz_class y = abs(x);
    unsigned v = 0;
    while (mpz_divisible_p(y.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), pp.get_mpz_t());
        ++v;
    }
    return v;
}

unsigned v_p(i64 x, u64 p) {
    require(x != 0, Errc::zero_input, "valuation of zero");
    u64 y = x < 0 ? u64(0) - u64(x) : u64(x);
    unsigned v = 0;
    while (y % p == 0) {
        y /= p;
        ++v;
    }
    return v;
}

mpz_class mpz_from_u64(u64 x) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &x);
    return r;
}

u64 mpz_to_u64(const mpz_class& x) {
    require(x >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64, Errc::internal, "value exceeds 64 bits");
    u64 r = 0;
    mpz_export(&r, nullptr, 1, sizeof(u64), 0, 0, x.get_mpz_t());
    return r;
}

mpz_class mpz_pow(u64 base, unsigned long e) { return mpz_pow(mpz_from_u64(base), e); }

mpz_class mpz_pow(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

u64 mpz_mod(const mpz_class& x, u64 m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mpz_from_u64(m).get_mpz_t());
    return mpz_to_u64(r);
}

u64 degree_cap() {
    static const u64 cap = [] {
        u64 c = 10000;
        if (const char* env = std::getenv("DYNZETA_SCALE_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0 && v < c) c = v;
        }
        return c;
    }();
    return cap;
}

}  // namespace dynzeta
