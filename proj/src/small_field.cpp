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

#include "dynzeta/small_field.hpp"

#include "dynzeta/error.hpp"

namespace dynzeta {

namespace {

// Multiply the packed element idx by x modulo the monic poly m (k+1 coefficients).
u64 times_x(u64 idx, const std::vector<u64>& m, u64 p, unsigned k, std::vector<u64>& buf) {
    for (unsigned i = 0; i < k; ++i) {
        buf[i] = idx % p;
        idx /= p;
    }
    u64 top = buf[k - 1];
    for (unsigned i = k - 1; i > 0; --i) buf[i] = buf[i - 1];
    buf[0] = 0;
    if (top) {
        for (unsigned i = 0; i < k; ++i) buf[i] = (buf[i] + (p - top) * m[i]) % p;
    }
    u64 out = 0;
    for (unsigned i = k; i-- > 0;) out = out * p + buf[i];
    return out;
}

}  // namespace

SmallField::SmallField(u64 p, unsigned k) : p_(p), k_(k) {
    require(is_prime(p), Errc::not_prime, "characteristic must be prime");
    require(k >= 1, Errc::invalid_argument, "degree must be positive");
    mpz_class q = mpz_pow(p, k);
    require(q <= enumeration_cap, Errc::scale_exceeded, "table field larger than 10^6 elements");
    q_ = mpz_to_u64(q);
    half_ = p == 2 ? 0 : (q_ - 1) / 2;

    // Least monic polynomial of degree k (order c_{k-1}..c_0) for which
    // x has multiplicative order q - 1; such a polynomial is primitive.
    std::vector<u64> m(k + 1, 0), buf(k);
    m[k] = 1;
    exp_.assign(q_ - 1, 0);
    bool found = false;
    for (u64 code = 0; code < q_ && !found; ++code) {
        u64 c = code;
        for (unsigned i = 0; i < k; ++i) {
            m[i] = c % p;
            c /= p;
        }
        if (m[0] == 0) continue;
        if (k == 1) m[0] = (p - m[0]) % p;  // polynomial x - g for g = code
        u64 idx = 1;  // element 1
        u64 n = 0;
        bool ok = true;
        for (; n < q_ - 1; ++n) {
            exp_[n] = static_cast<std::uint32_t>(idx);
            idx = times_x(idx, m, p, k, buf);
            if (idx == 1) break;
            if (idx == 0) {
                ok = false;
                break;
            }
        }
        found = ok && n == q_ - 2;
    }
    require(found, Errc::internal, "no primitive polynomial found");
    log_.assign(q_, zero());
    for (u64 n = 0; n < q_ - 1; ++n) log_[exp_[n]] = static_cast<E>(n);

    // 1 + g^n: add 1 to the constant digit of the index.
    zech_.assign(q_ - 1, zero());
    for (u64 n = 0; n < q_ - 1; ++n) {
        u64 idx = exp_[n];
        u64 c0 = idx % p;
        u64 sum = idx - c0 + (c0 + 1) % p;
        zech_[n] = log_[sum];
    }
}

SmallField::E SmallField::inv(E a) const {
    require(a != zero(), Errc::zero_element, "inverse of zero");
    return a == 0 ? 0 : static_cast<E>(q_ - 1 - a);
}

SmallField::E SmallField::pow(E a, u64 e) const noexcept {
    if (e == 0) return one();
    if (a == zero()) return zero();
    return static_cast<E>(static_cast<u64>((static_cast<u128>(a) * e) % (q_ - 1)));
}

SmallField::E SmallField::from_int(i64 v) const noexcept {
    i64 r = v % static_cast<i64>(p_);
    if (r < 0) r += static_cast<i64>(p_);
    return log_[static_cast<u64>(r)];
}

SmallField::Embedding::Embedding(const SmallField& sf, const FieldRef& ctx) : sf_(&sf), ctx_(ctx), root_(0) {
    require(ctx->is_finite() && ctx->p() == sf.p() && sf.k() % ctx->k() == 0, Errc::invalid_argument,
            "field does not embed into the table field");
    if (ctx->k() == 1) return;
    const auto& m = ctx->modulus();
    for (u64 i = 0; i < sf.q(); ++i) {
        E x = sf.element(i);
        E acc = sf.zero();
        for (std::size_t j = m.size(); j-- > 0;) acc = sf.add(sf.mul(acc, x), sf.from_int(static_cast<i64>(m[j])));
        if (sf.is_zero(acc)) {
            root_ = x;
            return;
        }
    }
    fail(Errc::internal, "modulus has no root in the table field");
}

SmallField::E SmallField::Embedding::operator()(const FieldElem& c) const {
    const auto& w = c.words();
    E acc = sf_->zero();
    for (std::size_t j = w.size(); j-- > 0;) acc = sf_->add(sf_->mul(acc, root_), sf_->from_int(static_cast<i64>(w[j])));
    return acc;
}

}  // namespace dynzeta
