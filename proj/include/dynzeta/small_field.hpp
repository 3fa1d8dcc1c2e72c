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

#ifndef DYNZETA_SMALL_FIELD_HPP
#define DYNZETA_SMALL_FIELD_HPP

#include <cstdint>
#include <vector>

#include "dynzeta/field.hpp"

namespace dynzeta {

/**
 * @brief Table-driven F_{p^k} with q <= 10^6 for enumeration oracles.
 *
 * Elements are discrete logarithms to a primitive element g (a root of
 * the least primitive polynomial); zero is encoded as q - 1. Addition
 * uses the Zech table Z(n) = log(1 + g^n).
 */
class SmallField {
public:
    using E = std::uint32_t;

    SmallField(u64 p, unsigned k);

    u64 p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    u64 q() const noexcept { return q_; }
    E zero() const noexcept { return static_cast<E>(q_ - 1); }
    E one() const noexcept { return 0; }
    bool is_zero(E a) const noexcept { return a == zero(); }

    E add(E a, E b) const noexcept {
        if (a == zero()) return b;
        if (b == zero()) return a;
        E d = b >= a ? b - a : static_cast<E>(b + (q_ - 1) - a);
        E z = zech_[d];
        if (z == zero()) return zero();
        u64 s = u64(a) + z;
        return static_cast<E>(s >= q_ - 1 ? s - (q_ - 1) : s);
    }
    E neg(E a) const noexcept {
        if (a == zero()) return a;
        u64 s = u64(a) + half_;
        return static_cast<E>(s >= q_ - 1 ? s - (q_ - 1) : s);
    }
    E sub(E a, E b) const noexcept { return add(a, neg(b)); }
    E mul(E a, E b) const noexcept {
        if (a == zero() || b == zero()) return zero();
        u64 s = u64(a) + b;
        return static_cast<E>(s >= q_ - 1 ? s - (q_ - 1) : s);
    }
    E inv(E a) const;
    E div(E a, E b) const { return mul(a, inv(b)); }
    E pow(E a, u64 e) const noexcept;
    E from_int(i64 v) const noexcept;
    bool is_square(E a) const noexcept { return a == zero() || p_ == 2 || a % 2 == 0; }
    // Index of an element in the packed base-p digit encoding, and back.
    u64 to_index(E a) const noexcept { return a == zero() ? 0 : exp_[a]; }
    E from_index(u64 idx) const noexcept { return log_[idx]; }
    // The element whose index is i; enumeration order of the field.
    E element(u64 i) const noexcept { return log_[i]; }

    // Image of an element of a FieldCtx whose degree divides k.
    class Embedding {
    public:
        Embedding(const SmallField& sf, const FieldRef& ctx);
        E operator()(const FieldElem& c) const;

    private:
        const SmallField* sf_;
        FieldRef ctx_;
        E root_;
    };

private:
    u64 p_;
    unsigned k_;
    u64 q_;
    u64 half_;  // log(-1)
    std::vector<std::uint32_t> exp_;  // log -> index
    std::vector<E> log_;  // index -> log
    std::vector<E> zech_;
};

}  // namespace dynzeta

#endif
