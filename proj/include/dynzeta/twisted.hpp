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

#ifndef DYNZETA_TWISTED_HPP
#define DYNZETA_TWISTED_HPP

#include <optional>
#include <string>
#include <vector>

#include "dynzeta/field.hpp"

namespace dynzeta {

/**
 * @brief Element sum c_i phi^i of k<phi>, with phi c = c^p phi.
 *
 * The degree is kept as the phi-index m of the top coefficient; as an
 * additive polynomial the degree is p^m.
 */
class TwistedPoly {
public:
    TwistedPoly() = default;
    explicit TwistedPoly(FieldRef ctx) : ctx_(std::move(ctx)) {}
    TwistedPoly(FieldRef ctx, std::vector<FieldElem> coeffs);
    static TwistedPoly phi(const FieldRef& ctx);
    static TwistedPoly scalar(const FieldElem& c);
    // Integer coefficients c_0, c_1, ... reduced into ctx.
    static TwistedPoly from_ints(const FieldRef& ctx, const std::vector<i64>& coeffs);

    const FieldRef& ctx() const noexcept { return ctx_; }
    const std::vector<FieldElem>& coeffs() const noexcept { return c_; }
    int top() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    FieldElem coeff(std::size_t i) const;

    TwistedPoly operator+(const TwistedPoly& o) const;
    TwistedPoly operator-(const TwistedPoly& o) const;
    TwistedPoly operator-() const;
    bool operator==(const TwistedPoly& o) const { return c_ == o.c_; }

    // Keep only phi^i for i < K.
    TwistedPoly truncated(std::size_t K) const;
    // sum c_i x^{p^i}; finite flavor, degree within the cap.
    Poly realize() const;
    mpz_class degree() const { return mpz_pow(ctx_->p(), static_cast<unsigned long>(std::max(top(), 0))); }

    std::string to_string() const;

private:
    void trim();

    FieldRef ctx_;
    std::vector<FieldElem> c_;
};

TwistedPoly tw_mul(const TwistedPoly& a, const TwistedPoly& b);
// Product truncated modulo phi^K.
TwistedPoly tw_mul_trunc(const TwistedPoly& a, const TwistedPoly& b, std::size_t K);
TwistedPoly tw_pow(const TwistedPoly& a, u64 n);
TwistedPoly tw_sub_scalar(const TwistedPoly& a, const FieldElem& w);

// Least i with c_i != 0; nullopt stands for an infinite valuation.
std::optional<u64> v_phi(const TwistedPoly& a);
// v_phi(sigma^n - w) by truncated powering with doubling precision.
std::optional<u64> v_phi_pow_minus(const TwistedPoly& sigma, u64 n, const FieldElem& w);

mpz_class kernel_size_ga(const TwistedPoly& sigma);

// v_phi(x^n - 1) = v_phi(x - 1) p^{v_p(n)}, cross-checked directly.
std::optional<u64> lte_ga(const TwistedPoly& x, u64 n);

struct ConstantOrder {
    bool transcendental = false;
    u64 m = 0;
};
ConstantOrder constant_order(const TwistedPoly& sigma);

// Multiplicative order of a nonzero finite-field element.
u64 element_order(const FieldElem& c);

}  // namespace dynzeta

#endif
