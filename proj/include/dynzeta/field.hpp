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

#ifndef DYNZETA_FIELD_HPP
#define DYNZETA_FIELD_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dynzeta/arith.hpp"

namespace dynzeta {

enum class Flavor { finite, rational_function };

class FieldCtx;
using FieldRef = std::shared_ptr<const FieldCtx>;

/**
 * @brief Immutable description of F_{p^k} or of F_p(u).
 *
 * Finite elements are packed as k words c_0..c_{k-1} representing
 * sum c_i a^i, where a is a root of the modulus. The modulus is the
 * least monic irreducible of degree k in the order (c_{k-1}, ..., c_0);
 * a seed s selects the s-th one instead.
 */
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
public:
    static constexpr unsigned max_degree = 12;

    static FieldRef make(u64 p, unsigned k = 1, std::optional<u64> seed = std::nullopt);
    static FieldRef make_rational(u64 p);

    u64 p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    Flavor flavor() const noexcept { return flavor_; }
    bool is_finite() const noexcept { return flavor_ == Flavor::finite; }
    // Monic modulus, k+1 ascending coefficients; empty for prime fields.
    const std::vector<u64>& modulus() const noexcept { return modulus_; }
    // q = p^k for the finite flavor.
    const mpz_class& order() const noexcept { return q_; }
    // The prime field F_p (the coefficient field of F_p(u)).
    FieldRef prime_field() const;

    // Packed arithmetic on k words (finite flavor only).
    void add(const u64* a, const u64* b, u64* out) const noexcept;
    void sub(const u64* a, const u64* b, u64* out) const noexcept;
    void neg(const u64* a, u64* out) const noexcept;
    void mul(const u64* a, const u64* b, u64* out) const noexcept;
    void inv(const u64* a, u64* out) const;
    bool is_zero(const u64* a) const noexcept;
    bool is_one(const u64* a) const noexcept;

    std::string describe() const;

private:
    FieldCtx() = default;

    u64 p_ = 2;
    unsigned k_ = 1;
    Flavor flavor_ = Flavor::finite;
    std::vector<u64> modulus_;
    mpz_class q_;
    FieldRef base_;  // prime field when this is not itself F_p
};

class FieldElem;

/**
 * @brief Dense polynomial over a finite-flavor FieldCtx.
 *
 * Coefficients are stored flat with stride k, ascending. The zero
 * polynomial has no coefficients and degree -1.
 */
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldRef ctx) : ctx_(std::move(ctx)) {}
    Poly(FieldRef ctx, std::vector<u64> flat);

    static Poly from_ints(FieldRef ctx, const std::vector<i64>& ascending);
    static Poly constant(const FieldElem& c);
    static Poly monomial(const FieldElem& c, std::size_t e);
    static Poly x(FieldRef ctx);

    const FieldRef& ctx() const noexcept { return ctx_; }
    int degree() const noexcept { return static_cast<int>(size()) - 1; }
    std::size_t size() const noexcept { return ctx_ ? c_.size() / ctx_->k() : 0; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_monic() const;
    const u64* raw(std::size_t i) const { return c_.data() + i * ctx_->k(); }
    const std::vector<u64>& flat() const noexcept { return c_; }
    FieldElem coeff(std::size_t i) const;
    FieldElem lead() const;
    void set_coeff(std::size_t i, const FieldElem& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const FieldElem& c) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    std::pair<Poly, Poly> divrem(const Poly& b) const;
    Poly operator/(const Poly& b) const { return divrem(b).first; }
    Poly operator%(const Poly& b) const { return divrem(b).second; }
    Poly monic() const;
    Poly derivative() const;
    Poly pow(u64 e) const;
    FieldElem eval(const FieldElem& x) const;
    // Substitute x -> x^e.
    Poly inflate(std::size_t e) const;
    Poly compose(const Poly& g) const;

    std::string to_string(const char* var = "x") const;

private:
    void trim();

    FieldRef ctx_;
    std::vector<u64> c_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic, gcd(0, 0) = 0
Poly lcm(const Poly& a, const Poly& b);  // monic

/**
 * @brief Element of F_{p^k} or F_p(u) in canonical form.
 *
 * Rational-function elements keep num/den over F_p with gcd 1 and a
 * monic denominator; zero is 0/1.
 */
class FieldElem {
public:
    FieldElem() = default;
    static FieldElem zero(const FieldRef& ctx);
    static FieldElem one(const FieldRef& ctx);
    static FieldElem from_int(const FieldRef& ctx, i64 v);
    static FieldElem from_words(const FieldRef& ctx, std::vector<u64> words);
    // The class of the variable: a (root of modulus) or u.
    static FieldElem generator(const FieldRef& ctx);
    static FieldElem fraction(const FieldRef& ctx, Poly num, Poly den);

    const FieldRef& ctx() const noexcept { return ctx_; }
    const std::vector<u64>& words() const noexcept { return v_; }
    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    // Lies in F_p (finite) or is a constant function (rational).
    bool is_constant() const noexcept;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem inv() const;
    FieldElem pow(const mpz_class& e) const;
    FieldElem pow(u64 e) const { return pow(mpz_from_u64(e)); }
    // Absolute Frobenius c -> c^p, and its inverse on finite fields.
    FieldElem frobenius() const;
    FieldElem frobenius(unsigned times) const;
    FieldElem pth_root() const;

    std::string to_string() const;

private:
    FieldRef ctx_;
    std::vector<u64> v_;
    Poly num_, den_;
};

// Monic squarefree polynomial with the same roots as f over the closure.
Poly separable_radical(const Poly& f);
std::size_t distinct_root_count(const Poly& f);

}  // namespace dynzeta

#endif
