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

#ifndef DYNZETA_ORDERS_HPP
#define DYNZETA_ORDERS_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dynzeta/arith.hpp"

namespace dynzeta {

// tau^2 - T tau + N = 0 with T^2 - 4N < 0.
struct QuadRing {
    mpz_class T, N;
    bool operator==(const QuadRing& o) const { return T == o.T && N == o.N; }
    static QuadRing gaussian() { return {0, 1}; }  // Z[i]
    static QuadRing eisenstein() { return {-1, 1}; }  // Z[w], w^2 + w + 1 = 0
};

class QuadElem {
public:
    QuadElem() = default;
    QuadElem(QuadRing ring, mpz_class a, mpz_class b);
    static QuadElem integer(const QuadRing& ring, const mpz_class& a) { return {ring, a, 0}; }
    static QuadElem tau(const QuadRing& ring) { return {ring, 0, 1}; }

    const QuadRing& ring() const noexcept { return ring_; }
    const mpz_class& a() const noexcept { return a_; }
    const mpz_class& b() const noexcept { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    QuadElem operator+(const QuadElem& o) const;
    QuadElem operator-(const QuadElem& o) const;
    QuadElem operator-() const { return {ring_, -a_, -b_}; }
    QuadElem operator*(const QuadElem& o) const;
    bool operator==(const QuadElem& o) const { return ring_ == o.ring_ && a_ == o.a_ && b_ == o.b_; }
    QuadElem pow(u64 n) const;
    QuadElem conj() const;
    mpz_class norm() const;
    mpz_class trace() const;
    std::string to_string() const;

private:
    QuadRing ring_{0, 1};
    mpz_class a_, b_;
};

enum class QuatOrder { hurwitz, order3 };

/**
 * @brief Element of one of the two explicit maximal quaternion orders.
 *
 * hurwitz: i^2 = j^2 = -1, basis i, j, k, (1+i+j+k)/2 (p = 2).
 * order3: i^2 = -1, j^2 = -3, basis 1, i, (1+j)/2, (i+k)/2 (p = 3).
 * Stored as doubled standard coordinates X, x = (X0 + X1 i + X2 j + X3 k)/2.
 */
class QuatElem {
public:
    QuatElem() = default;
    // From doubled standard coordinates; checks membership in the order.
    static QuatElem from_doubled(QuatOrder order, mpz_class X0, mpz_class X1, mpz_class X2, mpz_class X3);
    // From coordinates over the order's fixed Z-basis.
    static QuatElem from_basis(QuatOrder order, const mpz_class& c0, const mpz_class& c1, const mpz_class& c2,
                               const mpz_class& c3);
    static QuatElem integer(QuatOrder order, const mpz_class& a) { return from_doubled(order, 2 * a, 0, 0, 0); }

    QuatOrder order() const noexcept { return order_; }
    u64 prime() const noexcept { return order_ == QuatOrder::hurwitz ? 2 : 3; }
    const mpz_class& doubled(int i) const { return X_[i]; }
    std::vector<mpz_class> basis_coords() const;
    bool is_zero() const { return X_[0] == 0 && X_[1] == 0 && X_[2] == 0 && X_[3] == 0; }

    QuatElem operator+(const QuatElem& o) const;
    QuatElem operator-(const QuatElem& o) const;
    QuatElem operator-() const;
    QuatElem operator*(const QuatElem& o) const;
    bool operator==(const QuatElem& o) const;
    QuatElem pow(u64 n) const;
    QuatElem conj() const;
    mpz_class reduced_norm() const;
    mpz_class reduced_trace() const;
    mpz_class norm() const { return reduced_norm(); }
    mpz_class trace() const { return reduced_trace(); }
    std::string to_string() const;

private:
    QuatOrder order_ = QuatOrder::hurwitz;
    mpz_class X_[4];
};

/**
 * @brief The prime at which valuations are measured.
 *
 * For split imaginary quadratic rings the prime p = P P' is handled
 * through a Hensel-lifted root u of x^2 - T x + N: the embedding
 * tau -> u measures P', and v_P(x) = v_p(N(x)) - v_p(a + b u).
 */
class PrimeContext {
public:
    enum class Kind { rational, quad_ordinary, quaternion };

    static PrimeContext rational(u64 p);
    static PrimeContext quaternion(u64 p);
    // orientation: residue of the root embedding P' (default: the unit root,
    // or the smaller residue when both roots are units).
    static PrimeContext quad_ordinary(const QuadRing& ring, u64 p, std::optional<u64> orientation = std::nullopt,
                                      unsigned precision = 32);

    Kind kind() const noexcept { return kind_; }
    u64 p() const noexcept { return p_; }
    const QuadRing& ring() const noexcept { return ring_; }
    const mpz_class& root() const noexcept { return u_; }
    unsigned precision() const noexcept { return precision_; }
    PrimeContext with_precision(unsigned precision) const;

private:
    Kind kind_ = Kind::rational;
    u64 p_ = 2;
    QuadRing ring_{0, 1};
    u64 root_mod_p_ = 0;
    mpz_class u_;
    unsigned precision_ = 0;
};

unsigned v_p_int(const mpz_class& x, u64 p);
unsigned v_frak_p(const QuadElem& x, const PrimeContext& ctx);
unsigned v_I(const QuatElem& x);
// v_p(N(x)); the basis-free supersingular valuation used for p >= 5.
unsigned v_I_norm(const QuadElem& x, u64 p);

// Lifting the exponent; nullopt when x = y (infinite valuation).
std::optional<u64> lte_int(const mpz_class& x, const mpz_class& y, u64 p, u64 n);
std::optional<u64> lte_quad(const QuadElem& x, const QuadElem& y, const PrimeContext& ctx, u64 n);
std::optional<u64> lte_quat(const QuatElem& x, const QuatElem& y, u64 n);

// Least m >= 1 with v(sigma^m - 1) >= r; sigma must be a unit at the prime.
u64 unit_order_mod_power(const QuadElem& sigma, const PrimeContext& ctx, unsigned r);
u64 unit_order_mod_power(const QuatElem& sigma, unsigned r);

struct NormSequence {
    u64 ell = 0;
    std::vector<u64> direct;  // a_n = N(sigma^n - gamma) mod ell, n = 1..length
    std::vector<u64> recurrence;  // the same from the order-4 recurrence
    bool agree = false;
    u64 preperiod = 0;
    u64 period = 0;
    std::optional<unsigned> A;  // least A <= 4 with period | (l-1)(l^2-1) l^A
};

NormSequence norm_sequence(const QuadElem& sigma, const QuadElem& gamma, u64 ell, std::size_t length);
NormSequence norm_sequence(const QuatElem& sigma, const QuatElem& gamma, u64 ell, std::size_t length);

enum class RingFlavor { quadratic, quaternion };
enum class SpecialJ { none, j0, j1728 };

struct AutElement {
    std::variant<QuadElem, QuatElem> gamma;
    unsigned order = 1;  // multiplicative order of gamma
    mpz_class norm_one_minus;  // N(1 - gamma)
    unsigned v_one_minus = 0;  // valuation of 1 - gamma at the prime (0 for gamma = 1 by convention)
    mpz_class C;  // p^{v_one_minus}
};

struct AutSubgroup {
    std::string name;
    std::vector<AutElement> elements;
};

std::vector<AutSubgroup> aut_group_table(u64 p, SpecialJ j, RingFlavor flavor);

}  // namespace dynzeta

#endif
