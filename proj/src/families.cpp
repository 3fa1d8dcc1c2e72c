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

#include "dynzeta/families.hpp"

#include <algorithm>
#include <numeric>

#include "dynzeta/error.hpp"

namespace dynzeta {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr unsigned long max_bits = 1ul << 24;

void guard_growth(const mpz_class& base, u64 n) {
    const unsigned long bits = mpz_sizeinbase(mpz_class(abs(base)).get_mpz_t(), 2);
    if (n > max_bits || bits * n > max_bits) fail(Errc::scale_exceeded, "closed form exceeds the big-integer budget");
}

// Prime-to-p part of |m|, which is #ker(x^m) on G_m.
mpz_class gm_kernel(const mpz_class& m, u64 p) {
    mpz_class a = abs(m);
    require(a != 0, Errc::infinite, "kernel of the zero endomorphism");
    mpz_class P = mpz_from_u64(p);
    mpz_remove(a.get_mpz_t(), a.get_mpz_t(), P.get_mpz_t());
    return a;
}

mpz_class ga_kernel(const TwistedPoly& sigma, u64 n, const FieldElem& w) {
    auto v = v_phi_pow_minus(sigma, n, w);
    if (!v) fail(Errc::infinite, "sigma^n - w vanishes identically");
    const u64 p = sigma.ctx()->p();
    const mpz_class deg_n = mpz_pow(p, static_cast<unsigned long>(sigma.top()) * n);
    return deg_n / mpz_pow(p, *v);
}

template <class Elem>
void check_gamma_group(const std::vector<Elem>& gammas, const Elem& one, const Elem& sigma,
                       const std::vector<std::size_t>& allowed_sizes) {
    require(std::find(allowed_sizes.begin(), allowed_sizes.end(), gammas.size()) != allowed_sizes.end(),
            Errc::invalid_argument, "Gamma has an unsupported order");
    require(std::find(gammas.begin(), gammas.end(), one) != gammas.end(), Errc::invalid_argument,
            "Gamma must contain 1");
    for (const auto& g : gammas) {
        require(g.norm() == 1, Errc::invalid_argument, "Gamma elements must be units");
        bool finite = false;
        for (u64 k : {1, 2, 3, 4, 6})
            if (g.pow(k) == one) finite = true;
        require(finite, Errc::invalid_argument, "Gamma elements must be roots of unity of order 1, 2, 3, 4 or 6");
        for (const auto& h : gammas)
            require(std::find(gammas.begin(), gammas.end(), g * h) != gammas.end(), Errc::invalid_argument,
                    "Gamma is not closed under multiplication");
        // sigma must normalize Gamma for the quotient map to exist.
        bool normal = false;
        for (const auto& h : gammas)
            if (sigma * g == h * sigma) normal = true;
        require(normal, Errc::invalid_argument, "sigma does not normalize Gamma");
    }
}

mpz_class lattes_generic_kernel(const mpz_class& m, u64 p, LattesVariant variant) {
    require(m != 0, Errc::infinite, "sigma^n -+ 1 vanishes");
    const mpz_class a = abs(m);
    const unsigned v = v_p(a, p);
    const mpz_class top = variant == LattesVariant::squared ? mpz_class(a * a) : a;
    return top / mpz_pow(p, v);
}

}  // namespace

std::string family_name(const DynAffineMap& map) {
    return std::visit(overloaded{
                          [](const PowerMap&) { return std::string("power"); },
                          [](const ChebyshevMap&) { return std::string("chebyshev"); },
                          [](const AdditiveMap&) { return std::string("additive"); },
                          [](const SubadditiveMap&) { return std::string("subadditive"); },
                          [](const LattesGenericJ&) { return std::string("lattes_generic_j"); },
                          [](const LattesOrdinary&) { return std::string("lattes_ordinary"); },
                          [](const LattesSupersingular&) { return std::string("lattes_supersingular"); },
                          [](const LattesSupersingularNorm&) { return std::string("lattes_supersingular_norm"); },
                      },
                      map);
}

u64 characteristic(const DynAffineMap& map) {
    return std::visit(overloaded{
                          [](const PowerMap& m) { return m.ctx->p(); },
                          [](const ChebyshevMap& m) { return m.ctx->p(); },
                          [](const AdditiveMap& m) { return m.sigma.ctx()->p(); },
                          [](const SubadditiveMap& m) { return m.sigma.ctx()->p(); },
                          [](const LattesGenericJ& m) { return m.p; },
                          [](const LattesOrdinary& m) { return m.prime.p(); },
                          [](const LattesSupersingular& m) { return m.sigma.prime(); },
                          [](const LattesSupersingularNorm& m) { return m.p; },
                      },
                      map);
}

void validate(const DynAffineMap& map) {
    std::visit(overloaded{
                   [](const PowerMap& m) {
                       require(m.ctx != nullptr, Errc::invalid_argument, "power map needs a field");
                       require(m.d <= -2 || m.d >= 2, Errc::invalid_argument, "power map needs |d| >= 2");
                   },
                   [](const ChebyshevMap& m) {
                       require(m.ctx != nullptr, Errc::invalid_argument, "Chebyshev map needs a field");
                       require(m.d <= -2 || m.d >= 2, Errc::invalid_argument, "Chebyshev map needs |d| >= 2");
                   },
                   [](const AdditiveMap& m) {
                       require(m.sigma.top() >= 1, Errc::invalid_argument, "additive map needs degree >= p");
                       require(m.translation.ctx() == m.sigma.ctx(), Errc::invalid_argument,
                               "translation lies in a different field");
                   },
                   [](const SubadditiveMap& m) {
                       require(m.sigma.top() >= 1, Errc::invalid_argument, "subadditive map needs degree >= p");
                       const u64 p = m.sigma.ctx()->p();
                       require(m.d >= 2 && std::gcd(m.d, p) == 1, Errc::invalid_argument,
                               "subadditive map needs d >= 2 prime to p");
                       for (int i = 0; i <= m.sigma.top(); ++i) {
                           if (m.sigma.coeff(i).is_zero()) continue;
                           if (powmod(p % m.d, static_cast<u64>(i), m.d) != 1 % m.d)
                               fail(Errc::subadditive_condition_violated,
                                    "psi has a term whose degree is not 1 mod d");
                       }
                       root_of_unity(m.sigma.ctx(), m.d);
                   },
                   [](const LattesGenericJ& m) {
                       require(is_prime(m.p), Errc::not_prime, "characteristic must be prime");
                       require(m.sigma <= -2 || m.sigma >= 2, Errc::invalid_argument, "Lattes map needs |sigma| >= 2");
                       if (m.curve) require(m.curve->ctx()->p() == m.p, Errc::invalid_argument, "curve characteristic");
                   },
                   [](const LattesOrdinary& m) {
                       require(m.prime.kind() == PrimeContext::Kind::quad_ordinary, Errc::invalid_argument,
                               "ordinary Lattes map needs a split prime context");
                       require(m.sigma.ring() == m.prime.ring(), Errc::invalid_argument, "sigma lies in another ring");
                       require(m.sigma.norm() >= 2, Errc::invalid_argument, "Lattes map needs deg sigma >= 2");
                       for (const auto& g : m.gammas)
                           require(g.ring() == m.sigma.ring(), Errc::invalid_argument, "gamma lies in another ring");
                       check_gamma_group(m.gammas, QuadElem::integer(m.sigma.ring(), 1), m.sigma, {2, 3, 4, 6});
                   },
                   [](const LattesSupersingular& m) {
                       require(m.sigma.reduced_norm() >= 2, Errc::invalid_argument, "Lattes map needs deg sigma >= 2");
                       for (const auto& g : m.gammas)
                           require(g.order() == m.sigma.order(), Errc::invalid_argument, "gamma lies in another order");
                       check_gamma_group(m.gammas, QuatElem::integer(m.sigma.order(), 1), m.sigma,
                                         {2, 3, 4, 6, 8, 12, 24});
                   },
                   [](const LattesSupersingularNorm& m) {
                       require(is_prime(m.p) && m.p >= 5, Errc::invalid_argument, "norm form needs a prime p >= 5");
                       require(m.sigma.norm() >= 2, Errc::invalid_argument, "Lattes map needs deg sigma >= 2");
                       for (const auto& g : m.gammas)
                           require(g.ring() == m.sigma.ring(), Errc::invalid_argument, "gamma lies in another ring");
                       check_gamma_group(m.gammas, QuadElem::integer(m.sigma.ring(), 1), m.sigma, {2, 3, 4, 6});
                   },
               },
               map);
}

mpz_class map_degree(const DynAffineMap& map) {
    return std::visit(overloaded{
                          [](const PowerMap& m) { return mpz_class(std::abs(m.d)); },
                          [](const ChebyshevMap& m) { return mpz_class(std::abs(m.d)); },
                          [](const AdditiveMap& m) { return m.sigma.degree(); },
                          [](const SubadditiveMap& m) { return m.sigma.degree(); },
                          [](const LattesGenericJ& m) { return mpz_class(m.sigma * m.sigma); },
                          [](const LattesOrdinary& m) { return m.sigma.norm(); },
                          [](const LattesSupersingular& m) { return m.sigma.reduced_norm(); },
                          [](const LattesSupersingularNorm& m) { return m.sigma.norm(); },
                      },
                      map);
}

Separability classify_separability(const DynAffineMap& map) {
    const u64 p = characteristic(map);
    const bool sep = std::visit(
        overloaded{
            [p](const PowerMap& m) { return static_cast<u64>(std::abs(m.d)) % p != 0; },
            [p](const ChebyshevMap& m) { return static_cast<u64>(std::abs(m.d)) % p != 0; },
            [](const AdditiveMap& m) { return v_phi(m.sigma) == 0u; },
            [](const SubadditiveMap& m) { return v_phi(m.sigma) == 0u; },
            [p](const LattesGenericJ& m) { return static_cast<u64>(std::abs(m.sigma)) % p != 0; },
            [](const LattesOrdinary& m) { return v_frak_p(m.sigma, m.prime) == 0; },
            [](const LattesSupersingular& m) { return v_I(m.sigma) == 0; },
            [p](const LattesSupersingularNorm& m) { return v_I_norm(m.sigma, p) == 0; },
        },
        map);
    return sep ? Separability::separable : Separability::inseparable;
}

mpz_class per_n_template(u64 boundary, const std::vector<mpz_class>& kernel_sizes) {
    require(!kernel_sizes.empty(), Errc::invalid_argument, "Gamma must be nonempty");
    mpz_class sum = 0;
    for (const auto& k : kernel_sizes) sum += k;
    const mpz_class order = mpz_from_u64(kernel_sizes.size());
    if (!mpz_divisible_p(sum.get_mpz_t(), order.get_mpz_t()))
        fail(Errc::non_integer_orbit_count, "kernel sizes do not average to an integer");
    return boundary + sum / order;
}

mpz_class per_n_closed(const DynAffineMap& map, u64 n) {
    require(n >= 1, Errc::invalid_argument, "n must be positive");
    validate(map);
    const u64 p = characteristic(map);
    const mpz_class deg = map_degree(map);
    guard_growth(deg, n);
    if (classify_separability(map) == Separability::inseparable) return mpz_pow(deg, n) + 1;

    return std::visit(
        overloaded{
            [&](const PowerMap& m) {
                const mpz_class dn = mpz_pow(mpz_class(m.d), n);
                // x^d with d < 0 swaps 0 and infinity; both are n-periodic exactly when n is even.
                const u64 boundary = (m.d > 0 || n % 2 == 0) ? 2 : 0;
                return per_n_template(boundary, {gm_kernel(dn - 1, p)});
            },
            [&](const ChebyshevMap& m) {
                const mpz_class dn = mpz_pow(mpz_class(std::abs(m.d)), n);
                return per_n_template(1, {gm_kernel(dn - 1, p), gm_kernel(dn + 1, p)});
            },
            [&](const AdditiveMap& m) {
                return per_n_template(1, {ga_kernel(m.sigma, n, FieldElem::one(m.sigma.ctx()))});
            },
            [&](const SubadditiveMap& m) {
                const FieldElem w = root_of_unity(m.sigma.ctx(), m.d);
                std::vector<mpz_class> ks;
                FieldElem g = FieldElem::one(m.sigma.ctx());
                for (u64 j = 0; j < m.d; ++j, g = g * w) ks.push_back(ga_kernel(m.sigma, n, g));
                return per_n_template(1, ks);
            },
            [&](const LattesGenericJ& m) {
                const mpz_class sn = mpz_pow(mpz_class(m.sigma), n);
                return per_n_template(0, {lattes_generic_kernel(sn - 1, p, m.variant),
                                          lattes_generic_kernel(sn + 1, p, m.variant)});
            },
            [&](const LattesOrdinary& m) {
                const QuadElem sn = m.sigma.pow(n);
                std::vector<mpz_class> ks;
                for (const auto& g : m.gammas) {
                    const QuadElem x = sn - g;
                    if (x.is_zero()) fail(Errc::infinite, "sigma^n equals an element of Gamma");
                    ks.push_back(x.norm() / mpz_pow(p, v_frak_p(x, m.prime)));
                }
                return per_n_template(0, ks);
            },
            [&](const LattesSupersingular& m) {
                const QuatElem sn = m.sigma.pow(n);
                std::vector<mpz_class> ks;
                for (const auto& g : m.gammas) {
                    const QuatElem x = sn - g;
                    if (x.is_zero()) fail(Errc::infinite, "sigma^n equals an element of Gamma");
                    ks.push_back(x.reduced_norm() / mpz_pow(p, v_I(x)));
                }
                return per_n_template(0, ks);
            },
            [&](const LattesSupersingularNorm& m) {
                const QuadElem sn = m.sigma.pow(n);
                std::vector<mpz_class> ks;
                for (const auto& g : m.gammas) {
                    const QuadElem x = sn - g;
                    if (x.is_zero()) fail(Errc::infinite, "sigma^n equals an element of Gamma");
                    ks.push_back(gm_kernel(x.norm(), p));
                }
                return per_n_template(0, ks);
            },
        },
        map);
}

std::vector<mpz_class> per_n_closed_range(const DynAffineMap& map, u64 n_max) {
    std::vector<mpz_class> out;
    out.reserve(n_max);
    for (u64 n = 1; n <= n_max; ++n) out.push_back(per_n_closed(map, n));
    return out;
}

Poly chebyshev_poly(const FieldRef& ctx, u64 d) {
    Poly prev = Poly::from_ints(ctx, {2}), cur = Poly::x(ctx);
    if (d == 0) return prev;
    for (u64 j = 1; j < d; ++j) {
        Poly next = Poly::x(ctx) * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

FieldElem root_of_unity(const FieldRef& ctx, u64 d) {
    require(d >= 1, Errc::invalid_argument, "d must be positive");
    if (!ctx->is_finite()) {
        const u64 p = ctx->p();
        require((p - 1) % d == 0, Errc::invalid_argument, "mu_d does not lie in the constant field");
        for (u64 g = 1; g < p; ++g)
            if (mult_order(g, p) == p - 1) return FieldElem::from_int(ctx, static_cast<i64>(powmod(g, (p - 1) / d, p)));
        fail(Errc::internal, "no primitive root");
    }
    const u64 q = mpz_to_u64(ctx->order());
    require((q - 1) % d == 0, Errc::invalid_argument, "mu_d does not lie in the field");
    const u64 p = ctx->p();
    for (u64 idx = 1; idx < q; ++idx) {
        std::vector<u64> w(ctx->k());
        u64 t = idx;
        for (auto& x : w) {
            x = t % p;
            t /= p;
        }
        FieldElem c = FieldElem::from_words(ctx, w);
        if (element_order(c) == q - 1) return c.pow((q - 1) / d);
    }
    fail(Errc::internal, "no primitive element");
}

RatMap realize(const DynAffineMap& map) {
    validate(map);
    return std::visit(
        overloaded{
            [](const PowerMap& m) {
                const auto e = static_cast<std::size_t>(std::abs(m.d));
                Poly xe = Poly::monomial(FieldElem::one(m.ctx), e);
                if (m.d > 0) return RatMap::polynomial(xe);
                return RatMap(Poly::from_ints(m.ctx, {1}), xe);
            },
            [](const ChebyshevMap& m) {
                return RatMap::polynomial(chebyshev_poly(m.ctx, static_cast<u64>(std::abs(m.d))));
            },
            [](const AdditiveMap& m) {
                if (!m.sigma.ctx()->is_finite()) fail(Errc::not_realizable, "maps over F_p(u) have no table realization");
                return RatMap::polynomial(m.sigma.realize() + Poly::constant(m.translation));
            },
            [](const SubadditiveMap& m) {
                const FieldRef& ctx = m.sigma.ctx();
                if (!ctx->is_finite()) fail(Errc::not_realizable, "maps over F_p(u) have no table realization");
                const u64 p = ctx->p();
                const mpz_class deg = m.sigma.degree();
                require(deg <= degree_cap(), Errc::scale_exceeded, "subadditive map above the degree cap");
                // psi(x) = x h(x^d), f(y) = y h(y)^d.
                Poly h = Poly::constant(FieldElem::zero(ctx));
                for (int i = 0; i <= m.sigma.top(); ++i) {
                    if (m.sigma.coeff(i).is_zero()) continue;
                    const u64 e = (mpz_to_u64(mpz_pow(p, static_cast<unsigned long>(i))) - 1) / m.d;
                    h += Poly::monomial(m.sigma.coeff(i), e);
                }
                return RatMap::polynomial(Poly::x(ctx) * h.pow(m.d));
            },
            [](const LattesGenericJ& m) -> RatMap {
                if (!m.curve) fail(Errc::not_realizable, "generic-j Lattes map needs a concrete curve to realize");
                return lattes_realize(*m.curve, static_cast<u64>(std::abs(m.sigma)));
            },
            [](const LattesOrdinary&) -> RatMap {
                fail(Errc::not_realizable, "Lattes maps with complex multiplication are not realized");
            },
            [](const LattesSupersingular&) -> RatMap {
                fail(Errc::not_realizable, "quaternionic Lattes maps are not realized");
            },
            [](const LattesSupersingularNorm&) -> RatMap {
                fail(Errc::not_realizable, "supersingular Lattes maps are not realized");
            },
        },
        map);
}

}  // namespace dynzeta
