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

#include <doctest.h>

#include "dynzeta/error.hpp"
#include "dynzeta/families.hpp"

using namespace dynzeta;

namespace {

TwistedPoly T(const FieldRef& f, std::vector<i64> c) { return TwistedPoly::from_ints(f, c); }

// Closed form against the root-count oracle for every n within the degree cap.
void check_against_oracle(const DynAffineMap& map) {
    RatMap f = realize(map);
    const unsigned horizon = oracle_horizon(f);
    auto oracle = per_n_oracle_range(f, horizon);
    for (unsigned n = 1; n <= horizon; ++n) {
        INFO(family_name(map), " n = ", n);
        CHECK(per_n_closed(map, n) == oracle[n - 1]);
    }
}

std::vector<QuadElem> pm_one(const QuadRing& R) { return {QuadElem::integer(R, 1), QuadElem::integer(R, -1)}; }

}  // namespace

TEST_CASE("orbit-count template") {
    CHECK(per_n_template(2, {mpz_class(7)}) == 9);
    CHECK(per_n_template(1, {mpz_class(1), mpz_class(3)}) == 3);
    CHECK_THROWS_AS(per_n_template(0, {mpz_class(1), mpz_class(2)}), Error);
    try {
        per_n_template(0, {mpz_class(1), mpz_class(2)});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::non_integer_orbit_count);
    }
}

TEST_CASE("closed-form examples") {
    auto F3 = FieldCtx::make(3), F5 = FieldCtx::make(5);
    CHECK(per_n_closed(PowerMap{2, F3}, 1) == 3);
    CHECK(per_n_oracle(realize(PowerMap{2, F3}), 1) == 3);
    CHECK(per_n_closed(ChebyshevMap{2, F5}, 1) == 3);
    CHECK(per_n_oracle(realize(ChebyshevMap{2, F5}), 1) == 3);
    AdditiveMap add{T(F3, {-1, 1}), FieldElem::zero(F3)};
    CHECK(per_n_closed(add, 2) == 4);
    CHECK(per_n_oracle(realize(add), 2) == 4);
    // 1/x^2 over F_3 fixes only x = 1: 0 and infinity form a 2-cycle.
    CHECK(per_n_closed(PowerMap{-2, F3}, 1) == 1);
    CHECK(per_n_oracle(realize(PowerMap{-2, F3}), 1) == 1);
    CHECK(per_n_closed(PowerMap{-2, F3}, 2) == per_n_oracle(realize(PowerMap{-2, F3}), 2));
    CHECK(per_n_closed(PowerMap{-3, F5}, 1) == 4);
    // inseparable maps: d^n + 1
    CHECK(per_n_closed(PowerMap{3, F3}, 5) == 244);
    CHECK(per_n_closed(AdditiveMap{TwistedPoly::phi(F3), FieldElem::one(F3)}, 3) == 28);
    CHECK(per_n_closed(PowerMap{6, F3}, 2) == 37);
    CHECK(per_n_oracle(realize(PowerMap{6, F3}), 2) == 37);
}

TEST_CASE("oracle equivalence on the family grid") {
    for (u64 p : {3, 5, 7}) {
        auto F = FieldCtx::make(p);
        for (i64 d : {2, -2, 3, -3, 5}) check_against_oracle(PowerMap{d, F});
        for (i64 d : {2, 3, 4}) check_against_oracle(ChebyshevMap{d, F});
    }
    for (u64 p : {2, 3}) {
        auto F = FieldCtx::make(p);
        for (auto c : std::vector<std::vector<i64>>{{-1, 1}, {1, 1}, {-1, 0, 1}}) {
            check_against_oracle(AdditiveMap{T(F, c), FieldElem::zero(F)});
            check_against_oracle(AdditiveMap{T(F, c), FieldElem::one(F)});
        }
    }
    for (u64 p : {3, 5}) {
        auto F = FieldCtx::make(p);
        check_against_oracle(SubadditiveMap{T(F, {-1, 1}), p - 1});
    }
    // extension-field coefficients
    auto F4 = FieldCtx::make(2, 2);
    auto a = FieldElem::generator(F4);
    check_against_oracle(AdditiveMap{TwistedPoly(F4, {a, FieldElem::one(F4)}), a});
    check_against_oracle(SubadditiveMap{TwistedPoly(F4, {a, FieldElem::zero(F4), FieldElem::one(F4)}), 3});
    auto F9 = FieldCtx::make(3, 2);
    check_against_oracle(SubadditiveMap{TwistedPoly(F9, {FieldElem::generator(F9), FieldElem::zero(F9), FieldElem::one(F9)}), 4});
}

TEST_CASE("Chebyshev semiconjugacy and sign symmetry") {
    for (u64 p : {2, 3, 101}) {
        auto F = FieldCtx::make(p);
        for (u64 d = 2; d <= 12; ++d) {
            // x^d T_d((x^2 + 1)/x) = x^{2d} + 1
            Poly Td = chebyshev_poly(F, d);
            Poly acc = Poly::constant(FieldElem::zero(F));
            Poly u = Poly::from_ints(F, {1, 0, 1});
            for (std::size_t i = 0; i < Td.size(); ++i)
                acc += u.pow(i) * Poly::monomial(Td.coeff(i), d - i);
            Poly expect = Poly::monomial(FieldElem::one(F), 2 * d) + Poly::from_ints(F, {1});
            CHECK(acc == expect);
        }
    }
    auto F5 = FieldCtx::make(5);
    for (u64 n = 1; n <= 6; ++n) CHECK(per_n_closed(ChebyshevMap{3, F5}, n) == per_n_closed(ChebyshevMap{-3, F5}, n));
    CHECK(realize(ChebyshevMap{2, F5}) == RatMap::polynomial(Poly::from_ints(F5, {-2, 0, 1})));
}

TEST_CASE("subadditive realization") {
    for (u64 p : {3, 5, 7}) {
        auto F = FieldCtx::make(p);
        SubadditiveMap m{T(F, {-1, 1}), p - 1};
        RatMap f = realize(m);
        // x (x - 1)^{p-1}
        Poly expect = Poly::x(F) * Poly::from_ints(F, {-1, 1}).pow(p - 1);
        CHECK(f == RatMap::polynomial(expect));
        Poly psi = m.sigma.realize();
        CHECK(psi.pow(m.d) == f.num().inflate(m.d));
    }
    auto F3 = FieldCtx::make(3);
    SubadditiveMap mono{TwistedPoly::phi(F3), 2};
    CHECK(realize(mono) == RatMap::polynomial(Poly::monomial(FieldElem::one(F3), 3)));
    auto F5 = FieldCtx::make(5);
    try {
        validate(SubadditiveMap{T(F5, {1, 1}), 4});
        CHECK(true);
        validate(SubadditiveMap{T(F5, {1, 1}), 3});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::subadditive_condition_violated);
    }
}

TEST_CASE("separability classification") {
    auto F3 = FieldCtx::make(3);
    CHECK(classify_separability(PowerMap{3, F3}) == Separability::inseparable);
    CHECK(classify_separability(PowerMap{2, F3}) == Separability::separable);
    CHECK(classify_separability(AdditiveMap{TwistedPoly::phi(F3), FieldElem::zero(F3)}) == Separability::inseparable);
    CHECK(classify_separability(AdditiveMap{T(F3, {1, 1}), FieldElem::zero(F3)}) == Separability::separable);
    auto ctx = PrimeContext::quad_ordinary(QuadRing::gaussian(), 5);
    LattesOrdinary L{QuadElem(QuadRing::gaussian(), 2, 3), ctx, pm_one(QuadRing::gaussian())};
    CHECK(classify_separability(L) == Separability::separable);
    LattesOrdinary Li{QuadElem(QuadRing::gaussian(), 1, 2), ctx, pm_one(QuadRing::gaussian())};
    // 1 + 2i maps to 1 + 2u = 5 under the embedding, so it lies in the conjugate prime.
    CHECK(classify_separability(Li) == Separability::separable);
    LattesOrdinary Lp{QuadElem(QuadRing::gaussian(), 1, -2), ctx, pm_one(QuadRing::gaussian())};
    CHECK(classify_separability(Lp) == Separability::inseparable);
    CHECK(per_n_closed(Lp, 3) == 126);
}

TEST_CASE("validation errors") {
    auto F3 = FieldCtx::make(3);
    CHECK_THROWS_AS(validate(PowerMap{1, F3}), Error);
    CHECK_THROWS_AS(validate(AdditiveMap{T(F3, {2}), FieldElem::zero(F3)}), Error);
    const QuadRing G = QuadRing::gaussian();
    auto ctx = PrimeContext::quad_ordinary(G, 5);
    LattesOrdinary bad{QuadElem(G, 2, 3), ctx, {QuadElem::integer(G, 1), QuadElem(G, 0, 1)}};
    CHECK_THROWS_AS(validate(bad), Error);
    try {
        realize(LattesOrdinary{QuadElem(G, 2, 3), ctx, pm_one(G)});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_realizable);
    }
}

TEST_CASE("Lattes closed forms") {
    const QuadRing G = QuadRing::gaussian();
    auto ctx = PrimeContext::quad_ordinary(G, 5);
    const QuadElem s(G, 2, 3);
    std::vector<QuadElem> mu4 = {QuadElem::integer(G, 1), QuadElem(G, 0, 1), QuadElem::integer(G, -1), QuadElem(G, 0, -1)};
    for (u64 n = 1; n <= 12; ++n) {
        // Gamma-averaged counts are integers, and Gamma = mu_4 refines Gamma = +-1 by the +-i terms.
        mpz_class c2 = per_n_closed(LattesOrdinary{s, ctx, pm_one(G)}, n);
        mpz_class c4 = per_n_closed(LattesOrdinary{s, ctx, mu4}, n);
        CHECK(c2 > 0);
        CHECK(c4 > 0);
    }
    // Integer sigma on an ordinary curve reduces to the generic formula.
    for (u64 p : {5, 7, 13}) {
        for (i64 m : {2, 3, -2}) {
            const QuadRing R{1, static_cast<long>(p)};  // any ring where p splits off a root 0
            if ((1 - 4 * static_cast<i64>(p)) >= 0) continue;
            auto c = PrimeContext::quad_ordinary(R, p);
            for (u64 n = 1; n <= 8; ++n) {
                LattesOrdinary L{QuadElem::integer(R, m), c, pm_one(R)};
                CHECK(per_n_closed(L, n) == per_n_closed(LattesGenericJ{m, p, LattesVariant::squared, std::nullopt}, n));
            }
        }
    }
    // Hurwitz: sigma = 1 + i is purely inseparable of degree 2.
    const QuatElem one = QuatElem::integer(QuatOrder::hurwitz, 1);
    const QuatElem i = QuatElem::from_doubled(QuatOrder::hurwitz, 0, 2, 0, 0);
    LattesSupersingular ins{one + i, {one, -one}};
    CHECK(classify_separability(ins) == Separability::inseparable);
    CHECK(per_n_closed(ins, 4) == 17);
    LattesSupersingular sep{QuatElem::from_doubled(QuatOrder::hurwitz, 2, 2, 2, 0), {one, -one}};
    CHECK(classify_separability(sep) == Separability::separable);
    for (u64 n = 1; n <= 10; ++n) CHECK(per_n_closed(sep, n) > 0);
    // Norm form, p = 7, sigma = 2: (9 + 25) / 2 at n = 2, and 7 | 2^3 - 1 kills the p-part at n = 3.
    LattesSupersingularNorm nf{QuadElem::integer(G, 2), 7, pm_one(G)};
    CHECK(per_n_closed(nf, 1) == 5);
    CHECK(per_n_closed(nf, 2) == 17);
    CHECK(per_n_closed(nf, 3) == (1 + 81) / 2);
}

TEST_CASE("generic-j variants") {
    LattesGenericJ sq{2, 7, LattesVariant::squared, std::nullopt};
    LattesGenericJ un{2, 7, LattesVariant::unsquared, std::nullopt};
    CHECK(per_n_closed(sq, 1) == 5);
    CHECK(per_n_closed(sq, 2) == 17);
    CHECK(per_n_closed(sq, 3) == (49 / 7 + 81) / 2);
    CHECK(per_n_closed(un, 1) == 2);
    CHECK(per_n_closed(un, 2) == 4);
    CHECK_THROWS_AS(realize(sq), Error);
    auto F7 = FieldCtx::make(7);
    auto E = EllipticCurve::from_ints(F7, 1, 3);
    LattesGenericJ withE{2, 7, LattesVariant::squared, E};
    RatMap f = realize(withE);
    CHECK(f.degree() == 4);
    for (unsigned n = 1; n <= 3; ++n) CHECK(per_n_oracle(f, n) == per_n_closed(withE, n));
}

TEST_CASE("big closed forms stay exact") {
    auto F3 = FieldCtx::make(3);
    mpz_class c = per_n_closed(PowerMap{2, F3}, 60);
    mpz_class direct = mpz_pow(2, 60) - 1;
    while (direct % 3 == 0) direct /= 3;
    CHECK(c == direct + 2);
    CHECK_THROWS_AS(per_n_closed(PowerMap{2, F3}, u64(1) << 40), Error);
}

TEST_CASE("ordinary Lattes kernels against point enumeration") {
    // End(E) contains Z[pi] with pi^2 - a pi + q = 0; the split prime containing pi is the inseparable one.
    int attained = 0;
    for (u64 p : {5, 7}) {
        auto F = FieldCtx::make(p);
        for (i64 A = 0; A < static_cast<i64>(p); ++A) {
            for (i64 B = 1; B < static_cast<i64>(p); ++B) {
                if ((4 * A * A * A + 27 * B * B) % static_cast<i64>(p) == 0) continue;
                auto E = EllipticCurve::from_ints(F, A, B);
                if (E.is_supersingular()) continue;
                const QuadRing R{E.trace(), static_cast<long>(p)};
                auto ctx = PrimeContext::quad_ordinary(R, p);
                CHECK(v_frak_p(QuadElem::tau(R), ctx) == 1);
                unsigned k_max = 1;
                while (mpz_pow(p, k_max + 1) <= 20000) ++k_max;
                for (auto [a, b] : {std::pair<long, long>{1, 1}, {2, -1}, {0, 1}}) {
                    const QuadElem s(R, a, b);
                    for (u64 n = 1; n <= 2; ++n) {
                        for (long g : {1, -1}) {
                            const QuadElem x = s.pow(n) - QuadElem::integer(R, g);
                            if (x.is_zero()) continue;
                            const mpz_class formula = x.norm() / mpz_pow(p, v_frak_p(x, ctx));
                            u64 best = 0;
                            for (unsigned k = 1; k <= k_max; ++k)
                                best = std::max(best, endomorphism_kernel_count(E, x.a(), x.b(), k));
                            CHECK(best <= formula);
                            if (best == formula) ++attained;
                        }
                    }
                }
                if (attained > 30) break;
            }
        }
    }
    CHECK(attained > 20);
}
