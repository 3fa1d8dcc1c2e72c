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
#include "dynzeta/zeta.hpp"

using namespace dynzeta;

namespace {

std::vector<mpz_class> Z(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

std::vector<mpz_class> one_plus_power(u64 q, std::size_t n) {
    std::vector<mpz_class> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(1 + mpz_pow(mpz_from_u64(q), static_cast<unsigned long>(i)));
    return out;
}

Errc code_of(auto f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::internal;
}

}  // namespace

TEST_CASE("zeta from counts") {
    // 1 + 2^n: 1/((1-t)(1-2t))
    auto z = zeta_from_counts(std::vector<u64>{3, 5, 9, 17});
    CHECK(z.coeffs == Z({1, 3, 7, 15, 31}));
    CHECK(zeta_from_counts(std::vector<u64>{}).coeffs == Z({1}));
    // Per_1 = 1, Per_2 = 0 is not a count sequence: c_2 = 1/2
    CHECK(code_of([] { zeta_from_counts(std::vector<u64>{1, 0}); }) == Errc::non_integer_coefficient);

    // oracle counts always give integers
    for (u64 p : {2, 3, 5}) {
        auto F = FieldCtx::make(p);
        for (i64 d : {2, 3, -2}) {
            RatMap f = realize(PowerMap{d, F});
            auto z2 = zeta_from_counts(per_n_oracle_range(f, oracle_horizon(f)));
            CHECK(z2.coeffs[0] == 1);
        }
    }
}

TEST_CASE("product formula agrees with the exponential formula") {
    auto F3 = FieldCtx::make(3);
    for (const DynAffineMap& m : std::vector<DynAffineMap>{PowerMap{2, F3}, ChebyshevMap{2, F3}}) {
        RatMap f = realize(m);
        auto census = cycle_census(f, 6, 6);
        auto per = per_n_oracle_range(f, 6);
        const unsigned J = census_complete_prefix(census, per);
        REQUIRE(J >= 2);
        auto a = zeta_from_cycles(census.cycles, J);
        auto b = zeta_from_counts(std::vector<u64>(per.begin(), per.begin() + J));
        CHECK(a.provenance == ZetaProvenance::product_formula);
        CHECK(a.coeffs == b.coeffs);
    }
    // one fixed point and one 2-cycle: 1/((1-t)(1-t^2))
    CHECK(zeta_from_cycles({0, 1, 1}, 5).coeffs == Z({1, 1, 2, 2, 3, 3}));
}

TEST_CASE("rational series expansion") {
    CHECK(series_of_rational(Z({1}), Z({1, -4, 3}), 4) == Z({1, 4, 13, 40, 121}));
    CHECK(series_of_rational(Z({1, -1}), Z({-1}), 2) == Z({-1, 1, 0}));
    CHECK_THROWS_AS(series_of_rational(Z({1}), Z({2, 1}), 3), Error);
}

TEST_CASE("rationality guess") {
    auto g = rationality_guess(one_plus_power(3, 30));
    REQUIRE(g);
    CHECK(g->recurrence.size() == 2);
    REQUIRE(g->zeta);
    CHECK(g->zeta->numerator == Z({1}));
    CHECK(g->zeta->denominator == Z({1, -4, 3}));
    CHECK(g->zeta->to_string() == "(1)/(1 - 4*t + 3*t^2)");

    // a zeta function with a numerator: Per_n = 2^n + 3^n - 1
    std::vector<mpz_class> mixed;
    for (unsigned n = 1; n <= 20; ++n) mixed.push_back(mpz_pow(2, n) + mpz_pow(3, n) - 1);
    auto gm = rationality_guess(mixed);
    REQUIRE(gm);
    REQUIRE(gm->zeta);
    CHECK(gm->zeta->numerator == Z({1, -1}));
    CHECK(series_of_rational(gm->zeta->numerator, gm->zeta->denominator, 20) == zeta_from_counts(mixed).coeffs);

    // 2^n / something non-integral: recurrence found, no closed form
    std::vector<mpz_class> halves;
    for (unsigned n = 1; n <= 20; ++n) halves.push_back(mpz_pow(2, n) + (n % 2 ? 1 : 0));
    auto gh = rationality_guess(halves);
    REQUIRE(gh);
    CHECK_FALSE(gh->zeta);

    auto F3 = FieldCtx::make(3);
    CHECK_FALSE(rationality_guess(per_n_closed_range(PowerMap{2, F3}, 30)));
    CHECK_FALSE(rationality_guess(one_plus_power(3, 4)));  // too short
}

TEST_CASE("verdicts") {
    auto F2 = FieldCtx::make(2), F3 = FieldCtx::make(3);

    auto ins = verdict(PowerMap{3, F3});
    CHECK(ins.kind == VerdictKind::rational);
    CHECK(ins.series_verified);
    CHECK(ins.closed_form->denominator == Z({1, -4, 3}));
    CHECK(ins.series.size() == 31);

    auto K = FieldCtx::make_rational(3);
    auto u = FieldElem::generator(K);
    AdditiveMap tr{TwistedPoly(K, {u, FieldElem::one(K)}), FieldElem::zero(K)};
    auto vt = verdict(tr);
    CHECK(vt.kind == VerdictKind::rational);
    CHECK(vt.closed_form->denominator == Z({1, -4, 3}));
    CHECK_FALSE(vt.certificate);

    VerdictParams quick;
    quick.series_terms = 12;
    auto vp = verdict(PowerMap{2, F3}, quick);
    CHECK(vp.kind == VerdictKind::transcendental_evidence);
    REQUIRE(vp.certificate);
    CHECK(vp.certificate->m == 2);
    CHECK(vp.certificate->ell == 5);
    CHECK(vp.certificate->consistent());
    CHECK_FALSE(vp.closed_form);

    auto va = verdict(AdditiveMap{TwistedPoly::from_ints(F3, {-1, 1}), FieldElem::zero(F3)}, quick);
    REQUIRE(va.certificate);
    CHECK(va.certificate->ell == 29);
    CHECK(va.certificate->form == CertificateForm::power_exponent);
    CHECK(va.certificate->consistent());

    auto vc = verdict(ChebyshevMap{3, F2}, quick);
    REQUIRE(vc.certificate);
    CHECK(vc.certificate->ell == 7);
    CHECK(vc.certificate->consistent());
}

TEST_CASE("certificate checks and failures") {
    auto F3 = FieldCtx::make(3), F5 = FieldCtx::make(5);
    auto c = certificate_build(PowerMap{2, F3});
    CHECK(c.checks.counts_agree);
    CHECK(c.checks.b_rederived);
    CHECK(c.checks.target_matches);
    CHECK(c.checks.no_period);
    CHECK(c.checks.ell_growing);
    CHECK(c.checks.p_automaton);
    CHECK(c.checks.p_closed);
    CHECK(c.p_kernel.closed_at);
    CHECK(*c.p_kernel.closed_at <= 4);
    for (std::size_t e = 1; e + 1 < c.ell_kernel.classes_per_depth.size(); ++e)
        CHECK(c.ell_kernel.classes_per_depth[e] < c.ell_kernel.classes_per_depth[e + 1]);

    // p >= 5 needs a longer prefix before the detector stops seeing a period
    auto c5 = certificate_build(PowerMap{-2, F5});
    CHECK(c5.consistent());
    CHECK(c5.period_prefix >= 2000);

    CertificateParams tight;
    tight.ell_cap = 4;
    CHECK(code_of([&] { certificate_build(PowerMap{2, F3}, tight); }) == Errc::no_admissible_ell);
    CHECK_THROWS_AS(certificate_build(PowerMap{3, F3}), Error);
}
