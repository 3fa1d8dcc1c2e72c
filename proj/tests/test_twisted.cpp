#include "doctest.h"

#include <random>

#include "dynzeta/dynmap.hpp"
#include "dynzeta/error.hpp"
#include "dynzeta/twisted.hpp"

using namespace dynzeta;

namespace {

TwistedPoly T(const FieldRef& f, std::vector<i64> c) { return TwistedPoly::from_ints(f, c); }

TwistedPoly random_tw(const FieldRef& F, std::mt19937_64& rng, int len) {
    std::vector<FieldElem> c;
    for (int i = 0; i < len; ++i) {
        std::vector<u64> w(F->k());
        for (auto& x : w) x = rng() % F->p();
        c.push_back(FieldElem::from_words(F, w));
    }
    return TwistedPoly(F, c);
}

}  // namespace

TEST_CASE("tw_mul examples") {
    auto F9 = FieldCtx::make(3, 2);
    auto c = FieldElem::generator(F9);
    auto phi = TwistedPoly::phi(F9);
    CHECK(tw_mul(phi, TwistedPoly::scalar(c)) == TwistedPoly(F9, {FieldElem::zero(F9), c.pow(3)}));
    auto F3 = FieldCtx::make(3);
    auto s = T(F3, {-1, 1});
    CHECK(tw_mul(s, s) == T(F3, {1, 1, 1}));
    CHECK(tw_mul(s, T(F3, {1})) == s);
}

TEST_CASE("tw_pow and tw_sub_scalar examples") {
    auto F3 = FieldCtx::make(3);
    CHECK(tw_pow(TwistedPoly::phi(F3), 2) == T(F3, {0, 0, 1}));
    auto s = T(F3, {-1, 1});
    CHECK(tw_sub_scalar(tw_pow(s, 2), FieldElem::one(F3)) == T(F3, {0, 1, 1}));
    CHECK(tw_sub_scalar(s, FieldElem::zero(F3)) == s);
}

TEST_CASE("v_phi and kernel sizes") {
    auto F3 = FieldCtx::make(3);
    CHECK(v_phi(T(F3, {0, 1, 1})) == 1u);
    CHECK(v_phi(T(F3, {-1, 1})) == 0u);
    CHECK_FALSE(v_phi(TwistedPoly(F3)).has_value());
    CHECK(kernel_size_ga(T(F3, {0, 1, 1})) == 3);
    CHECK(distinct_root_count(T(F3, {0, 1, 1}).realize()) == 3);
    CHECK(kernel_size_ga(TwistedPoly::phi(F3)) == 1);
    CHECK(kernel_size_ga(T(F3, {-1, 1})) == 3);
    CHECK_THROWS_AS(kernel_size_ga(TwistedPoly(F3)), Error);
}

TEST_CASE("lte_ga examples") {
    auto F2 = FieldCtx::make(2);
    auto x = T(F2, {1, 1});
    CHECK(tw_sub_scalar(tw_pow(x, 2), FieldElem::one(F2)) == T(F2, {0, 0, 1}));
    CHECK(lte_ga(x, 2) == 2u);
    CHECK(lte_ga(x, 3) == 1u);
    CHECK_FALSE(lte_ga(T(F2, {1}), 4).has_value());
    auto F3 = FieldCtx::make(3);
    CHECK_THROWS_AS(lte_ga(T(F3, {-1, 1}), 2), Error);
}

TEST_CASE("constant_order examples") {
    auto F3 = FieldCtx::make(3);
    auto a = constant_order(T(F3, {-1, 1}));
    CHECK_FALSE(a.transcendental);
    CHECK(a.m == 2);
    auto F2 = FieldCtx::make(2);
    CHECK(constant_order(T(F2, {1, 1})).m == 1);
    auto K = FieldCtx::make_rational(3);
    auto s = TwistedPoly(K, {FieldElem::generator(K), FieldElem::one(K)});
    CHECK(constant_order(s).transcendental);
    CHECK_THROWS_AS(constant_order(TwistedPoly::phi(F3)), Error);
    auto F16 = FieldCtx::make(2, 4);
    CHECK(element_order(FieldElem::generator(F16)) <= 15);
    CHECK(15 % element_order(FieldElem::generator(F16)) == 0);
}

TEST_CASE("valuation is multiplicative and realization is a homomorphism") {
    std::mt19937_64 rng(17);
    for (auto F : {FieldCtx::make(2), FieldCtx::make(3), FieldCtx::make(2, 2)}) {
        for (int t = 0; t < 25; ++t) {
            auto a = random_tw(F, rng, 1 + static_cast<int>(rng() % 3));
            auto b = random_tw(F, rng, 1 + static_cast<int>(rng() % 3));
            if (a.is_zero() || b.is_zero()) continue;
            auto ab = tw_mul(a, b);
            CHECK(*v_phi(ab) == *v_phi(a) + *v_phi(b));
            CHECK(ab.top() == a.top() + b.top());
            // (a b)(x) = a(b(x)) as polynomials.
            CHECK(ab.realize() == a.realize().compose(b.realize()));
            CHECK(kernel_size_ga(a) == distinct_root_count(a.realize()));
            auto c = random_tw(F, rng, 2);
            CHECK(tw_mul(tw_mul(a, b), c) == tw_mul(a, tw_mul(b, c)));
        }
    }
}

TEST_CASE("truncated valuation matches the full power") {
    std::mt19937_64 rng(23);
    auto F3 = FieldCtx::make(3);
    for (int t = 0; t < 30; ++t) {
        auto s = random_tw(F3, rng, 3);
        if (s.is_zero() || s.coeff(0).is_zero()) continue;
        for (u64 n = 1; n <= 6; ++n) {
            for (i64 w : {1, 2}) {
                auto om = FieldElem::from_int(F3, w);
                CHECK(v_phi_pow_minus(s, n, om) == v_phi(tw_sub_scalar(tw_pow(s, n), om)));
            }
        }
    }
}
