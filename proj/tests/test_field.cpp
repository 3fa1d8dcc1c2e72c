#include "doctest.h"

#include <random>

#include "dynzeta/error.hpp"
#include "dynzeta/field.hpp"

using namespace dynzeta;

namespace {

Poly P(const FieldRef& f, std::vector<i64> c) { return Poly::from_ints(f, c); }

// Brute-force root set of f inside F_{p^k}; every element enumerated.
std::size_t roots_in(const Poly& f, const FieldRef& ext) {
    std::size_t n = 0;
    const unsigned k = ext->k();
    const u64 p = ext->p();
    std::vector<u64> w(k, 0);
    Poly g = Poly::from_ints(ext, {});
    for (std::size_t i = 0; i < f.size(); ++i) g.set_coeff(i, FieldElem::from_int(ext, static_cast<i64>(f.flat()[i])));
    while (true) {
        if (g.eval(FieldElem::from_words(ext, w)).is_zero()) ++n;
        unsigned pos = 0;
        while (pos < k && ++w[pos] == p) w[pos++] = 0;
        if (pos == k) break;
    }
    return n;
}

}  // namespace

TEST_CASE("field_make picks the least irreducible modulus") {
    auto f3 = FieldCtx::make(3);
    CHECK(f3->k() == 1);
    CHECK(f3->modulus().empty());
    auto f4 = FieldCtx::make(2, 2);
    CHECK(f4->modulus() == std::vector<u64>{1, 1, 1});
    CHECK_THROWS_AS(FieldCtx::make(4), Error);
    try {
        FieldCtx::make(4);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_prime);
    }
    // Exhaustive: over F_3 the least monic irreducible cubic in (c2, c1, c0)
    // order has no roots; every lex-smaller candidate has a root.
    auto f27 = FieldCtx::make(3, 3);
    auto m = f27->modulus();
    auto F3 = FieldCtx::make(3);
    auto has_root = [&](const std::vector<u64>& c) {
        for (u64 x = 0; x < 3; ++x)
            if ((c[0] + c[1] * x + c[2] * x * x + x * x * x) % 3 == 0) return true;
        return false;
    };
    CHECK_FALSE(has_root(m));
    for (u64 c2 = 0; c2 < 3; ++c2)
        for (u64 c1 = 0; c1 < 3; ++c1)
            for (u64 c0 = 0; c0 < 3; ++c0) {
                std::vector<u64> c{c0, c1, c2, 1};
                if (std::tie(c2, c1, c0) < std::tie(m[2], m[1], m[0])) CHECK(has_root(c));
            }
    auto seeded = FieldCtx::make(3, 3, 1);
    CHECK(seeded->modulus() != m);
    CHECK_FALSE(has_root(seeded->modulus()));
}

TEST_CASE("extension field arithmetic") {
    auto F = FieldCtx::make(5, 3);
    auto a = FieldElem::generator(F);
    CHECK(a.pow(F->order() - 1).is_one());
    CHECK((a * a.inv()).is_one());
    // Frobenius has order k on the generator.
    CHECK(a.frobenius(3) == a);
    CHECK(a.frobenius() != a);
    CHECK(a.frobenius().pth_root() == a);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        auto x = FieldElem::from_words(F, {rng() % 5, rng() % 5, rng() % 5});
        auto y = FieldElem::from_words(F, {rng() % 5, rng() % 5, rng() % 5});
        CHECK((x + y).frobenius() == x.frobenius() + y.frobenius());
        CHECK((x * y).frobenius() == x.frobenius() * y.frobenius());
        if (!y.is_zero()) CHECK((x / y) * y == x);
    }
}

TEST_CASE("large characteristic uses 128-bit products") {
    const u64 p = 4611686018427387847ull;  // prime below 2^62
    auto F = FieldCtx::make(p);
    auto x = FieldElem::from_int(F, -3);
    CHECK((x * x.inv()).is_one());
    CHECK(x.pow(p - 1).is_one());
    auto F2 = FieldCtx::make(p, 2);
    auto a = FieldElem::generator(F2);
    CHECK((a * a.inv()).is_one());
}

TEST_CASE("poly_arith examples") {
    auto F5 = FieldCtx::make(5);
    CHECK(gcd(P(F5, {-1, 0, 1}), P(F5, {-1, 1})) == P(F5, {-1, 1}));
    auto F3 = FieldCtx::make(3);
    CHECK(P(F3, {0, 0, 0, 1}).derivative().is_zero());
    auto F2 = FieldCtx::make(2);
    auto [q, r] = P(F2, {0, 1, 0, 1}).divrem(P(F2, {0, 0, 1}));
    CHECK(q == P(F2, {0, 1}));
    CHECK(r == P(F2, {0, 1}));
    CHECK_THROWS_AS(P(F2, {1}).divrem(Poly(F2)), Error);
    CHECK(Poly(F2).degree() == -1);

    std::mt19937_64 rng(11);
    auto F7 = FieldCtx::make(7, 2);
    for (int t = 0; t < 30; ++t) {
        Poly a(F7), b(F7);
        for (int i = 0; i < 8; ++i) a.set_coeff(i, FieldElem::from_words(F7, {rng() % 7, rng() % 7}));
        for (int i = 0; i < 4; ++i) b.set_coeff(i, FieldElem::from_words(F7, {rng() % 7, rng() % 7}));
        if (b.is_zero()) continue;
        auto [qq, rr] = a.divrem(b);
        CHECK(qq * b + rr == a);
        CHECK(rr.degree() < b.degree());
        auto g = gcd(a * b, b);
        CHECK(g == b.monic());
    }
}

TEST_CASE("separable_radical examples") {
    auto F3 = FieldCtx::make(3);
    CHECK(separable_radical(P(F3, {-1, 1}).pow(3)) == P(F3, {-1, 1}));
    // x^6 + 1 = (x^2 + 1)^3
    CHECK(P(F3, {1, 0, 1}).pow(3) == P(F3, {1, 0, 0, 0, 0, 0, 1}));
    CHECK(separable_radical(P(F3, {1, 0, 0, 0, 0, 0, 1})) == P(F3, {1, 0, 1}));
    auto F5 = FieldCtx::make(5);
    CHECK(separable_radical(P(F5, {1, 0, 1})) == P(F5, {1, 0, 1}));
    CHECK(roots_in(P(F5, {1, 0, 1}), F5) == 2);
    CHECK_THROWS_AS(separable_radical(Poly(F5)), Error);
}

TEST_CASE("distinct_root_count examples") {
    auto F3 = FieldCtx::make(3);
    CHECK(distinct_root_count(P(F3, {0, -1, 0, 1})) == 3);
    CHECK(distinct_root_count(P(F3, {-1, 1}).pow(9)) == 1);
    CHECK(distinct_root_count(P(F3, {0, 0, 0, 1, 0, 0, 0, 0, 0, 1})) == 3);
}

TEST_CASE("radical properties against enumeration in a splitting extension") {
    // Polynomials over F_2 of degree <= 6 split in F_{2^k} for k = lcm(1..6) = 60;
    // instead use random products of linear and quadratic factors over F_3
    // whose roots all live in F_9.
    auto F3 = FieldCtx::make(3);
    auto F9 = FieldCtx::make(3, 2);
    std::mt19937_64 rng(3);
    std::vector<Poly> factors;
    for (i64 a = 0; a < 3; ++a) factors.push_back(P(F3, {a, 1}));
    for (i64 b = 0; b < 3; ++b)
        for (i64 c = 0; c < 3; ++c) {
            Poly q = P(F3, {c, b, 1});
            bool irr = true;
            for (i64 x = 0; x < 3; ++x) irr = irr && !q.eval(FieldElem::from_int(F3, x)).is_zero();
            if (irr) factors.push_back(q);
        }
    for (int t = 0; t < 40; ++t) {
        Poly f = P(F3, {1});
        Poly g = P(F3, {1});
        for (int i = 0; i < 4; ++i) f = f * factors[rng() % factors.size()].pow(1 + rng() % 4);
        for (int i = 0; i < 3; ++i) g = g * factors[rng() % factors.size()].pow(1 + rng() % 4);
        Poly rad = separable_radical(f);
        CHECK(rad.is_monic());
        CHECK(gcd(rad, rad.derivative()).degree() == 0);
        CHECK(distinct_root_count(f) == roots_in(f, F9));
        auto sum = distinct_root_count(f) + distinct_root_count(g);
        CHECK(distinct_root_count(f * g) <= sum);
        if (gcd(f, g).degree() == 0) CHECK(distinct_root_count(f * g) == sum);
    }
}

TEST_CASE("rational function field") {
    auto K = FieldCtx::make_rational(3);
    auto u = FieldElem::generator(K);
    CHECK_FALSE(u.is_constant());
    auto one = FieldElem::one(K);
    auto x = (u + one) / (u - one);
    CHECK((x * (u - one)) == u + one);
    CHECK(x.den().is_monic());
    CHECK(u.frobenius() == u * u * u);
    CHECK((x + u).frobenius() == x.frobenius() + u.frobenius());
    CHECK((u - u).is_zero());
    CHECK(FieldElem::from_int(K, 2).is_constant());
}
