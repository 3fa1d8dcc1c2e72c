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

#include "dynzeta/orders.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dynzeta/error.hpp"

namespace dynzeta {

// ---- QuadElem ----

QuadElem::QuadElem(QuadRing ring, mpz_class a, mpz_class b) : ring_(std::move(ring)), a_(std::move(a)), b_(std::move(b)) {
    require(ring_.T * ring_.T - 4 * ring_.N < 0, Errc::invalid_argument, "quadratic ring must be imaginary");
}

QuadElem QuadElem::operator+(const QuadElem& o) const { return {ring_, a_ + o.a_, b_ + o.b_}; }
QuadElem QuadElem::operator-(const QuadElem& o) const { return {ring_, a_ - o.a_, b_ - o.b_}; }

QuadElem QuadElem::operator*(const QuadElem& o) const {
    require(ring_ == o.ring_, Errc::invalid_argument, "elements of different rings");
    mpz_class bd = b_ * o.b_;
    return {ring_, a_ * o.a_ - bd * ring_.N, a_ * o.b_ + b_ * o.a_ + bd * ring_.T};
}

QuadElem QuadElem::pow(u64 n) const {
    QuadElem r = integer(ring_, 1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

QuadElem QuadElem::conj() const { return {ring_, a_ + b_ * ring_.T, -b_}; }
mpz_class QuadElem::norm() const { return a_ * a_ + a_ * b_ * ring_.T + b_ * b_ * ring_.N; }
mpz_class QuadElem::trace() const { return 2 * a_ + b_ * ring_.T; }

std::string QuadElem::to_string() const {
    std::ostringstream os;
    os << a_.get_str() << (b_ < 0 ? " - " : " + ") << mpz_class(abs(b_)).get_str() << "*tau";
    return os.str();
}

// ---- QuatElem ----

namespace {

struct AlgebraParams {
    long a, b;
};

AlgebraParams params(QuatOrder o) { return o == QuatOrder::hurwitz ? AlgebraParams{-1, -1} : AlgebraParams{-1, -3}; }

bool in_order(QuatOrder o, const mpz_class* X) {
    auto odd = [](const mpz_class& v) { return mpz_odd_p(v.get_mpz_t()) != 0; };
    if (o == QuatOrder::hurwitz) return odd(X[0]) == odd(X[1]) && odd(X[1]) == odd(X[2]) && odd(X[2]) == odd(X[3]);
    return odd(X[0]) == odd(X[2]) && odd(X[1]) == odd(X[3]);
}

}  // namespace

QuatElem QuatElem::from_doubled(QuatOrder order, mpz_class X0, mpz_class X1, mpz_class X2, mpz_class X3) {
    QuatElem q;
    q.order_ = order;
    q.X_[0] = std::move(X0);
    q.X_[1] = std::move(X1);
    q.X_[2] = std::move(X2);
    q.X_[3] = std::move(X3);
    require(in_order(order, q.X_), Errc::invalid_argument, "coordinates do not lie in the order");
    return q;
}

QuatElem QuatElem::from_basis(QuatOrder order, const mpz_class& c0, const mpz_class& c1, const mpz_class& c2,
                              const mpz_class& c3) {
    if (order == QuatOrder::hurwitz) {
        // c0 i + c1 j + c2 k + c3 (1+i+j+k)/2
        return from_doubled(order, c3, 2 * c0 + c3, 2 * c1 + c3, 2 * c2 + c3);
    }
    // c0 + c1 i + c2 (1+j)/2 + c3 (i+k)/2
    return from_doubled(order, 2 * c0 + c2, 2 * c1 + c3, c2, c3);
}

std::vector<mpz_class> QuatElem::basis_coords() const {
    if (order_ == QuatOrder::hurwitz) {
        mpz_class c3 = X_[0];
        return {(X_[1] - c3) / 2, (X_[2] - c3) / 2, (X_[3] - c3) / 2, c3};
    }
    mpz_class c2 = X_[2], c3 = X_[3];
    return {(X_[0] - c2) / 2, (X_[1] - c3) / 2, c2, c3};
}

QuatElem QuatElem::operator+(const QuatElem& o) const {
    return from_doubled(order_, X_[0] + o.X_[0], X_[1] + o.X_[1], X_[2] + o.X_[2], X_[3] + o.X_[3]);
}

QuatElem QuatElem::operator-(const QuatElem& o) const {
    return from_doubled(order_, X_[0] - o.X_[0], X_[1] - o.X_[1], X_[2] - o.X_[2], X_[3] - o.X_[3]);
}

QuatElem QuatElem::operator-() const { return from_doubled(order_, -X_[0], -X_[1], -X_[2], -X_[3]); }

QuatElem QuatElem::operator*(const QuatElem& o) const {
    require(order_ == o.order_, Errc::invalid_argument, "elements of different orders");
    const auto [a, b] = params(order_);
    const mpz_class *x = X_, *y = o.X_;
    // Product of doubled coordinates is 4 xy; halve once more below.
    mpz_class z0 = x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3];
    mpz_class z1 = x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2];
    mpz_class z2 = x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1];
    mpz_class z3 = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
    for (mpz_class* z : {&z0, &z1, &z2, &z3}) {
        require(mpz_even_p(z->get_mpz_t()) != 0, Errc::internal, "quaternion product left the order");
        *z /= 2;
    }
    return from_doubled(order_, z0, z1, z2, z3);
}

bool QuatElem::operator==(const QuatElem& o) const {
    return order_ == o.order_ && X_[0] == o.X_[0] && X_[1] == o.X_[1] && X_[2] == o.X_[2] && X_[3] == o.X_[3];
}

QuatElem QuatElem::pow(u64 n) const {
    QuatElem r = integer(order_, 1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

QuatElem QuatElem::conj() const { return from_doubled(order_, X_[0], -X_[1], -X_[2], -X_[3]); }

mpz_class QuatElem::reduced_norm() const {
    const auto [a, b] = params(order_);
    mpz_class n4 = X_[0] * X_[0] - a * X_[1] * X_[1] - b * X_[2] * X_[2] + a * b * X_[3] * X_[3];
    require(mpz_divisible_ui_p(n4.get_mpz_t(), 4) != 0, Errc::internal, "non-integral reduced norm");
    return n4 / 4;
}

mpz_class QuatElem::reduced_trace() const { return X_[0]; }

std::string QuatElem::to_string() const {
    std::ostringstream os;
    os << "(" << X_[0].get_str() << " + " << X_[1].get_str() << "i + " << X_[2].get_str() << "j + " << X_[3].get_str()
       << "k)/2";
    return os.str();
}

// ---- PrimeContext ----

PrimeContext PrimeContext::rational(u64 p) {
    require(is_prime(p), Errc::not_prime, "prime context needs a prime");
    PrimeContext c;
    c.p_ = p;
    return c;
}

PrimeContext PrimeContext::quaternion(u64 p) {
    PrimeContext c = rational(p);
    c.kind_ = Kind::quaternion;
    return c;
}

namespace {

mpz_class hensel_lift(const QuadRing& ring, u64 p, u64 r, unsigned precision) {
    const mpz_class P = mpz_from_u64(p);
    mpz_class u = mpz_from_u64(r), mod = P;
    unsigned have = 1;
    while (have < precision) {
        have = std::min(2 * have, precision);
        mpz_pow_ui(mod.get_mpz_t(), P.get_mpz_t(), have);
        mpz_class f = u * u - ring.T * u + ring.N;
        mpz_class df = 2 * u - ring.T, inv;
        require(mpz_invert(inv.get_mpz_t(), df.get_mpz_t(), mod.get_mpz_t()) != 0, Errc::internal,
                "Hensel step met a non-simple root");
        u = u - f * inv;
        mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
    }
    return u;
}

}  // namespace

PrimeContext PrimeContext::quad_ordinary(const QuadRing& ring, u64 p, std::optional<u64> orientation,
                                         unsigned precision) {
    require(is_prime(p), Errc::not_prime, "prime context needs a prime");
    require(p <= 10000000, Errc::scale_exceeded, "prime too large for root search");
    require(ring.T * ring.T - 4 * ring.N < 0, Errc::invalid_argument, "quadratic ring must be imaginary");
    const u64 T = mpz_mod(ring.T, p), N = mpz_mod(ring.N, p);
    std::vector<u64> roots;
    for (u64 x = 0; x < p; ++x)
        if ((mulmod(x, x, p) + p - mulmod(T, x, p) + N) % p == 0) roots.push_back(x);
    require(roots.size() == 2, Errc::hypothesis_violated, "p does not split into two distinct primes");
    u64 r;
    if (orientation) {
        r = *orientation % p;
        require(r == roots[0] || r == roots[1], Errc::invalid_argument, "orientation is not a root mod p");
    } else {
        r = roots[0] != 0 ? roots[0] : roots[1];
    }
    PrimeContext c;
    c.kind_ = Kind::quad_ordinary;
    c.p_ = p;
    c.ring_ = ring;
    c.root_mod_p_ = r;
    c.precision_ = precision;
    c.u_ = hensel_lift(ring, p, r, precision);
    return c;
}

PrimeContext PrimeContext::with_precision(unsigned precision) const {
    PrimeContext c = *this;
    c.precision_ = precision;
    if (kind_ == Kind::quad_ordinary) c.u_ = hensel_lift(ring_, p_, root_mod_p_, precision);
    return c;
}

// ---- valuations ----

unsigned v_p_int(const mpz_class& x, u64 p) { return v_p(x, p); }

unsigned v_frak_p(const QuadElem& x, const PrimeContext& ctx) {
    require(ctx.kind() == PrimeContext::Kind::quad_ordinary, Errc::invalid_argument, "context is not quad-ordinary");
    require(x.ring() == ctx.ring(), Errc::invalid_argument, "element and context use different rings");
    require(!x.is_zero(), Errc::zero_input, "valuation of zero");
    constexpr unsigned cap = 1024;
    const u64 p = ctx.p();
    const unsigned vn = v_p(x.norm(), p);
    const PrimeContext* use = &ctx;
    PrimeContext raised;
    if (ctx.precision() <= vn) {
        unsigned prec = ctx.precision();
        while (prec <= vn && prec < cap) prec = std::min(2 * prec, cap);
        if (prec <= vn) fail(Errc::precision_exhausted, "valuation exceeds the precision cap");
        raised = ctx.with_precision(prec);
        use = &raised;
    }
    mpz_class mod = mpz_pow(p, use->precision());
    mpz_class img = x.a() + x.b() * use->root();
    mpz_fdiv_r(img.get_mpz_t(), img.get_mpz_t(), mod.get_mpz_t());
    require(img != 0, Errc::internal, "embedded image vanished below the norm valuation");
    const unsigned vbar = std::min(v_p(img, p), vn);
    return vn - vbar;
}

unsigned v_I(const QuatElem& x) {
    require(!x.is_zero(), Errc::zero_input, "valuation of zero");
    return v_p(x.reduced_norm(), x.prime());
}

unsigned v_I_norm(const QuadElem& x, u64 p) {
    require(!x.is_zero(), Errc::zero_input, "valuation of zero");
    return v_p(x.norm(), p);
}

// ---- lifting the exponent ----

namespace {

mpz_class pow_mpz(const mpz_class& x, u64 n) { return mpz_pow(x, static_cast<unsigned long>(n)); }

}  // namespace

std::optional<u64> lte_int(const mpz_class& x, const mpz_class& y, u64 p, u64 n) {
    require(n >= 1, Errc::invalid_argument, "exponent must be positive");
    const mpz_class P = mpz_from_u64(p);
    require(x % P != 0 && y % P != 0, Errc::hypothesis_violated, "p divides x or y");
    if (x == y) return std::nullopt;
    require((x - y) % P == 0, Errc::hypothesis_violated, "p does not divide x - y");
    const unsigned v = v_p(mpz_class(x - y), p);
    require(p != 2 || v >= 2, Errc::hypothesis_violated, "p = 2 needs v_2(x - y) >= 2");
    const u64 predicted = v + v_p(static_cast<i64>(n), p);
    if (n <= 50) {
        mpz_class d = pow_mpz(x, n) - pow_mpz(y, n);
        if (d == 0 || v_p(d, p) != predicted) fail(Errc::mismatch, "integer lifting-the-exponent check failed");
    }
    return predicted;
}

std::optional<u64> lte_quad(const QuadElem& x, const QuadElem& y, const PrimeContext& ctx, u64 n) {
    require(n >= 1, Errc::invalid_argument, "exponent must be positive");
    require(v_frak_p(x, ctx) == 0 && v_frak_p(y, ctx) == 0, Errc::hypothesis_violated, "x or y lies in the prime");
    if (x == y) return std::nullopt;
    const unsigned v = v_frak_p(x - y, ctx);
    require(v >= 1, Errc::hypothesis_violated, "x - y does not lie in the prime");
    require(ctx.p() != 2 || v >= 2, Errc::hypothesis_violated, "p = 2 needs valuation of x - y at least 2");
    const u64 predicted = v + v_p(static_cast<i64>(n), ctx.p());
    if (n <= 50) {
        QuadElem d = x.pow(n) - y.pow(n);
        if (d.is_zero() || v_frak_p(d, ctx) != predicted) fail(Errc::mismatch, "quadratic lifting-the-exponent check failed");
    }
    return predicted;
}

std::optional<u64> lte_quat(const QuatElem& x, const QuatElem& y, u64 n) {
    require(n >= 1, Errc::invalid_argument, "exponent must be positive");
    require(v_I(x) == 0 && v_I(y) == 0, Errc::hypothesis_violated, "x or y lies in I");
    require(x * y == y * x, Errc::hypothesis_violated, "x and y must commute");
    if (x == y) return std::nullopt;
    const u64 p = x.prime();
    const unsigned v = v_I(x - y);
    require(v >= 1, Errc::hypothesis_violated, "x - y does not lie in I");
    require(p != 3 || v >= 2, Errc::hypothesis_violated, "p = 3 needs v_I(x - y) >= 2");
    require(p != 2 || v >= 3, Errc::hypothesis_violated, "p = 2 needs v_I(x - y) >= 3");
    const u64 predicted = v + 2 * v_p(static_cast<i64>(n), p);
    if (n <= 50) {
        QuatElem d = x.pow(n) - y.pow(n);
        if (d.is_zero() || v_I(d) != predicted) fail(Errc::mismatch, "quaternion lifting-the-exponent check failed");
    }
    return predicted;
}

u64 unit_order_mod_power(const QuadElem& sigma, const PrimeContext& ctx, unsigned r) {
    require(v_frak_p(sigma, ctx) == 0, Errc::hypothesis_violated, "sigma lies in the prime");
    const QuadElem one = QuadElem::integer(sigma.ring(), 1);
    const u64 bound = 2 * (ctx.p() - 1) * mpz_to_u64(mpz_pow(ctx.p(), r - 1));
    QuadElem s = sigma;
    for (u64 m = 1; m <= bound; ++m, s = s * sigma) {
        QuadElem d = s - one;
        if (d.is_zero() || v_frak_p(d, ctx) >= r) return m;
    }
    fail(Errc::internal, "unit order search exceeded the group order");
}

u64 unit_order_mod_power(const QuatElem& sigma, unsigned r) {
    require(v_I(sigma) == 0, Errc::hypothesis_violated, "sigma lies in I");
    const u64 p = sigma.prime();
    const QuatElem one = QuatElem::integer(sigma.order(), 1);
    const u64 bound = 2 * (p * p - 1) * mpz_to_u64(mpz_pow(p, 2 * (r - 1)));
    QuatElem s = sigma;
    for (u64 m = 1; m <= bound; ++m, s = s * sigma) {
        QuatElem d = s - one;
        if (d.is_zero() || v_I(d) >= r) return m;
    }
    fail(Errc::internal, "unit order search exceeded the group order");
}

// ---- norm sequences ----

namespace {

template <class Elem>
NormSequence norm_sequence_impl(const Elem& sigma, const Elem& gamma, u64 ell, std::size_t length) {
    require(is_prime(ell), Errc::not_prime, "ell must be prime");
    require(length >= 8, Errc::invalid_argument, "sequence length must be at least 8");
    NormSequence out;
    out.ell = ell;
    Elem s = sigma;
    for (std::size_t n = 1; n <= length; ++n) {
        out.direct.push_back(mpz_mod((s - gamma).norm(), ell));
        if (n < length) s = s * sigma;
    }
    // g(x) = (x - 1)(x - N)(x^2 - T x + N) mod ell, ascending coefficients.
    const u64 T = mpz_mod(sigma.trace(), ell), N = mpz_mod(sigma.norm(), ell);
    auto mul = [ell](const std::vector<u64>& a, const std::vector<u64>& b) {
        std::vector<u64> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % ell;
        return c;
    };
    std::vector<u64> g = mul(mul({ell - 1, 1}, {(ell - N) % ell, 1}), {N, (ell - T) % ell, 1});
    auto step = [&](u64 a0, u64 a1, u64 a2, u64 a3) {
        u64 acc = (g[0] * a0 + g[1] * a1 + g[2] * a2 + g[3] * a3) % ell;
        return (ell - acc) % ell;
    };
    out.recurrence.assign(out.direct.begin(), out.direct.begin() + 4);
    for (std::size_t n = 4; n < length; ++n) {
        const auto& r = out.recurrence;
        out.recurrence.push_back(step(r[n - 4], r[n - 3], r[n - 2], r[n - 1]));
    }
    out.agree = out.recurrence == out.direct;

    // Eventual period of the state (a_n, ..., a_{n+3}) under the recurrence.
    std::map<std::array<u64, 4>, u64> seen;
    std::array<u64, 4> st{out.direct[0], out.direct[1], out.direct[2], out.direct[3]};
    for (u64 idx = 0;; ++idx) {
        auto [it, fresh] = seen.emplace(st, idx);
        if (!fresh) {
            out.preperiod = it->second;
            out.period = idx - it->second;
            break;
        }
        st = {st[1], st[2], st[3], step(st[0], st[1], st[2], st[3])};
    }
    mpz_class base = mpz_from_u64(ell - 1) * (mpz_from_u64(ell) * ell - 1);
    for (unsigned A = 0; A <= 4; ++A) {
        mpz_class bound = base * mpz_pow(ell, A);
        if (mpz_divisible_p(bound.get_mpz_t(), mpz_from_u64(out.period).get_mpz_t())) {
            out.A = A;
            break;
        }
    }
    return out;
}

}  // namespace

NormSequence norm_sequence(const QuadElem& sigma, const QuadElem& gamma, u64 ell, std::size_t length) {
    return norm_sequence_impl(sigma, gamma, ell, length);
}

NormSequence norm_sequence(const QuatElem& sigma, const QuatElem& gamma, u64 ell, std::size_t length) {
    return norm_sequence_impl(sigma, gamma, ell, length);
}

// ---- automorphism tables ----

namespace {

template <class Elem>
std::vector<Elem> closure(const Elem& one, const std::vector<Elem>& gens) {
    std::vector<Elem> g{one};
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (const auto& h : gens) {
            Elem x = g[i] * h;
            if (std::find(g.begin(), g.end(), x) == g.end()) g.push_back(x);
        }
    }
    return g;
}

template <class Elem>
unsigned elem_order(const Elem& x, const Elem& one) {
    Elem y = x;
    unsigned n = 1;
    while (!(y == one)) {
        y = y * x;
        ++n;
    }
    return n;
}

template <class Elem>
AutSubgroup annotate(const std::string& name, const Elem& one, const std::vector<Elem>& gens, u64 p) {
    AutSubgroup sg;
    sg.name = name;
    for (const auto& g : closure(one, gens)) {
        AutElement e;
        e.gamma = g;
        e.order = elem_order(g, one);
        e.norm_one_minus = (one - g).norm();
        e.v_one_minus = e.norm_one_minus == 0 ? 0 : v_p(e.norm_one_minus, p);
        e.C = mpz_pow(p, e.v_one_minus);
        sg.elements.push_back(std::move(e));
    }
    return sg;
}

}  // namespace

std::vector<AutSubgroup> aut_group_table(u64 p, SpecialJ j, RingFlavor flavor) {
    require(is_prime(p), Errc::not_prime, "characteristic must be prime");
    std::vector<AutSubgroup> out;
    if (flavor == RingFlavor::quadratic) {
        if (j != SpecialJ::none && p <= 3)
            fail(Errc::invalid_combination, "ordinary curves in characteristic 2 or 3 only have automorphisms +-1");
        const QuadRing ring = j == SpecialJ::j0 ? QuadRing::eisenstein() : QuadRing::gaussian();
        const QuadElem one = QuadElem::integer(ring, 1), tau = QuadElem::tau(ring);
        out.push_back(annotate("mu2", one, {-one}, p));
        if (j == SpecialJ::j1728) out.push_back(annotate("mu4", one, {tau}, p));
        if (j == SpecialJ::j0) {
            out.push_back(annotate("mu3", one, {tau}, p));
            out.push_back(annotate("mu6", one, {one + tau}, p));
        }
        return out;
    }
    if (j != SpecialJ::j0 || (p != 2 && p != 3))
        fail(Errc::invalid_combination, "explicit quaternion unit groups exist only for j = 0 with p in {2, 3}");
    const QuatOrder o = p == 2 ? QuatOrder::hurwitz : QuatOrder::order3;
    const QuatElem one = QuatElem::integer(o, 1);
    auto D = [o](long a, long b, long c, long d) { return QuatElem::from_doubled(o, a, b, c, d); };
    const QuatElem i = D(0, 2, 0, 0);
    out.push_back(annotate("mu2", one, {-one}, p));
    out.push_back(annotate("mu4", one, {i}, p));
    if (p == 2) {
        out.push_back(annotate("mu3", one, {D(-1, 1, 1, 1)}, p));
        out.push_back(annotate("mu6", one, {D(1, 1, 1, 1)}, p));
        out.push_back(annotate("Q8", one, {i, D(0, 0, 2, 0)}, p));
        out.push_back(annotate("SL2(F3)", one, {i, D(0, 0, 2, 0), D(1, 1, 1, 1)}, p));
    } else {
        out.push_back(annotate("mu3", one, {D(-1, 0, 1, 0)}, p));
        out.push_back(annotate("mu6", one, {D(1, 0, 1, 0)}, p));
        out.push_back(annotate("Dic3", one, {i, D(1, 0, 1, 0)}, p));
    }
    return out;
}

}  // namespace dynzeta
