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

#include "dynzeta/elliptic.hpp"

#include <sstream>

#include "dynzeta/error.hpp"

namespace dynzeta {

namespace {

constexpr u64 table_limit = 1000000;

unsigned table_degree(const FieldRef& ctx, unsigned k) {
    require(k >= 1, Errc::invalid_argument, "extension degree must be positive");
    const unsigned total = ctx->k() * k;
    mpz_class q = mpz_pow(ctx->p(), total);
    require(q <= table_limit, Errc::scale_exceeded, "enumeration field larger than 10^6");
    return total;
}

}  // namespace

// ---- EllipticCurve ----

EllipticCurve::EllipticCurve(FieldElem A, FieldElem B) : A_(std::move(A)), B_(std::move(B)) {
    require(A_.ctx() == B_.ctx(), Errc::invalid_argument, "coefficients from different fields");
    require(ctx()->is_finite(), Errc::invalid_argument, "curves need a finite field");
    require(ctx()->p() >= 5, Errc::invalid_argument, "short Weierstrass curves need p >= 5");
    const auto& F = ctx();
    FieldElem disc = FieldElem::from_int(F, 4) * A_.pow(3) + FieldElem::from_int(F, 27) * B_ * B_;
    require(!disc.is_zero(), Errc::invalid_argument, "singular curve");
}

EllipticCurve EllipticCurve::from_ints(const FieldRef& ctx, i64 A, i64 B) {
    return {FieldElem::from_int(ctx, A), FieldElem::from_int(ctx, B)};
}

FieldElem EllipticCurve::j_invariant() const {
    const auto& F = ctx();
    FieldElem a3 = FieldElem::from_int(F, 4) * A_.pow(3);
    return FieldElem::from_int(F, 1728) * a3 / (a3 + FieldElem::from_int(F, 27) * B_ * B_);
}

i64 EllipticCurve::trace() const {
    const i64 q = static_cast<i64>(mpz_to_u64(ctx()->order()));
    return q + 1 - static_cast<i64>(point_count(*this, 1));
}

bool EllipticCurve::is_supersingular() const { return trace() % static_cast<i64>(ctx()->p()) == 0; }

std::string EllipticCurve::to_string() const {
    std::ostringstream os;
    os << "y^2 = x^3 + (" << A_.to_string() << ")x + (" << B_.to_string() << ") over " << ctx()->describe();
    return os.str();
}

// ---- CurveGroup ----

CurveGroup::CurveGroup(const EllipticCurve& E, unsigned k)
    : sf_(std::make_shared<const SmallField>(E.ctx()->p(), table_degree(E.ctx(), k))),
      emb_(*sf_, E.ctx()),
      a_(emb_(E.A())),
      b_(emb_(E.B())) {}

SmallField::E CurveGroup::rhs(SmallField::E x) const {
    const SmallField& F = *sf_;
    return F.add(F.mul(x, F.add(F.mul(x, x), a_)), b_);
}

bool CurveGroup::on_curve(const CurvePoint& P) const {
    return P.inf || sf_->mul(P.y, P.y) == rhs(P.x);
}

CurvePoint CurveGroup::neg(const CurvePoint& P) const {
    if (P.inf) return P;
    return {false, P.x, sf_->neg(P.y)};
}

CurvePoint CurveGroup::add(const CurvePoint& P, const CurvePoint& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    const SmallField& F = *sf_;
    SmallField::E lambda;
    if (P.x == Q.x) {
        if (P.y != Q.y || F.is_zero(P.y)) return CurvePoint::identity();
        SmallField::E x2 = F.mul(P.x, P.x);
        SmallField::E num = F.add(F.mul(F.from_int(3), x2), a_);
        lambda = F.div(num, F.mul(F.from_int(2), P.y));
    } else {
        lambda = F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x));
    }
    SmallField::E x3 = F.sub(F.sub(F.mul(lambda, lambda), P.x), Q.x);
    SmallField::E y3 = F.sub(F.mul(lambda, F.sub(P.x, x3)), P.y);
    return {false, x3, y3};
}

CurvePoint CurveGroup::mul(const CurvePoint& P, i64 m) const {
    CurvePoint base = m < 0 ? neg(P) : P, acc = CurvePoint::identity();
    u64 e = m < 0 ? static_cast<u64>(-m) : static_cast<u64>(m);
    while (e) {
        if (e & 1) acc = add(acc, base);
        e >>= 1;
        if (e) base = add(base, base);
    }
    return acc;
}

std::vector<CurvePoint> CurveGroup::points() const {
    const SmallField& F = *sf_;
    std::vector<CurvePoint> out{CurvePoint::identity()};
    for (u64 i = 0; i < F.q(); ++i) {
        SmallField::E x = F.element(i), r = rhs(x);
        if (F.is_zero(r)) {
            out.push_back({false, x, r});
        } else if (F.is_square(r)) {
            // Square roots in log form: r = g^{2t} has roots g^t and -g^t.
            SmallField::E y = static_cast<SmallField::E>(r / 2);
            out.push_back({false, x, y});
            out.push_back({false, x, F.neg(y)});
        }
    }
    return out;
}

u64 CurveGroup::count() const {
    const SmallField& F = *sf_;
    u64 n = 1;
    for (u64 i = 0; i < F.q(); ++i) {
        SmallField::E r = rhs(F.element(i));
        n += F.is_zero(r) ? 1 : F.is_square(r) ? 2 : 0;
    }
    return n;
}

u64 point_count(const EllipticCurve& E, unsigned k) { return CurveGroup(E, k).count(); }

// ---- torsion ----

TorsionCount torsion_count(const EllipticCurve& E, u64 N, unsigned k_max) {
    require(N >= 1 && N <= 50, Errc::invalid_argument, "torsion order must lie in [1, 50]");
    table_degree(E.ctx(), k_max);
    const u64 p = E.ctx()->p();
    u64 prime_part = 1, rest = N;
    while (rest % p == 0) {
        rest /= p;
        prime_part *= p;
    }
    TorsionCount out;
    out.ceiling = rest * rest * (E.is_supersingular() ? 1 : prime_part);
    // #E(F_{q^k}) from the trace recurrence only decides which degrees are worth
    // enumerating: full torsion needs the ceiling to divide the group order.
    const mpz_class q = E.ctx()->order();
    const mpz_class a = E.trace();
    mpz_class s_prev = 2, s_cur = a;  // alpha^k + beta^k
    for (unsigned k = 1; k <= k_max; ++k) {
        if (k > 1) {
            mpz_class next = a * s_cur - q * s_prev;
            s_prev = s_cur;
            s_cur = next;
        }
        const mpz_class order = mpz_pow(q, k) + 1 - s_cur;
        if (k > 1 && order % out.ceiling != 0) continue;
        CurveGroup G(E, k);
        u64 c = 0;
        for (const auto& P : G.points())
            if (G.mul(P, static_cast<i64>(N)).inf) ++c;
        if (c > out.count) {
            out.count = c;
            out.degree = k;
        }
        if (out.count == out.ceiling) {
            out.complete = true;
            break;
        }
    }
    return out;
}

u64 lattes_oracle(const EllipticCurve& E, u64 m, u64 n) {
    require(m >= 2 && n >= 1, Errc::invalid_argument, "need m >= 2 and n >= 1");
    mpz_class mn = mpz_pow(m, n);
    require(mn + 1 <= 50, Errc::scale_exceeded, "m^n + 1 exceeds the torsion enumeration bound");
    const u64 M = mpz_to_u64(mn);
    unsigned k_max = 1;
    while (mpz_pow(E.ctx()->p(), E.ctx()->k() * (k_max + 1)) <= table_limit) ++k_max;
    u64 total = 0;
    for (u64 N : {M - 1, M + 1}) {
        TorsionCount t = torsion_count(E, N, k_max);
        if (!t.complete) fail(Errc::incomplete, "torsion of order " + std::to_string(N) + " not reached by enumeration");
        total += t.count;
    }
    require(total % 2 == 0, Errc::internal, "odd torsion total");
    return total / 2;
}

u64 endomorphism_kernel_count(const EllipticCurve& E, const mpz_class& A, const mpz_class& B, unsigned k) {
    CurveGroup G(E, k);
    const auto pts = G.points();
    const mpz_class order = mpz_from_u64(pts.size());
    mpz_class a = A % order, b = B % order;
    const i64 ai = a.get_si(), bi = b.get_si();
    const u64 q = mpz_to_u64(E.ctx()->order());
    const SmallField& S = G.field();
    u64 c = 0;
    for (const auto& P : pts) {
        CurvePoint F = P.inf ? P : CurvePoint{false, S.pow(P.x, q), S.pow(P.y, q)};
        if (G.add(G.mul(P, ai), G.mul(F, bi)).inf) ++c;
    }
    return c;
}

// ---- division polynomials ----

namespace {

// g(x) * y^e with y^2 = F(x).
struct DivPoly {
    Poly g;
    int e = 0;
};

DivPoly dmul(const DivPoly& a, const DivPoly& b, const Poly& F) {
    DivPoly r{a.g * b.g, a.e + b.e};
    if (r.e == 2) {
        r.g = r.g * F;
        r.e = 0;
    }
    return r;
}

DivPoly dsub(const DivPoly& a, const DivPoly& b) {
    if (a.g.is_zero()) return {-b.g, b.e};
    if (b.g.is_zero()) return a;
    require(a.e == b.e, Errc::internal, "division polynomial parity mismatch");
    return {a.g - b.g, a.e};
}

std::vector<DivPoly> division_polynomials(const EllipticCurve& E, u64 upto) {
    const FieldRef& ctx = E.ctx();
    auto c = [&](i64 v) { return FieldElem::from_int(ctx, v); };
    const FieldElem A = E.A(), B = E.B();
    const Poly F = Poly::from_ints(ctx, {0, 0, 0, 1}) + Poly::x(ctx) * A + Poly::constant(B);
    auto P = [&](std::vector<FieldElem> cs) {
        Poly r = Poly::constant(FieldElem::zero(ctx));
        for (std::size_t i = 0; i < cs.size(); ++i) r += Poly::monomial(cs[i], i);
        return r;
    };
    std::vector<DivPoly> psi(std::max<u64>(upto + 1, 5));
    psi[0] = {Poly::constant(FieldElem::zero(ctx)), 0};
    psi[1] = {Poly::constant(c(1)), 0};
    psi[2] = {Poly::constant(c(2)), 1};
    psi[3] = {P({-(A * A), c(12) * B, c(6) * A, c(0), c(3)}), 0};
    psi[4] = {P({c(-4) * (c(8) * B * B + A * A * A), c(-16) * A * B, c(-20) * A * A, c(80) * B, c(20) * A, c(0), c(4)}), 1};
    auto cube = [&](const DivPoly& d) { return dmul(dmul(d, d, F), d, F); };
    for (u64 m = 5; m <= upto; ++m) {
        const u64 k = m / 2;
        if (m % 2 == 1) {
            psi[m] = dsub(dmul(psi[k + 2], cube(psi[k]), F), dmul(psi[k - 1], cube(psi[k + 1]), F));
        } else {
            DivPoly inner = dsub(dmul(psi[k + 2], dmul(psi[k - 1], psi[k - 1], F), F),
                                 dmul(psi[k - 2], dmul(psi[k + 1], psi[k + 1], F), F));
            DivPoly t = dmul(psi[k], inner, F);
            // t / (2y) = (t / 2F) y, since y^2 = F.
            require(t.e == 0, Errc::internal, "unexpected y parity in an even division polynomial");
            auto [qt, rm] = t.g.divrem(F);
            require(rm.is_zero(), Errc::internal, "division polynomial not divisible by the cubic");
            psi[m] = {qt * c(2).inv(), 1};
        }
    }
    return psi;
}

}  // namespace

RatMap lattes_realize(const EllipticCurve& E, u64 m) {
    require(m >= 2 && m <= 5, Errc::scale_exceeded, "realization supports 2 <= m <= 5");
    const FieldRef& ctx = E.ctx();
    const Poly F = Poly::from_ints(ctx, {0, 0, 0, 1}) + Poly::x(ctx) * E.A() + Poly::constant(E.B());
    auto psi = division_polynomials(E, m + 1);
    DivPoly sq = dmul(psi[m], psi[m], F), pr = dmul(psi[m - 1], psi[m + 1], F);
    require(sq.e == 0 && pr.e == 0, Errc::internal, "unexpected y parity");
    RatMap f(Poly::x(ctx) * sq.g - pr.g, sq.g);
    require(f.degree() == m * m, Errc::internal, "multiplication map has the wrong degree");

    // Pointwise verification on E(F_q).
    CurveGroup G(E, 1);
    const SmallField& S = G.field();
    auto ev = [&](const Poly& p, SmallField::E x) {
        SmallField::E acc = S.zero();
        for (std::size_t i = p.size(); i-- > 0;) acc = S.add(S.mul(acc, x), G.embed(p.coeff(i)));
        return acc;
    };
    for (const auto& P : G.points()) {
        if (P.inf) continue;
        CurvePoint Q = G.mul(P, static_cast<i64>(m));
        SmallField::E d = ev(f.den(), P.x);
        if (Q.inf != S.is_zero(d)) fail(Errc::mismatch, "realized map disagrees with the group law at a pole");
        if (!Q.inf && S.div(ev(f.num(), P.x), d) != Q.x) fail(Errc::mismatch, "realized map disagrees with the group law");
    }
    return f;
}

}  // namespace dynzeta
