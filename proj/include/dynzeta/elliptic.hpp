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

#ifndef DYNZETA_ELLIPTIC_HPP
#define DYNZETA_ELLIPTIC_HPP

#include <memory>
#include <string>
#include <vector>

#include "dynzeta/dynmap.hpp"
#include "dynzeta/field.hpp"
#include "dynzeta/small_field.hpp"

namespace dynzeta {

// y^2 = x^3 + A x + B over a finite field of characteristic p >= 5.
class EllipticCurve {
public:
    EllipticCurve(FieldElem A, FieldElem B);
    static EllipticCurve from_ints(const FieldRef& ctx, i64 A, i64 B);

    const FieldRef& ctx() const noexcept { return A_.ctx(); }
    const FieldElem& A() const noexcept { return A_; }
    const FieldElem& B() const noexcept { return B_; }
    FieldElem j_invariant() const;
    // a_q = q + 1 - #E(F_q) over the field of definition.
    i64 trace() const;
    bool is_supersingular() const;
    std::string to_string() const;

private:
    FieldElem A_, B_;
};

struct CurvePoint {
    bool inf = true;
    SmallField::E x = 0, y = 0;

    static CurvePoint identity() { return {}; }
    bool operator==(const CurvePoint& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
};

// The group E(F_{q^k}) over a table field; q^k <= 10^6.
class CurveGroup {
public:
    CurveGroup(const EllipticCurve& E, unsigned k);

    const SmallField& field() const noexcept { return *sf_; }
    SmallField::E a() const noexcept { return a_; }
    SmallField::E b() const noexcept { return b_; }
    // Map an element of the curve's field of definition into the table field.
    SmallField::E embed(const FieldElem& c) const { return emb_(c); }

    bool on_curve(const CurvePoint& P) const;
    CurvePoint neg(const CurvePoint& P) const;
    CurvePoint add(const CurvePoint& P, const CurvePoint& Q) const;
    CurvePoint mul(const CurvePoint& P, i64 m) const;
    std::vector<CurvePoint> points() const;
    u64 count() const;

private:
    SmallField::E rhs(SmallField::E x) const;

    std::shared_ptr<const SmallField> sf_;
    SmallField::Embedding emb_;
    SmallField::E a_, b_;
};

// #E(F_{q^k}) by x-enumeration.
u64 point_count(const EllipticCurve& E, unsigned k);

struct TorsionCount {
    u64 count = 0;  // #E[N] found over the enumerated extensions
    bool complete = false;  // count reached the group-theoretic maximum
    u64 ceiling = 0;  // N'^2 p^v (ordinary) or N'^2 (supersingular), N = N' p^v
    unsigned degree = 0;  // extension degree where count was attained
};

// Enumerates F_{q^k} for k = 1..k_max, stopping early once complete.
TorsionCount torsion_count(const EllipticCurve& E, u64 N, unsigned k_max);

// (#E[m^n - 1] + #E[m^n + 1]) / 2; throws Incomplete if torsion is out of reach.
u64 lattes_oracle(const EllipticCurve& E, u64 m, u64 n);

// #{P in E(F_{q^k}) : [A]P + [B]pi(P) = O}, pi the q-power Frobenius of the
// field of definition.
u64 endomorphism_kernel_count(const EllipticCurve& E, const mpz_class& A, const mpz_class& B, unsigned k);

// The degree m^2 map with f(x(P)) = x([m]P), m <= 5.
RatMap lattes_realize(const EllipticCurve& E, u64 m);

}  // namespace dynzeta

#endif
