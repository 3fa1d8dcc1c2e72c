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

#include "dynzeta/dynmap.hpp"

#include <algorithm>

#include "dynzeta/error.hpp"
#include "dynzeta/small_field.hpp"

namespace dynzeta {

RatMap::RatMap(Poly num, Poly den) {
    require(num.ctx() && den.ctx(), Errc::invalid_argument, "map needs a field");
    require(!den.is_zero(), Errc::invalid_argument, "zero denominator");
    if (!num.is_zero()) {
        Poly g = gcd(num, den);
        if (g.degree() > 0) {
            num = num / g;
            den = den / g;
        }
    }
    FieldElem li = den.lead().inv();
    num_ = num * li;
    den_ = den * li;
    require(degree() >= 1, Errc::invalid_argument, "map must have degree at least 1");
}

RatMap RatMap::polynomial(Poly f) {
    auto ctx = f.ctx();
    return RatMap(std::move(f), Poly::constant(FieldElem::one(ctx)));
}

std::size_t RatMap::degree() const noexcept {
    return static_cast<std::size_t>(std::max(num_.degree(), den_.degree()));
}

std::string RatMap::to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

// sum c_i G^i H^{d-i} given the powers of H.
Poly homogenize(const Poly& c, std::size_t d, const Poly& G, const std::vector<Poly>& Hpow) {
    Poly acc(G.ctx());
    for (std::size_t i = d + 1; i-- > 0;) {
        acc = acc * G;
        FieldElem ci = c.coeff(i);
        if (!ci.is_zero()) acc = acc + Hpow[d - i] * ci;
    }
    return acc;
}

}  // namespace

RatMap compose(const RatMap& f, const RatMap& g) {
    require(f.ctx() == g.ctx(), Errc::invalid_argument, "maps over different fields");
    const std::size_t d = f.degree(), e = g.degree();
    require(static_cast<u64>(d) * e <= degree_cap(), Errc::scale_exceeded, "composition degree exceeds the cap");
    RatMap r;
    if (g.is_polynomial()) {
        // g = G (monic denominator 1): plain Horner in G.
        r.num_ = f.num().compose(g.num());
        r.den_ = f.is_polynomial() ? f.den() : f.den().compose(g.num());
    } else {
        std::vector<Poly> Hpow{Poly::constant(FieldElem::one(f.ctx()))};
        for (std::size_t i = 1; i <= d; ++i) Hpow.push_back(Hpow.back() * g.den());
        r.num_ = homogenize(f.num(), d, g.num(), Hpow);
        r.den_ = homogenize(f.den(), d, g.num(), Hpow);
    }
    // Coprimality is inherited from f and g; only normalize the denominator.
    FieldElem li = r.den_.lead().inv();
    if (!li.is_one()) {
        r.num_ = r.num_ * li;
        r.den_ = r.den_ * li;
    }
    return r;
}

RatMap iterate(const RatMap& f, unsigned n) {
    require(n >= 1, Errc::invalid_argument, "iterate count must be positive");
    RatMap r = f;
    for (unsigned i = 1; i < n; ++i) r = compose(f, r);
    return r;
}

bool is_separable(const RatMap& f) {
    // (N/D)' = (N'D - ND')/D^2 vanishes iff N'D = ND'.
    return !(f.num().derivative() * f.den() == f.num() * f.den().derivative());
}

unsigned oracle_horizon(const RatMap& f) {
    const u64 d = f.degree();
    if (d == 1) return 64;
    unsigned n = 0;
    for (u64 pw = d; pw <= degree_cap(); pw *= d) ++n;
    return n;
}

namespace {

u64 count_fixed(const RatMap& g) {
    Poly P = g.num() - Poly::x(g.ctx()) * g.den();
    if (P.is_zero()) fail(Errc::infinite, "iterate is the identity; every point is periodic");
    return distinct_root_count(P) + (g.fixes_infinity() ? 1 : 0);
}

}  // namespace

u64 per_n_oracle(const RatMap& f, unsigned n) { return count_fixed(iterate(f, n)); }

std::vector<u64> per_n_oracle_range(const RatMap& f, unsigned n_max) {
    std::vector<u64> out;
    if (n_max == 0) return out;
    RatMap g = f;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (n > 1) g = compose(f, g);
        out.push_back(count_fixed(g));
    }
    return out;
}

CycleCensus cycle_census(const RatMap& f, unsigned max_k, unsigned max_n) {
    const FieldRef& ctx = f.ctx();
    require(max_k >= 1, Errc::invalid_argument, "extension bound must be positive");
    mpz_class Q = mpz_pow(ctx->order(), max_k);
    require(Q <= enumeration_cap, Errc::scale_exceeded, "census field exceeds 10^6 elements");
    SmallField sf(ctx->p(), ctx->k() * max_k);
    SmallField::Embedding emb(sf, ctx);
    auto embed = [&](const Poly& P) {
        std::vector<SmallField::E> c(P.size());
        for (std::size_t i = 0; i < P.size(); ++i) c[i] = emb(P.coeff(i));
        return c;
    };
    const auto N = embed(f.num()), D = embed(f.den());
    auto horner = [&](const std::vector<SmallField::E>& c, SmallField::E x) {
        SmallField::E acc = sf.zero();
        for (std::size_t i = c.size(); i-- > 0;) acc = sf.add(sf.mul(acc, x), c[i]);
        return acc;
    };
    const u64 q = sf.q();
    const u64 inf = q;  // index of the point at infinity
    std::vector<u64> next(q + 1);
    for (u64 i = 0; i < q; ++i) {
        SmallField::E x = sf.element(i);
        SmallField::E dv = horner(D, x);
        next[i] = sf.is_zero(dv) ? inf : sf.to_index(sf.div(horner(N, x), dv));
    }
    const int dn = f.num().degree(), dd = f.den().degree();
    if (dn > dd) {
        next[inf] = inf;
    } else if (dn == dd) {
        next[inf] = sf.to_index(sf.div(N.back(), D.back()));
    } else {
        next[inf] = 0;
    }

    CycleCensus out;
    out.field_size = q;
    out.max_n = max_n;
    out.cycles.assign(max_n + 1, 0);
    // stamp 0 = unvisited; walks carry their start index + 1 as stamp.
    std::vector<u64> stamp(q + 1, 0);
    std::vector<u64> pos(q + 1, 0);
    for (u64 s = 0; s <= q; ++s) {
        if (stamp[s]) continue;
        u64 x = s;
        u64 step = 0;
        while (!stamp[x]) {
            stamp[x] = s + 1;
            pos[x] = step++;
            x = next[x];
        }
        if (stamp[x] == s + 1) {
            u64 len = step - pos[x];
            if (len <= max_n) {
                ++out.cycles[len];
            } else {
                ++out.longer_cycles;
            }
        }
    }
    return out;
}

std::vector<u64> census_per_n(const CycleCensus& c) {
    std::vector<u64> out(c.max_n, 0);
    for (unsigned n = 1; n <= c.max_n; ++n)
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0) out[n - 1] += d * c.cycles[d];
    return out;
}

unsigned census_complete_prefix(const CycleCensus& c, const std::vector<u64>& per_n) {
    auto tot = census_per_n(c);
    unsigned j = 0;
    while (j < tot.size() && j < per_n.size() && tot[j] == per_n[j]) ++j;
    return j;
}

}  // namespace dynzeta
