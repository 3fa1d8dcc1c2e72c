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

// One line per acceptance criterion. Criterion 3 is expected to fail: the
// un-squared generic-j kernel cannot match enumeration, and the squared
// default is pinned instead. The exit status is non-zero when any outcome
// differs from its recorded expectation.

#include <array>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dynzeta/automata.hpp"
#include "dynzeta/error.hpp"
#include "dynzeta/zeta.hpp"

using namespace dynzeta;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int zeta_prefixes = 0;
int zeta_nonintegral = 0;

// Every zeta prefix in this binary goes through here.
std::vector<mpz_class> checked_zeta(const std::vector<mpz_class>& counts) {
    ++zeta_prefixes;
    try {
        return zeta_from_counts(counts).coeffs;
    } catch (const Error& e) {
        if (e.code() != Errc::non_integer_coefficient) throw;
        ++zeta_nonintegral;
        return {};
    }
}

std::vector<mpz_class> to_mpz(const std::vector<u64>& v) {
    std::vector<mpz_class> out;
    for (u64 x : v) out.push_back(mpz_from_u64(x));
    return out;
}

unsigned horizon_for(const mpz_class& deg, u64 bound) {
    unsigned n = 0;
    mpz_class pw = deg;
    while (pw <= mpz_from_u64(bound)) {
        ++n;
        pw *= deg;
    }
    return n;
}

TwistedPoly T(const FieldRef& f, std::vector<i64> c) { return TwistedPoly::from_ints(f, c); }

Outcome inseparable_closed_form() {
    int ok = 0;
    for (u64 p : {2, 3, 5}) {
        auto F = FieldCtx::make(p);
        const auto series = checked_zeta(per_n_closed_range(PowerMap{static_cast<i64>(p), F}, 30));
        const IntPoly den{1, -mpz_from_u64(p + 1), mpz_from_u64(p)};
        ok += series == series_of_rational({1}, den, 30);
        // the first counts against the oracle as well
        auto f = realize(PowerMap{static_cast<i64>(p), F});
        const auto oracle = checked_zeta(to_mpz(per_n_oracle_range(f, horizon_for(p, 10000))));
        ok += std::equal(oracle.begin(), oracle.end(), series.begin()) ? 0 : -10;
    }
    return {ok == 3, std::to_string(ok) + "/3 series equal 1/((1-t)(1-pt)) to t^30"};
}

Outcome master_grid() {
    std::vector<DynAffineMap> grid;
    for (u64 p : {3, 5, 7}) {
        auto F = FieldCtx::make(p);
        for (i64 d : {2, -2, 3, -3, 5}) grid.push_back(PowerMap{d, F});
        for (i64 d : {2, 3, 4}) grid.push_back(ChebyshevMap{d, F});
    }
    for (u64 p : {2, 3}) {
        auto F = FieldCtx::make(p);
        for (auto c : std::vector<std::vector<i64>>{{-1, 1}, {1, 1}, {-1, 0, 1}})
            grid.push_back(AdditiveMap{T(F, c), FieldElem::zero(F)});
    }
    for (u64 p : {3, 5}) {
        auto F = FieldCtx::make(p);
        grid.push_back(SubadditiveMap{T(F, {-1, 1}), p - 1});
    }
    int cells = 0, bad = 0;
    for (const auto& m : grid) {
        RatMap f = realize(m);
        const unsigned N = horizon_for(mpz_from_u64(f.degree()), 10000);
        const auto oracle = per_n_oracle_range(f, N);
        for (unsigned n = 1; n <= N; ++n) {
            ++cells;
            bad += per_n_closed(m, n) != mpz_from_u64(oracle[n - 1]);
        }
        checked_zeta(to_mpz(oracle));
        checked_zeta(per_n_closed_range(m, 30));
    }
    return {bad == 0 && cells > 0, std::to_string(grid.size()) + " maps, " + std::to_string(cells) + " cells, " +
                                       std::to_string(bad) + " mismatches"};
}

Outcome lattes_unsquared() {
    int curves = 0, un_match = 0, sq_match = 0, cells = 0;
    for (u64 p : {5, 7}) {
        auto F = FieldCtx::make(p);
        int here = 0;
        for (i64 A = 0; A < static_cast<i64>(p) && here < 2; ++A)
            for (i64 B = 0; B < static_cast<i64>(p) && here < 2; ++B) {
                if ((4 * A * A * A + 27 * B * B) % static_cast<i64>(p) == 0) continue;
                auto E = EllipticCurve::from_ints(F, A, B);
                if (E.is_supersingular()) continue;
                std::vector<u64> got;
                try {
                    for (u64 n : {1, 2}) got.push_back(lattes_oracle(E, 2, n));
                } catch (const Error& e) {
                    if (e.code() != Errc::incomplete) throw;
                    continue;
                }
                ++here;
                ++curves;
                for (u64 n : {1, 2}) {
                    ++cells;
                    un_match += per_n_closed(LattesGenericJ{2, p, LattesVariant::unsquared, std::nullopt}, n) ==
                                got[n - 1];
                    sq_match += per_n_closed(LattesGenericJ{2, p, LattesVariant::squared, std::nullopt}, n) ==
                                got[n - 1];
                }
            }
    }
    const std::string detail = std::to_string(curves) + " ordinary curves over F_5/F_7: un-squared matches " +
                               std::to_string(un_match) + "/" + std::to_string(cells) + ", squared matches " +
                               std::to_string(sq_match) + "/" + std::to_string(cells) + "; default pinned to squared";
    return {curves >= 3 && un_match == cells, detail};
}

Outcome lte_suites() {
    std::mt19937_64 rng(2026);
    std::vector<std::string> parts;
    bool all = true;
    auto suite = [&](const std::string& name, const std::function<bool()>& one_case) {
        int done = 0;
        for (int tries = 0; done < 200 && tries < 200000; ++tries) done += one_case();
        all = all && done == 200;
        parts.push_back(name + " " + std::to_string(done));
    };
    int failures = 0;
    std::uniform_int_distribution<long> small(-40, 40);

    // integers
    suite("Z", [&] {
        const u64 p = std::array<u64, 4>{2, 3, 5, 7}[rng() % 4];
        const mpz_class x = small(rng), y = small(rng);
        if (x == y || x % p == 0 || y % p == 0) return false;
        const mpz_class diff = x - y;
        if (diff % p != 0 || (p == 2 && diff % 4 != 0)) return false;
        const u64 n = 1 + rng() % 50;
        failures += *lte_int(x, y, p, n) != v_p_int(mpz_pow(x, n) - mpz_pow(y, n), p);
        return true;
    });
    // Gaussian and Eisenstein integers at split primes
    const std::vector<std::pair<QuadRing, u64>> quads{{QuadRing::gaussian(), 5},   {QuadRing::gaussian(), 13},
                                                     {QuadRing::eisenstein(), 7}, {QuadRing::eisenstein(), 13}};
    suite("Z[i]/Z[w]", [&] {
        const auto& [R, p] = quads[rng() % quads.size()];
        auto ctx = PrimeContext::quad_ordinary(R, p);
        QuadElem x(R, small(rng), small(rng)), y(R, small(rng), small(rng));
        if (x.is_zero() || y.is_zero() || x == y) return false;
        if (v_frak_p(x, ctx) || v_frak_p(y, ctx) || !v_frak_p(x - y, ctx)) return false;
        const u64 n = 1 + rng() % 50;
        failures += *lte_quad(x, y, ctx, n) != v_frak_p(x.pow(n) - y.pow(n), ctx);
        return true;
    });
    // quaternion orders, commuting pairs
    for (QuatOrder o : {QuatOrder::hurwitz, QuatOrder::order3}) {
        std::uniform_int_distribution<long> c(-6, 6), s(-4, 4);
        const unsigned need = o == QuatOrder::hurwitz ? 3 : 2;
        suite(o == QuatOrder::hurwitz ? "Hurwitz" : "order3", [&] {
            QuatElem a = QuatElem::from_basis(o, c(rng), c(rng), c(rng), c(rng));
            QuatElem b = QuatElem::integer(o, s(rng)) + QuatElem::integer(o, s(rng)) * a;
            if (a.is_zero() || b.is_zero() || a == b || v_I(a) || v_I(b) || v_I(a - b) < need) return false;
            const u64 n = 1 + rng() % 50;
            failures += *lte_quat(a, b, n) != v_I(a.pow(n) - b.pow(n));
            return true;
        });
    }
    // twisted polynomials: x = 1 + (terms in phi)
    for (u64 p : {2, 3}) {
        auto F = FieldCtx::make(p);
        suite(p == 2 ? "F_2<phi>" : "F_3<phi>", [&] {
            std::vector<FieldElem> co{FieldElem::one(F)};
            const unsigned len = 1 + rng() % 3;
            for (unsigned i = 0; i < len; ++i) co.push_back(FieldElem::from_int(F, static_cast<i64>(rng() % p)));
            TwistedPoly x(F, co);
            if (!v_phi(tw_sub_scalar(x, FieldElem::one(F)))) return false;
            const u64 n = 1 + rng() % 50;
            const auto direct = v_phi(tw_sub_scalar(tw_pow(x, n), FieldElem::one(F)));
            failures += !direct || *lte_ga(x, n) != *direct;
            return true;
        });
    }
    std::string detail;
    for (const auto& s : parts) detail += (detail.empty() ? "" : ", ") + s;
    return {all && failures == 0, detail + " cases; " + std::to_string(failures) + " mismatches"};
}

Outcome norm_sequences() {
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<long> d(-9, 9), q(-6, 6);
    int runs = 0, bad = 0;
    auto check = [&](const NormSequence& s) {
        ++runs;
        bad += !(s.agree && s.A && *s.A <= 4 && s.direct.size() == 200);
    };
    for (QuadRing R : {QuadRing::gaussian(), QuadRing::eisenstein()})
        for (int t = 0; t < 100; ++t) {
            QuadElem s(R, d(rng), d(rng)), g(R, d(rng), d(rng));
            for (u64 ell : {5, 11, 13}) check(norm_sequence(s, g, ell, 200));
        }
    for (QuatOrder o : {QuatOrder::hurwitz, QuatOrder::order3})
        for (int t = 0; t < 20; ++t) {
            QuatElem s = QuatElem::from_basis(o, q(rng), q(rng), q(rng), q(rng));
            QuatElem g = QuatElem::from_basis(o, q(rng), q(rng), q(rng), q(rng));
            for (u64 ell : {5, 11, 13}) check(norm_sequence(s, g, ell, 200));
        }
    return {bad == 0, std::to_string(runs) + " sequences, " + std::to_string(bad) + " failures"};
}

Outcome christol_fixtures() {
    const std::size_t N = 4096;
    auto P = BivariatePoly::parse("y^2 + y + t", 2);
    const std::vector<u64> s = christol_series(P, std::vector<u64>{0}, N);
    bool ok = s.size() == N;
    for (std::size_t n = 0; n < N && ok; ++n) ok = s[n] == (n && (n & (n - 1)) == 0 ? 1u : 0u);
    for (u64 v : P.eval(s, N)) ok = ok && v == 0;
    const auto k = kernel_explore(std::span<const u64>(s), 2, 5, 128);
    ok = ok && k.closed() && k.classes() <= 5;

    auto TM = BivariatePoly::parse("(1+t)^3*y^2 + (1+t)^2*y + t", 2);
    const std::vector<u64> tm = christol_series(TM, std::vector<u64>{0, 1}, N);
    bool tm_ok = true;
    for (std::size_t n = 0; n < N; ++n) tm_ok = tm_ok && tm[n] == static_cast<u64>(std::popcount(n) & 1);
    for (u64 v : TM.eval(tm, N)) tm_ok = tm_ok && v == 0;
    const auto kt = kernel_explore(std::span<const u64>(tm), 2, 5, 128);
    tm_ok = tm_ok && kt.closed() && kt.classes() <= 5;
    return {ok && tm_ok, "powers of 2: " + std::to_string(k.classes()) + " kernel classes; Thue-Morse: " +
                             std::to_string(kt.classes()) + " classes; both re-substituted over 4096 terms"};
}

std::string counts_str(const KernelReport& r) {
    std::string s;
    for (auto c : r.classes_per_depth) s += (s.empty() ? "" : " ") + std::to_string(c);
    return s;
}

bool strictly_growing(const KernelReport& r) {
    if (r.classes_per_depth.size() < 5) return false;
    for (unsigned e = 1; e < 4; ++e)
        if (r.classes_per_depth[e] >= r.classes_per_depth[e + 1]) return false;
    return true;
}

Outcome non_automaticity() {
    // 2^{v_3(n)} mod 5
    const auto seq = valuation_power_sequence(2, 3, 5, 1, 0, 729 * 256).values;
    const auto ell = kernel_explore(std::span<const u64>(seq), 5, 4, 256);
    const bool no_period = !eventual_period_detect(std::span<const u64>(seq.data(), 2000));
    const auto pk = kernel_explore(std::span<const u64>(seq), 3, 6, 256);
    const bool seq_ok = strictly_growing(ell) && no_period && pk.closed() && pk.closed_at && *pk.closed_at <= 4;

    auto F3 = FieldCtx::make(3);
    const Certificate c = certificate_build(PowerMap{2, F3});
    const bool cert_ok = c.ell == 5 && strictly_growing(c.ell_kernel) && !c.period && c.period_prefix == 2000 &&
                         c.p_kernel.closed() && c.p_kernel.closed_at && *c.p_kernel.closed_at <= 4 && c.consistent();
    return {seq_ok && cert_ok, "sequence: base-5 " + counts_str(ell) + ", base-3 closed at " +
                                   (pk.closed_at ? std::to_string(*pk.closed_at) : "-") +
                                   "; x^2 over F_3 (ell = " + std::to_string(c.ell) + "): base-5 " +
                                   counts_str(c.ell_kernel) + ", base-3 closed at " +
                                   (c.p_kernel.closed_at ? std::to_string(*c.p_kernel.closed_at) : "-")};
}

Outcome transcendental_constant() {
    auto K = FieldCtx::make_rational(3);
    AdditiveMap m{TwistedPoly(K, {FieldElem::generator(K), FieldElem::one(K)}), FieldElem::zero(K)};
    bool counts_ok = true;
    for (u64 n = 1; n <= 20; ++n) counts_ok = counts_ok && per_n_closed(m, n) == 1 + mpz_pow(3, n);
    const auto counts = per_n_closed_range(m, 30);
    const auto g = rationality_guess(counts);
    const IntPoly den{1, -4, 3};
    const bool guess_ok = g && g->zeta && g->zeta->numerator == IntPoly{1} && g->zeta->denominator == den;
    const bool series_ok = checked_zeta(counts) == series_of_rational({1}, den, 30);
    return {counts_ok && guess_ok && series_ok,
            std::string("guess ") + (g && g->zeta ? g->zeta->to_string() : "none") + ", 30-term series " +
                (series_ok ? "matches" : "differs")};
}

Outcome verdict_battery() {
    auto F2 = FieldCtx::make(2), F3 = FieldCtx::make(3), F5 = FieldCtx::make(5);
    auto K = FieldCtx::make_rational(3);
    const auto u = FieldElem::generator(K), one = FieldElem::one(K);
    const auto Gi = QuadRing::gaussian();
    auto H = [](long a, long b, long c, long d) { return QuatElem::from_doubled(QuatOrder::hurwitz, a, b, c, d); };
    struct Case {
        DynAffineMap map;
        VerdictKind expect;
    };
    const auto R = VerdictKind::rational, TE = VerdictKind::transcendental_evidence;
    const std::vector<Case> battery{
        {PowerMap{3, F3}, R},
        {AdditiveMap{TwistedPoly::phi(F3), FieldElem::one(F3)}, R},
        {AdditiveMap{TwistedPoly(K, {u, one}), FieldElem::zero(K)}, R},
        {SubadditiveMap{TwistedPoly(K, {u, one}), 2}, R},
        {PowerMap{2, F3}, TE},
        {PowerMap{-2, F5}, TE},
        {ChebyshevMap{3, F2}, TE},
        {AdditiveMap{T(F3, {-1, 1}), FieldElem::zero(F3)}, TE},
        {SubadditiveMap{T(F3, {-1, 1}), 2}, TE},
        {LattesGenericJ{2, 5, LattesVariant::squared, std::nullopt}, TE},
        {LattesOrdinary{QuadElem(Gi, 2, 3), PrimeContext::quad_ordinary(Gi, 5),
                        {QuadElem::integer(Gi, 1), QuadElem::integer(Gi, -1)}},
         TE},
        {LattesSupersingular{H(2, 2, 2, 0), {H(2, 0, 0, 0), H(-2, 0, 0, 0)}}, TE},
    };
    int tags = 0, certs = 0, consistent = 0;
    for (const auto& c : battery) {
        const Verdict v = verdict(c.map);
        checked_zeta(per_n_closed_range(c.map, 30));
        tags += v.kind == c.expect;
        if (v.kind == VerdictKind::rational) tags -= !v.series_verified;
        if (v.certificate) {
            ++certs;
            consistent += v.certificate->consistent();
        }
    }
    return {tags == static_cast<int>(battery.size()) && consistent == certs,
            std::to_string(tags) + "/" + std::to_string(battery.size()) + " outcomes, " +
                std::to_string(consistent) + "/" + std::to_string(certs) + " certificates consistent"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        bool expect_pass;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {1, "inseparable closed form", 1, true, inseparable_closed_form},
        {2, "closed forms equal the root-count oracle on the family grid", 60, true, master_grid},
        {3, "un-squared generic-j Lattes counts equal curve enumeration", 30, false, lattes_unsquared},
        {4, "lifting-the-exponent suites", 30, true, lte_suites},
        {5, "norm sequences follow the order-4 recurrence", 30, true, norm_sequences},
        {6, "algebraic series fixtures and their 2-kernels", 10, true, christol_fixtures},
        {7, "non-automaticity evidence", 60, true, non_automaticity},
        {8, "additive map with transcendental constant term is rational", 5, true, transcendental_constant},
        {9, "verdict battery", 120, true, verdict_battery},
    };
    int passed = 0, unexpected = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && s < c.limit_s;
        passed += pass;
        unexpected += pass != c.expect_pass;
        std::printf("criterion %2d %s: %s [%s] (%.2f s, limit %.0f s)%s\n", c.id, pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), s, c.limit_s, pass == c.expect_pass ? "" : " UNEXPECTED");
    }
    const bool integral = zeta_nonintegral == 0 && zeta_prefixes > 0;
    passed += integral;
    unexpected += !integral;
    std::printf("criterion 10 %s: zeta prefixes are integral [%d prefixes, %d non-integral]\n",
                integral ? "PASS" : "FAIL", zeta_prefixes, zeta_nonintegral);
    std::printf("%d/10 criteria pass; %d outcome(s) differ from expectation\n", passed, unexpected);
    return unexpected == 0 ? 0 : 1;
}
