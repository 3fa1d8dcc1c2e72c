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

#include "dynzeta/zeta.hpp"

#include <algorithm>
#include <sstream>

#include "dynzeta/error.hpp"

namespace dynzeta {

ZetaSeries zeta_from_counts(const std::vector<mpz_class>& counts) {
    ZetaSeries z;
    z.coeffs.reserve(counts.size() + 1);
    z.coeffs.push_back(1);
    for (std::size_t j = 1; j <= counts.size(); ++j) {
        mpz_class acc = 0;
        for (std::size_t i = 1; i <= j; ++i) acc += counts[i - 1] * z.coeffs[j - i];
        const mpz_class jj = mpz_from_u64(j);
        if (!mpz_divisible_p(acc.get_mpz_t(), jj.get_mpz_t()))
            fail(Errc::non_integer_coefficient, "zeta coefficient " + std::to_string(j) + " is not an integer");
        z.coeffs.push_back(acc / jj);
    }
    return z;
}

ZetaSeries zeta_from_counts(const std::vector<u64>& counts) {
    std::vector<mpz_class> c;
    c.reserve(counts.size());
    for (u64 x : counts) c.push_back(mpz_from_u64(x));
    return zeta_from_counts(c);
}

ZetaSeries zeta_from_cycles(const std::vector<u64>& cycles, std::size_t n) {
    ZetaSeries z;
    z.provenance = ZetaProvenance::product_formula;
    z.coeffs.assign(n + 1, 0);
    z.coeffs[0] = 1;
    for (std::size_t L = 1; L <= n && L < cycles.size(); ++L) {
        // Multiply by (1 - t^L)^{-1} once per cycle: prefix sums with stride L.
        for (u64 k = 0; k < cycles[L]; ++k)
            for (std::size_t i = L; i <= n; ++i) z.coeffs[i] += z.coeffs[i - L];
    }
    return z;
}

std::vector<mpz_class> series_of_rational(const IntPoly& num, const IntPoly& den, std::size_t n) {
    require(!den.empty() && (den[0] == 1 || den[0] == -1), Errc::invalid_argument,
            "denominator must have constant term +-1");
    std::vector<mpz_class> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        mpz_class acc = i < num.size() ? num[i] : mpz_class(0);
        for (std::size_t k = 1; k <= i && k < den.size(); ++k) acc -= den[k] * out[i - k];
        out[i] = den[0] == 1 ? acc : mpz_class(-acc);
    }
    return out;
}

namespace {

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::string poly_string(const IntPoly& p) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        mpz_class c = p[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        c = abs(c);
        if (i == 0 || c != 1) os << c.get_str();
        if (i > 0) os << (i == 0 || c != 1 ? "*t" : "t") << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return first ? "0" : os.str();
}

// Solves A x = y over Q; nullopt when singular.
std::optional<std::vector<mpq_class>> solve(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> y) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(A[piv], A[col]);
        std::swap(y[piv], y[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            const mpq_class f = A[r][col] / A[col][col];
            for (std::size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
            y[r] -= f * y[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) y[i] /= A[i][i];
    return y;
}

// Distinct integer roots of x^r - c_1 x^{r-1} - ... - c_r, all simple.
std::optional<std::vector<mpz_class>> integer_roots(const std::vector<mpz_class>& c) {
    const std::size_t r = c.size();
    const mpz_class last = abs(c.back());
    if (last == 0 || last >= mpz_class(1) << 40) return std::nullopt;
    // Candidate divisors of the constant term.
    std::vector<u64> divs{1};
    for (auto [q, e] : factor(mpz_to_u64(last))) {
        const std::size_t cur = divs.size();
        u64 pw = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pw *= q;
            for (std::size_t i = 0; i < cur; ++i) divs.push_back(divs[i] * pw);
        }
    }
    // Coefficients of the characteristic polynomial, highest first.
    std::vector<mpz_class> poly{1};
    for (const auto& x : c) poly.push_back(-x);
    std::vector<mpz_class> roots;
    for (u64 d : divs)
        for (int sgn : {1, -1}) {
            const mpz_class a = sgn * mpz_from_u64(d);
            mpz_class v = 0;
            for (const auto& k : poly) v = v * a + k;
            if (v == 0) roots.push_back(a);
        }
    if (roots.size() != r) return std::nullopt;
    return roots;
}

}  // namespace

std::string ClosedForm::to_string() const {
    return "(" + poly_string(numerator) + ")/(" + poly_string(denominator) + ")";
}

std::optional<RationalityGuess> rationality_guess(const std::vector<mpz_class>& counts) {
    const std::size_t len = counts.size();
    if (len < 2 + rationality_slack) return std::nullopt;
    const unsigned rmax = std::min<unsigned>(rationality_max_order, static_cast<unsigned>((len - rationality_slack) / 2));
    std::vector<mpq_class> s(counts.begin(), counts.end());

    RationalityGuess g;
    bool found = false;
    if (std::all_of(counts.begin(), counts.end(), [](const mpz_class& x) { return x == 0; })) {
        found = true;
    }
    for (unsigned r = 1; r <= rmax && !found; ++r) {
        std::vector<std::vector<mpq_class>> A(r, std::vector<mpq_class>(r));
        std::vector<mpq_class> y(r);
        for (unsigned k = 0; k < r; ++k) {
            for (unsigned i = 1; i <= r; ++i) A[k][i - 1] = s[r + k - i];
            y[k] = s[r + k];
        }
        auto sol = solve(A, y);
        if (!sol) continue;
        bool ok = true;
        for (std::size_t n = r; n < len && ok; ++n) {
            mpq_class acc = 0;
            for (unsigned i = 1; i <= r; ++i) acc += (*sol)[i - 1] * s[n - i];
            ok = acc == s[n];
        }
        if (ok) {
            g.recurrence = *sol;
            found = true;
        }
    }
    if (!found) return std::nullopt;

    const std::size_t r = g.recurrence.size();
    if (r == 0) {
        g.zeta = ClosedForm{{1}, {1}};
        return g;
    }
    std::vector<mpz_class> c;
    for (const auto& q : g.recurrence) {
        if (q.get_den() != 1) return g;
        c.push_back(q.get_num());
    }
    auto roots = integer_roots(c);
    if (!roots) return g;
    // counts_n = sum e_i alpha_i^n, n = 1..r.
    std::vector<std::vector<mpq_class>> V(r, std::vector<mpq_class>(r));
    std::vector<mpq_class> y(r);
    for (std::size_t n = 0; n < r; ++n) {
        for (std::size_t i = 0; i < r; ++i) V[n][i] = mpz_pow((*roots)[i], static_cast<unsigned long>(n + 1));
        y[n] = s[n];
    }
    auto e = solve(V, y);
    if (!e) return g;
    IntPoly num{1}, den{1};
    for (std::size_t i = 0; i < r; ++i) {
        if ((*e)[i].get_den() != 1) return g;
        const long ei = (*e)[i].get_num().get_si();
        g.factors.emplace_back((*roots)[i], ei);
        const IntPoly lin{1, -(*roots)[i]};
        for (long k = 0; k < std::labs(ei); ++k) {
            if (ei > 0) den = poly_mul(den, lin);
            else num = poly_mul(num, lin);
        }
    }
    const auto expect = zeta_from_counts(counts).coeffs;
    if (series_of_rational(num, den, len) != expect) return g;
    g.zeta = ClosedForm{num, den};
    return g;
}

namespace {

ClosedForm two_factor_form(const mpz_class& d) { return ClosedForm{{1}, {1, -(1 + d), d}}; }

}  // namespace

Verdict verdict(const DynAffineMap& map, const VerdictParams& params) {
    validate(map);
    Verdict v;
    v.series = zeta_from_counts(per_n_closed_range(map, params.series_terms)).coeffs;

    std::optional<mpz_class> rational_degree;
    if (classify_separability(map) == Separability::inseparable) {
        v.basis = "inseparable map: Per_n = deg^n + 1";
        rational_degree = map_degree(map);
    } else if (auto* a = std::get_if<AdditiveMap>(&map); a && constant_order(a->sigma).transcendental) {
        v.basis = "additive map with transcendental f'(0): Per_n = 1 + (deg sigma)^n";
        rational_degree = a->sigma.degree();
    } else if (auto* s = std::get_if<SubadditiveMap>(&map); s && constant_order(s->sigma).transcendental) {
        v.basis = "subadditive map with transcendental f'(0): Per_n = 1 + (deg sigma)^n";
        rational_degree = s->sigma.degree();
    }

    if (rational_degree) {
        v.kind = VerdictKind::rational;
        v.closed_form = two_factor_form(*rational_degree);
        v.series_verified =
            series_of_rational(v.closed_form->numerator, v.closed_form->denominator, params.series_terms) == v.series;
        if (!v.series_verified) fail(Errc::mismatch, "rational closed form disagrees with the count series");
        return v;
    }

    v.kind = VerdictKind::transcendental_evidence;
    const bool ga = std::holds_alternative<AdditiveMap>(map) || std::holds_alternative<SubadditiveMap>(map);
    v.basis = ga ? "separable additive family with algebraic f'(0): zeta transcendental"
                 : "separable power, Chebyshev or Lattes map: zeta transcendental";
    v.certificate = certificate_build(map, params.certificate);
    return v;
}

}  // namespace dynzeta
