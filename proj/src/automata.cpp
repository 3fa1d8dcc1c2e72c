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

#include "dynzeta/automata.hpp"

#include <cctype>
#include <deque>
#include <map>

#include "dynzeta/error.hpp"

namespace dynzeta {

Dfao::Dfao(unsigned base, std::vector<std::vector<unsigned>> delta, std::vector<u64> output,
           unsigned initial)
    : base_(base), delta_(std::move(delta)), output_(std::move(output)), initial_(initial) {
    require(base_ >= 2, Errc::invalid_argument, "dfao base must be at least 2");
    require(!output_.empty() && delta_.size() == output_.size(), Errc::invalid_argument,
            "dfao needs one transition row and one output per state");
    require(initial_ < output_.size(), Errc::invalid_argument, "dfao initial state out of range");
    for (const auto& row : delta_) {
        require(row.size() == base_, Errc::invalid_argument, "dfao transition row must cover every digit");
        for (unsigned s : row)
            require(s < output_.size(), Errc::invalid_argument, "dfao transition target out of range");
    }
    std::vector<bool> seen(output_.size(), false);
    std::deque<unsigned> queue{initial_};
    seen[initial_] = true;
    while (!queue.empty()) {
        unsigned s = queue.front();
        queue.pop_front();
        require(output_[delta_[s][0]] == output_[s], Errc::invalid_argument,
                "dfao output changes when a zero digit is appended");
        for (unsigned t : delta_[s])
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
    }
}

u64 Dfao::eval(u64 n) const {
    unsigned s = initial_;
    while (n > 0) {
        s = delta_[s][n % base_];
        n /= base_;
    }
    return output_[s];
}

Dfao Dfao::residue(unsigned base, unsigned m) {
    require(m >= 1, Errc::invalid_argument, "modulus must be positive");
    // State (r, w): value so far mod m and weight of the next digit.
    std::vector<std::vector<unsigned>> delta(std::size_t(m) * m, std::vector<unsigned>(base));
    std::vector<u64> out(std::size_t(m) * m);
    for (unsigned r = 0; r < m; ++r)
        for (unsigned w = 0; w < m; ++w) {
            unsigned s = r * m + w;
            out[s] = r;
            for (unsigned d = 0; d < base; ++d)
                delta[s][d] = unsigned((r + u64(d) * w) % m) * m + unsigned(u64(w) * base % m);
        }
    return Dfao(base, std::move(delta), std::move(out), 1 % m);
}

Dfao Dfao::power_indicator(unsigned base) {
    // 0: only zeros read, 1: exactly one digit 1, 2: anything else.
    std::vector<std::vector<unsigned>> delta(3, std::vector<unsigned>(base, 2));
    delta[0][0] = 0;
    delta[0][1] = 1;
    delta[1][0] = 1;
    return Dfao(base, std::move(delta), {0, 1, 0}, 0);
}

u64 dfao_eval(const Dfao& a, u64 n) { return a.eval(n); }

namespace {

u64 checked_span(unsigned k, unsigned depth, std::size_t prefix) {
    u64 span = prefix;
    for (unsigned e = 0; e < depth; ++e) {
        require(span <= (u64(1) << 40) / k, Errc::scale_exceeded, "kernel exploration too large");
        span *= k;
    }
    return span;
}

}  // namespace

KernelReport kernel_explore(const SequenceOracle& seq, unsigned k, unsigned depth, std::size_t prefix) {
    require(k >= 2, Errc::invalid_argument, "kernel base must be at least 2");
    require(prefix >= 1, Errc::invalid_argument, "kernel prefix must be positive");
    checked_span(k, depth, prefix);

    KernelReport rep;
    rep.base = k;
    rep.depth = depth;
    rep.prefix = prefix;
    std::map<std::vector<u64>, std::size_t> classes;
    u64 ke = 1;
    for (unsigned e = 0; e <= depth; ++e, ke *= k) {
        for (u64 r = 0; r < ke; ++r) {
            std::vector<u64> key(prefix);
            for (std::size_t n = 0; n < prefix; ++n) key[n] = seq(ke * n + r);
            if (classes.emplace(std::move(key), classes.size()).second) rep.witnesses.push_back({e, r});
        }
        rep.classes_per_depth.push_back(classes.size());
    }
    const auto& c = rep.classes_per_depth;
    for (unsigned e = 0; e + 2 <= depth; ++e)
        if (c[e] == c[e + 1] && c[e + 1] == c[e + 2]) {
            rep.closed_at = e;
            rep.classification = KernelClass::closed;
            break;
        }
    return rep;
}

KernelReport kernel_explore(std::span<const u64> seq, unsigned k, unsigned depth, std::size_t prefix) {
    require(k >= 2, Errc::invalid_argument, "kernel base must be at least 2");
    u64 need = checked_span(k, depth, prefix);
    require(seq.size() >= need, Errc::invalid_argument, "sequence prefix too short for kernel depth");
    return kernel_explore([seq](u64 n) { return seq[n]; }, k, depth, prefix);
}

// ---- power series over F_p ----

namespace {

using Series = std::vector<u64>;

Series series_mul(const Series& a, const Series& b, std::size_t prec, u64 p) {
    Series r(std::min(prec, a.empty() || b.empty() ? 0 : a.size() + b.size() - 1), 0);
    for (std::size_t i = 0; i < a.size() && i < r.size(); ++i) {
        if (a[i] == 0) continue;
        std::size_t lim = std::min(b.size(), r.size() - i);
        for (std::size_t j = 0; j < lim; ++j) r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
    }
    return r;
}

Series series_add(Series a, const Series& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = addmod(a[i], b[i], p);
    return a;
}

// a / b mod t^prec for b with nonzero constant term.
Series series_div(const Series& a, const Series& b, std::size_t prec, u64 p) {
    u64 inv0 = invmod(b[0], p);
    Series q(prec, 0);
    for (std::size_t i = 0; i < prec; ++i) {
        u64 acc = i < a.size() ? a[i] : 0;
        for (std::size_t j = 1; j <= i && j < b.size(); ++j)
            acc = submod(acc, mulmod(b[j], q[i - j], p), p);
        q[i] = mulmod(acc, inv0, p);
    }
    return q;
}

Series horner(const std::vector<Series>& c, std::span<const u64> y, std::size_t prec, u64 p) {
    if (c.empty()) return Series(prec, 0);
    Series ys(y.begin(), y.begin() + std::min(y.size(), prec));
    Series r = c.back();
    if (r.size() > prec) r.resize(prec);
    for (std::size_t j = c.size() - 1; j-- > 0;) {
        r = series_add(series_mul(r, ys, prec, p), c[j], p);
        if (r.size() > prec) r.resize(prec);
    }
    r.resize(prec, 0);
    return r;
}

std::optional<std::size_t> valuation(const Series& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != 0) return i;
    return std::nullopt;
}

// Recursive-descent parser over bivariate polynomials.
class PolyParser {
public:
    PolyParser(const std::string& s, u64 p) : s_(s), p_(p) {}

    BivariatePoly run() {
        auto r = expr();
        skip();
        if (pos_ != s_.size()) bad();
        return r;
    }

private:
    const std::string& s_;
    u64 p_;
    std::size_t pos_ = 0;

    [[noreturn]] void bad() const {
        fail(Errc::invalid_argument, "cannot parse polynomial at position " + std::to_string(pos_) + ": " + s_);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    u64 number() {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) bad();
        u64 v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            require(v < (u64(1) << 58), Errc::invalid_argument, "polynomial literal too large");
            v = v * 10 + u64(s_[pos_++] - '0');
        }
        return v;
    }
    BivariatePoly constant(u64 c) const {
        BivariatePoly r{p_, {{c % p_}}};
        return r;
    }
    BivariatePoly add(BivariatePoly a, const BivariatePoly& b, bool negate) const {
        if (a.coeffs.size() < b.coeffs.size()) a.coeffs.resize(b.coeffs.size());
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            auto& dst = a.coeffs[j];
            if (dst.size() < b.coeffs[j].size()) dst.resize(b.coeffs[j].size(), 0);
            for (std::size_t i = 0; i < b.coeffs[j].size(); ++i)
                dst[i] = negate ? submod(dst[i], b.coeffs[j][i], p_) : addmod(dst[i], b.coeffs[j][i], p_);
        }
        return a;
    }
    BivariatePoly mul(const BivariatePoly& a, const BivariatePoly& b) const {
        BivariatePoly r{p_, std::vector<Series>(a.coeffs.size() + b.coeffs.size() - 1)};
        for (std::size_t i = 0; i < a.coeffs.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
                std::size_t n = a.coeffs[i].size() + b.coeffs[j].size();
                r.coeffs[i + j] = series_add(r.coeffs[i + j], series_mul(a.coeffs[i], b.coeffs[j], n, p_), p_);
            }
        return r;
    }
    BivariatePoly expr() {
        bool neg = false;
        if (peek() == '-' || peek() == '+') neg = s_[pos_++] == '-';
        BivariatePoly r = add(constant(0), term(), neg);
        while (peek() == '+' || peek() == '-') {
            neg = s_[pos_++] == '-';
            r = add(std::move(r), term(), neg);
        }
        return r;
    }
    BivariatePoly term() {
        BivariatePoly r = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                r = mul(r, factor());
            } else if (c == '(' || c == 't' || c == 'y' || std::isdigit(static_cast<unsigned char>(c))) {
                r = mul(r, factor());
            } else {
                return r;
            }
        }
    }
    BivariatePoly factor() {
        BivariatePoly base = atom();
        if (peek() != '^') return base;
        ++pos_;
        u64 e = number();
        require(e <= 1u << 16, Errc::invalid_argument, "polynomial exponent too large");
        BivariatePoly r = constant(1);
        for (u64 i = 0; i < e; ++i) r = mul(r, base);
        return r;
    }
    BivariatePoly atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            BivariatePoly r = expr();
            if (peek() != ')') bad();
            ++pos_;
            return r;
        }
        if (c == 't') {
            ++pos_;
            return BivariatePoly{p_, {{0, 1 % p_}}};
        }
        if (c == 'y') {
            ++pos_;
            return BivariatePoly{p_, {{}, {1 % p_}}};
        }
        return constant(number());
    }
};

void trim(BivariatePoly& P) {
    for (auto& c : P.coeffs)
        while (!c.empty() && c.back() == 0) c.pop_back();
    while (!P.coeffs.empty() && P.coeffs.back().empty()) P.coeffs.pop_back();
}

}  // namespace

BivariatePoly BivariatePoly::parse(const std::string& text, u64 p) {
    require(is_prime(p), Errc::not_prime, "characteristic must be prime");
    BivariatePoly r = PolyParser(text, p).run();
    trim(r);
    return r;
}

unsigned BivariatePoly::y_degree() const {
    for (std::size_t j = coeffs.size(); j-- > 0;)
        for (u64 c : coeffs[j])
            if (c % p != 0) return unsigned(j);
    return 0;
}

std::vector<u64> BivariatePoly::eval(std::span<const u64> y, std::size_t prec) const {
    return horner(coeffs, y, prec, p);
}

std::vector<u64> BivariatePoly::eval_dy(std::span<const u64> y, std::size_t prec) const {
    std::vector<Series> d;
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
        Series c = coeffs[j];
        for (auto& x : c) x = mulmod(x % p, j % p, p);
        d.push_back(std::move(c));
    }
    return horner(d, y, prec, p);
}

std::vector<u64> christol_series(const BivariatePoly& P, std::span<const u64> prefix, std::size_t n) {
    require(is_prime(P.p), Errc::not_prime, "characteristic must be prime");
    require(P.y_degree() >= 1, Errc::invalid_argument, "polynomial must involve y");
    require(!prefix.empty(), Errc::invalid_argument, "prefix must be nonempty");
    const u64 p = P.p;
    Series y(prefix.begin(), prefix.end());
    for (auto& c : y) c %= p;
    const std::size_t s1 = y.size();

    if (valuation(P.eval(y, s1))) fail(Errc::not_a_root, "prefix is not a root modulo t^(s+1)");
    auto v_opt = valuation(P.eval_dy(y, s1));
    if (!v_opt || s1 <= 2 * *v_opt)
        fail(Errc::singular_root, "derivative valuation too large for the supplied prefix");
    const std::size_t v = *v_opt;

    // P(y) = 0 mod t^target pins y modulo t^n.
    const std::size_t target = n + v;
    std::size_t a = s1;
    while (a < target) {
        std::size_t w = std::min(target, 2 * (a - v));
        Series e = P.eval(y, w);
        Series d = P.eval_dy(y, w);
        auto ve = valuation(e);
        if (ve && *ve < a) fail(Errc::internal, "newton step lost precision");
        Series num(e.begin() + std::ptrdiff_t(a), e.end());
        Series den(d.begin() + std::ptrdiff_t(v), d.end());
        Series q = series_div(num, den, w - a, p);
        if (y.size() < w - v) y.resize(w - v, 0);
        for (std::size_t i = 0; i < q.size(); ++i) y[a - v + i] = submod(y[a - v + i], q[i], p);
        a = w;
    }
    if (valuation(P.eval(y, std::max(target, s1))))
        fail(Errc::internal, "series root does not vanish to requested precision");
    y.resize(std::max(n, y.size()), 0);
    for (std::size_t i = 0; i < s1 && i < y.size(); ++i)
        if (y[i] != prefix[i] % p) fail(Errc::not_a_root, "no root extends the supplied prefix");
    y.resize(n);
    return y;
}

std::optional<Periodicity> eventual_period_detect(std::span<const u64> prefix) {
    const std::size_t len = prefix.size();
    require(len >= 16, Errc::invalid_argument, "periodicity detection needs at least 16 terms");
    // The repeating part must span three periods and at least half the
    // prefix; a short periodic tail alone is not evidence.
    for (std::size_t period = 1; 3 * period <= len; ++period) {
        std::size_t s = len - period;
        while (s > 0 && prefix[s - 1] == prefix[s - 1 + period]) --s;
        if (len - s >= 3 * period && 2 * s <= len) return Periodicity{s, period};
    }
    return std::nullopt;
}

std::optional<Dfao> valuation_dfao(u64 p, u64 c, u64 r, const std::vector<u64>& table, u64 undefined,
                                   std::size_t max_states) {
    require(p >= 2 && c >= 1 && !table.empty(), Errc::invalid_argument, "bad valuation automaton parameters");
    const u64 d = table.size();
    // Pending states (carry, zeros mod d) until a nonzero digit of c n + r
    // appears; then one absorbing state per residue.
    std::map<std::pair<u64, u64>, unsigned> ids;
    std::vector<std::pair<u64, u64>> keys;
    const unsigned found0 = 0;  // found states occupy ids 0..d-1
    auto id_of = [&](u64 k, u64 z) -> std::optional<unsigned> {
        auto [it, fresh] = ids.emplace(std::make_pair(k, z), unsigned(d + keys.size()));
        if (fresh) keys.emplace_back(k, z);
        if (d + keys.size() > max_states) return std::nullopt;
        return it->second;
    };
    std::vector<std::vector<unsigned>> delta(d, std::vector<unsigned>(p));
    std::vector<u64> out(table.begin(), table.end());
    for (u64 z = 0; z < d; ++z)
        for (u64 x = 0; x < p; ++x) delta[z][x] = unsigned(found0 + z);
    auto start = id_of(r, 0);
    if (!start) return std::nullopt;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto [k, z] = keys[i];
        std::vector<unsigned> row(p);
        for (u64 x = 0; x < p; ++x) {
            require(x == 0 || c <= (~u64(0) - k) / x, Errc::scale_exceeded, "automaton carry overflow");
            const u64 total = c * x + k;
            if (total % p != 0) {
                row[x] = unsigned(found0 + z);
            } else {
                auto nid = id_of(total / p, (z + 1) % d);
                if (!nid) return std::nullopt;
                row[x] = *nid;
            }
        }
        delta.push_back(std::move(row));
        // Output after flushing the carry with zero digits.
        out.push_back(k == 0 ? undefined : table[(z + v_p(static_cast<i64>(k), p)) % d]);
    }
    return Dfao(static_cast<unsigned>(p), std::move(delta), std::move(out), *start);
}

bool ValuationSequence::witness_ok() const {
    if (residues.size() != values.size()) return false;
    for (std::size_t n = 0; n < values.size(); ++n) {
        if (residues[n] == undefined) continue;
        if (residues[n] >= table.size() || table[residues[n]] != values[n]) return false;
    }
    return true;
}

ValuationSequence valuation_power_sequence(u64 a, u64 p, u64 ell, i64 alpha, i64 beta, std::size_t length) {
    require(is_prime(p) && is_prime(ell) && p != ell, Errc::hypothesis_violated,
            "p and ell must be distinct primes");
    require(a % ell != 0 && a % ell != 1, Errc::hypothesis_violated, "a must be a unit other than 1 mod ell");
    require(alpha != 0, Errc::hypothesis_violated, "alpha must be nonzero");
    require(beta == 0 || v_p(alpha, p) <= v_p(beta, p), Errc::hypothesis_violated,
            "v_p(alpha) must not exceed v_p(beta)");

    ValuationSequence out;
    out.modulus = ell;
    out.residue_modulus = mult_order(a % ell, ell);
    for (u64 r = 0; r < out.residue_modulus; ++r) out.table.push_back(powmod(a % ell, r, ell));
    out.values.resize(length);
    out.residues.resize(length);
    for (std::size_t n = 0; n < length; ++n) {
        __int128 x = __int128(alpha) * __int128(n) + beta;
        require(x > -(__int128(1) << 62) && x < (__int128(1) << 62), Errc::scale_exceeded,
                "progression term out of range");
        if (x == 0) {
            out.values[n] = 0;
            out.residues[n] = ValuationSequence::undefined;
            continue;
        }
        unsigned v = v_p(i64(x), p);
        out.residues[n] = v % out.residue_modulus;
        out.values[n] = out.table[out.residues[n]];
    }
    return out;
}

ValuationSequence exponent_tower_sequence(u64 a, u64 p, u64 ell, std::size_t length) {
    require(a >= 1, Errc::hypothesis_violated, "a must be positive");
    require(is_prime(p) && is_prime(ell), Errc::hypothesis_violated, "p and ell must be prime");
    require(a <= 64, Errc::hypothesis_violated, "a too large");
    mpz_class bound = mpz_pow(p, static_cast<unsigned long>(a * mpz_to_u64(mpz_pow(p, a))));
    require(mpz_from_u64(ell) > bound, Errc::hypothesis_violated, "ell must exceed p^(a p^a)");
    if (p == 2)
        require(ell % 8 == 7, Errc::hypothesis_violated, "for p = 2, ell must be 7 mod 8");
    else
        require((ell - 1) % p != 0, Errc::hypothesis_violated, "p must not divide ell - 1");

    // d = ord(p^a); the exponent p^v only matters mod d, and p^v mod d has
    // period e = ord_d(p) since gcd(p, d) = 1.
    const u64 pa = powmod(p, a, ell);
    const u64 d = mult_order(pa, ell);
    require(d % p != 0, Errc::internal, "order of p^a shares a factor with p");
    const u64 e = d == 1 ? 1 : mult_order(p % d, d);

    ValuationSequence out;
    out.modulus = ell;
    out.residue_modulus = e;
    for (u64 r = 0; r < e; ++r) out.table.push_back(powmod(pa, powmod(p, r, d), ell));
    out.values.resize(length);
    out.residues.resize(length);
    for (std::size_t n = 0; n < length; ++n) {
        if (n == 0) {
            out.values[n] = 0;
            out.residues[n] = ValuationSequence::undefined;
            continue;
        }
        unsigned v = v_p(i64(n), p);
        out.residues[n] = v % e;
        out.values[n] = out.table[out.residues[n]];
    }
    return out;
}

}  // namespace dynzeta
