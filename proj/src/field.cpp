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

#include "dynzeta/field.hpp"

#include <algorithm>
#include <sstream>

#include "dynzeta/error.hpp"

namespace dynzeta {

namespace {

// x^e mod f over a prime field; f monic.
Poly powmod_poly(const Poly& base, u64 e, const Poly& f) {
    Poly r = Poly::constant(FieldElem::one(f.ctx()));
    Poly b = base % f;
    while (e) {
        if (e & 1) r = (r * b) % f;
        b = (b * b) % f;
        e >>= 1;
    }
    return r;
}

bool rabin_irreducible(const Poly& f, u64 p) {
    const auto k = static_cast<unsigned>(f.degree());
    const Poly x = Poly::x(f.ctx());
    // frob[i] = x^{p^i} mod f
    std::vector<Poly> frob{x % f};
    for (unsigned i = 1; i <= k; ++i) frob.push_back(powmod_poly(frob.back(), p, f));
    if (!(frob[k] == x % f)) return false;
    for (auto [r, e] : factor(k)) {
        (void)e;
        if (gcd(frob[k / r] - x, f).degree() != 0) return false;
    }
    return true;
}

}  // namespace

FieldRef FieldCtx::make(u64 p, unsigned k, std::optional<u64> seed) {
    require(is_prime(p), Errc::not_prime, "characteristic must be prime");
    require(p < (u64(1) << 62), Errc::invalid_argument, "characteristic must be below 2^62");
    require(k >= 1 && k <= max_degree, Errc::scale_exceeded, "extension degree must lie in [1, 12]");

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->k_ = 1;
    ctx->q_ = mpz_from_u64(p);
    if (k == 1) return ctx;

    FieldRef base = ctx;
    auto ext = std::shared_ptr<FieldCtx>(new FieldCtx());
    ext->p_ = p;
    ext->k_ = k;
    ext->base_ = base;
    ext->q_ = mpz_pow(p, k);

    // Candidates in the order (c_{k-1}, ..., c_0), as a base-p counter.
    std::vector<u64> digits(k, 0);  // digits[0] = c_{k-1}
    u64 wanted = seed.value_or(0);
    u64 found = 0;
    constexpr u64 budget = 2000000;
    for (u64 step = 0; step < budget; ++step) {
        if (digits[k - 1] != 0) {
            std::vector<u64> flat(k + 1);
            for (unsigned i = 0; i < k; ++i) flat[i] = digits[k - 1 - i];
            flat[k] = 1;
            Poly f(base, flat);
            if (rabin_irreducible(f, p)) {
                if (found == wanted) {
                    ext->modulus_ = flat;
                    return ext;
                }
                ++found;
            }
        }
        unsigned pos = k;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < p) break;
            digits[pos] = 0;
            if (pos == 0) fail(Errc::no_irreducible_found, "candidate space exhausted");
        }
    }
    fail(Errc::no_irreducible_found, "irreducible search budget exhausted");
}

FieldRef FieldCtx::make_rational(u64 p) {
    auto base = make(p, 1);
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->k_ = 1;
    ctx->flavor_ = Flavor::rational_function;
    ctx->base_ = base;
    return ctx;
}

FieldRef FieldCtx::prime_field() const { return base_ ? base_ : shared_from_this(); }

void FieldCtx::add(const u64* a, const u64* b, u64* out) const noexcept {
    for (unsigned i = 0; i < k_; ++i) out[i] = addmod(a[i], b[i], p_);
}

void FieldCtx::sub(const u64* a, const u64* b, u64* out) const noexcept {
    for (unsigned i = 0; i < k_; ++i) out[i] = submod(a[i], b[i], p_);
}

void FieldCtx::neg(const u64* a, u64* out) const noexcept {
    for (unsigned i = 0; i < k_; ++i) out[i] = a[i] ? p_ - a[i] : 0;
}

void FieldCtx::mul(const u64* a, const u64* b, u64* out) const noexcept {
    if (k_ == 1) {
        out[0] = mulmod(a[0], b[0], p_);
        return;
    }
    u64 t[2 * max_degree] = {};
    for (unsigned i = 0; i < k_; ++i) {
        if (!a[i]) continue;
        for (unsigned j = 0; j < k_; ++j) t[i + j] = addmod(t[i + j], mulmod(a[i], b[j], p_), p_);
    }
    for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
        u64 c = t[i];
        if (!c) continue;
        for (unsigned j = 0; j < k_; ++j) t[i - k_ + j] = submod(t[i - k_ + j], mulmod(c, modulus_[j], p_), p_);
        t[i] = 0;
    }
    std::copy(t, t + k_, out);
}

void FieldCtx::inv(const u64* a, u64* out) const {
    require(!is_zero(a), Errc::zero_element, "inverse of zero");
    if (k_ == 1) {
        out[0] = invmod(a[0], p_);
        return;
    }
    // a^(q-2)
    mpz_class e = q_ - 2;
    u64 r[max_degree] = {1};
    u64 b[max_degree];
    std::copy(a, a + k_, b);
    const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) mul(r, b, r);
        mul(b, b, b);
    }
    std::copy(r, r + k_, out);
}

bool FieldCtx::is_zero(const u64* a) const noexcept {
    return std::all_of(a, a + k_, [](u64 c) { return c == 0; });
}

bool FieldCtx::is_one(const u64* a) const noexcept {
    return a[0] == 1 && std::all_of(a + 1, a + k_, [](u64 c) { return c == 0; });
}

std::string FieldCtx::describe() const {
    std::ostringstream os;
    if (flavor_ == Flavor::rational_function) {
        os << "F_" << p_ << "(u)";
    } else if (k_ == 1) {
        os << "F_" << p_;
    } else {
        os << "F_" << p_ << "^" << k_ << " mod " << Poly(prime_field(), modulus_).to_string("a");
    }
    return os.str();
}

// ---- Poly ----

Poly::Poly(FieldRef ctx, std::vector<u64> flat) : ctx_(std::move(ctx)), c_(std::move(flat)) {
    require(ctx_->is_finite(), Errc::invalid_argument, "polynomials need a finite field");
    for (auto& w : c_) w %= ctx_->p();
    trim();
}

Poly Poly::from_ints(FieldRef ctx, const std::vector<i64>& ascending) {
    const unsigned k = ctx->k();
    std::vector<u64> flat(ascending.size() * k, 0);
    for (std::size_t i = 0; i < ascending.size(); ++i) flat[i * k] = FieldElem::from_int(ctx, ascending[i]).words()[0];
    return Poly(std::move(ctx), std::move(flat));
}

Poly Poly::constant(const FieldElem& c) { return monomial(c, 0); }

Poly Poly::monomial(const FieldElem& c, std::size_t e) {
    const unsigned k = c.ctx()->k();
    std::vector<u64> flat((e + 1) * k, 0);
    std::copy(c.words().begin(), c.words().end(), flat.begin() + e * k);
    return Poly(c.ctx(), std::move(flat));
}

Poly Poly::x(FieldRef ctx) { return monomial(FieldElem::one(ctx), 1); }

void Poly::trim() {
    if (!ctx_) return;
    const unsigned k = ctx_->k();
    while (!c_.empty() && ctx_->is_zero(c_.data() + c_.size() - k)) c_.resize(c_.size() - k);
}

bool Poly::is_monic() const { return !is_zero() && ctx_->is_one(raw(size() - 1)); }

FieldElem Poly::coeff(std::size_t i) const {
    if (i >= size()) return FieldElem::zero(ctx_);
    return FieldElem::from_words(ctx_, std::vector<u64>(raw(i), raw(i) + ctx_->k()));
}

FieldElem Poly::lead() const {
    require(!is_zero(), Errc::zero_polynomial, "leading coefficient of zero");
    return coeff(size() - 1);
}

void Poly::set_coeff(std::size_t i, const FieldElem& c) {
    const unsigned k = ctx_->k();
    if (i >= size()) c_.resize((i + 1) * k, 0);
    std::copy(c.words().begin(), c.words().end(), c_.begin() + i * k);
    trim();
}

Poly Poly::operator+(const Poly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    const Poly& big = c_.size() >= o.c_.size() ? *this : o;
    const Poly& small = c_.size() >= o.c_.size() ? o : *this;
    Poly r = big;
    const u64 p = ctx_->p();
    for (std::size_t i = 0; i < small.c_.size(); ++i) r.c_[i] = addmod(r.c_[i], small.c_[i], p);
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    const u64 p = ctx_ ? ctx_->p() : 0;
    for (auto& w : r.c_) w = w ? p - w : 0;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(ctx_ ? ctx_ : o.ctx_);
    const unsigned k = ctx_->k();
    const u64 p = ctx_->p();
    const std::size_t n = size(), m = o.size();
    if (k == 1 && p < (u64(1) << 32)) {
        // Delay reductions while the accumulators cannot overflow.
        const u64 sq = (p - 1) * (p - 1);
        const u64 room = sq == 0 ? ~u64(0) : (~u64(0) - p) / sq;
        std::vector<u64> acc(n + m - 1, 0);
        u64 pending = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const u64 a = c_[i];
            if (a) {
                u64* dst = acc.data() + i;
                const u64* src = o.c_.data();
                for (std::size_t j = 0; j < m; ++j) dst[j] += a * src[j];
                ++pending;
            }
            if (pending == room) {
                for (auto& w : acc) w %= p;
                pending = 0;
            }
        }
        for (auto& w : acc) w %= p;
        Poly r(ctx_);
        r.c_ = std::move(acc);
        r.trim();
        return r;
    }
    std::vector<u64> acc((n + m - 1) * k, 0);
    std::vector<u64> t(k);
    for (std::size_t i = 0; i < n; ++i) {
        if (ctx_->is_zero(raw(i))) continue;
        for (std::size_t j = 0; j < m; ++j) {
            ctx_->mul(raw(i), o.raw(j), t.data());
            ctx_->add(acc.data() + (i + j) * k, t.data(), acc.data() + (i + j) * k);
        }
    }
    Poly r(ctx_);
    r.c_ = std::move(acc);
    r.trim();
    return r;
}

Poly Poly::operator*(const FieldElem& c) const {
    if (c.is_zero() || is_zero()) return Poly(ctx_);
    const unsigned k = ctx_->k();
    Poly r = *this;
    for (std::size_t i = 0; i < size(); ++i) ctx_->mul(raw(i), c.words().data(), r.c_.data() + i * k);
    r.trim();
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& b) const {
    require(!b.is_zero(), Errc::division_by_zero_poly, "division by the zero polynomial");
    if (degree() < b.degree()) return {Poly(ctx_), *this};
    const unsigned k = ctx_->k();
    const u64 p = ctx_->p();
    const std::size_t db = b.size() - 1;
    const std::size_t nq = size() - db;
    Poly r = *this;
    std::vector<u64> q(nq * k, 0);
    if (k == 1) {
        const u64 li = invmod(b.c_[db], p);
        const bool small = p < (u64(1) << 32);
        for (std::size_t i = nq; i-- > 0;) {
            u64 lc = r.c_[i + db];
            if (!lc) continue;
            u64 qc = li == 1 ? lc : mulmod(lc, li, p);
            q[i] = qc;
            u64* dst = r.c_.data() + i;
            const u64* src = b.c_.data();
            const u64 nqc = p - qc;
            if (small) {
                for (std::size_t j = 0; j < db; ++j) dst[j] = (dst[j] + nqc * src[j]) % p;
            } else {
                for (std::size_t j = 0; j < db; ++j) dst[j] = addmod(dst[j], mulmod(nqc, src[j], p), p);
            }
            dst[db] = 0;
        }
    } else {
        std::vector<u64> li(k), t(k), qc(k);
        ctx_->inv(b.raw(db), li.data());
        for (std::size_t i = nq; i-- > 0;) {
            u64* lc = r.c_.data() + (i + db) * k;
            if (ctx_->is_zero(lc)) continue;
            ctx_->mul(lc, li.data(), qc.data());
            std::copy(qc.begin(), qc.end(), q.begin() + i * k);
            for (std::size_t j = 0; j <= db; ++j) {
                ctx_->mul(qc.data(), b.raw(j), t.data());
                u64* d = r.c_.data() + (i + j) * k;
                ctx_->sub(d, t.data(), d);
            }
        }
    }
    r.c_.resize(std::min(r.c_.size(), db * k));
    r.trim();
    Poly qp(ctx_);
    qp.c_ = std::move(q);
    qp.trim();
    return {qp, r};
}

Poly Poly::monic() const {
    if (is_zero() || is_monic()) return *this;
    return *this * lead().inv();
}

Poly Poly::derivative() const {
    if (size() <= 1) return Poly(ctx_);
    const unsigned k = ctx_->k();
    const u64 p = ctx_->p();
    std::vector<u64> d((size() - 1) * k, 0);
    for (std::size_t i = 1; i < size(); ++i) {
        const u64 f = i % p;
        if (!f) continue;
        for (unsigned j = 0; j < k; ++j) d[(i - 1) * k + j] = mulmod(c_[i * k + j], f, p);
    }
    Poly r(ctx_);
    r.c_ = std::move(d);
    r.trim();
    return r;
}

Poly Poly::pow(u64 e) const {
    Poly r = Poly::constant(FieldElem::one(ctx_));
    Poly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

FieldElem Poly::eval(const FieldElem& x) const {
    FieldElem acc = FieldElem::zero(ctx_);
    for (std::size_t i = size(); i-- > 0;) acc = acc * x + coeff(i);
    return acc;
}

Poly Poly::inflate(std::size_t e) const {
    if (is_zero() || e == 1) return *this;
    const unsigned k = ctx_->k();
    std::vector<u64> flat(((size() - 1) * e + 1) * k, 0);
    for (std::size_t i = 0; i < size(); ++i) std::copy(raw(i), raw(i) + k, flat.begin() + i * e * k);
    Poly r(ctx_);
    r.c_ = std::move(flat);
    return r;
}

Poly Poly::compose(const Poly& g) const {
    Poly acc(ctx_);
    for (std::size_t i = size(); i-- > 0;) acc = acc * g + Poly::constant(coeff(i));
    return acc;
}

std::string Poly::to_string(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = size(); i-- > 0;) {
        FieldElem c = coeff(i);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = c.to_string();
        bool compound = cs.find_first_of("+a/") != std::string::npos;
        if (i == 0) {
            os << cs;
            continue;
        }
        if (!c.is_one()) os << (compound ? "(" + cs + ")" : cs);
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a.monic(), y = b.monic();
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = r.monic();
    }
    return x;
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.ctx());
    return ((a / gcd(a, b)) * b).monic();
}

// ---- FieldElem ----

FieldElem FieldElem::zero(const FieldRef& ctx) {
    FieldElem e;
    e.ctx_ = ctx;
    if (ctx->is_finite()) {
        e.v_.assign(ctx->k(), 0);
    } else {
        e.num_ = Poly(ctx->prime_field());
        e.den_ = Poly::from_ints(ctx->prime_field(), {1});
    }
    return e;
}

FieldElem FieldElem::one(const FieldRef& ctx) { return from_int(ctx, 1); }

FieldElem FieldElem::from_int(const FieldRef& ctx, i64 v) {
    const u64 p = ctx->p();
    u64 r = v >= 0 ? u64(v) % p : (p - (u64(0) - u64(v)) % p) % p;
    FieldElem e = zero(ctx);
    if (ctx->is_finite()) {
        e.v_[0] = r;
    } else if (r) {
        e.num_ = Poly(ctx->prime_field(), {r});
    }
    return e;
}

FieldElem FieldElem::from_words(const FieldRef& ctx, std::vector<u64> words) {
    require(ctx->is_finite(), Errc::invalid_argument, "packed words need a finite field");
    words.resize(ctx->k(), 0);
    for (auto& w : words) w %= ctx->p();
    FieldElem e;
    e.ctx_ = ctx;
    e.v_ = std::move(words);
    return e;
}

FieldElem FieldElem::generator(const FieldRef& ctx) {
    if (!ctx->is_finite()) return fraction(ctx, Poly::x(ctx->prime_field()), Poly::from_ints(ctx->prime_field(), {1}));
    FieldElem e = zero(ctx);
    if (ctx->k() == 1) {
        fail(Errc::invalid_argument, "prime field has no adjoined generator");
    }
    e.v_[1] = 1;
    return e;
}

FieldElem FieldElem::fraction(const FieldRef& ctx, Poly num, Poly den) {
    require(!ctx->is_finite(), Errc::invalid_argument, "fractions need F_p(u)");
    require(!den.is_zero(), Errc::zero_element, "zero denominator");
    FieldElem e;
    e.ctx_ = ctx;
    if (num.is_zero()) {
        e.num_ = num;
        e.den_ = Poly::from_ints(ctx->prime_field(), {1});
        return e;
    }
    Poly g = gcd(num, den);
    num = num / g;
    den = den / g;
    FieldElem li = den.lead().inv();
    e.num_ = num * li;
    e.den_ = den * li;
    return e;
}

bool FieldElem::is_zero() const noexcept {
    if (ctx_->is_finite()) return ctx_->is_zero(v_.data());
    return num_.is_zero();
}

bool FieldElem::is_one() const noexcept {
    if (ctx_->is_finite()) return ctx_->is_one(v_.data());
    return num_.degree() == 0 && den_.degree() == 0 && num_.flat()[0] == 1;
}

bool FieldElem::is_constant() const noexcept {
    if (ctx_->is_finite()) return std::all_of(v_.begin() + 1, v_.end(), [](u64 c) { return c == 0; });
    return num_.degree() <= 0 && den_.degree() == 0;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    if (ctx_->is_finite()) {
        FieldElem r = *this;
        ctx_->add(v_.data(), o.v_.data(), r.v_.data());
        return r;
    }
    return fraction(ctx_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FieldElem FieldElem::operator-() const {
    if (ctx_->is_finite()) {
        FieldElem r = *this;
        ctx_->neg(v_.data(), r.v_.data());
        return r;
    }
    FieldElem r = *this;
    r.num_ = -num_;
    return r;
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
    if (ctx_->is_finite()) {
        FieldElem r = *this;
        ctx_->mul(v_.data(), o.v_.data(), r.v_.data());
        return r;
    }
    return fraction(ctx_, num_ * o.num_, den_ * o.den_);
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inv(); }

bool FieldElem::operator==(const FieldElem& o) const {
    if (ctx_->is_finite()) return v_ == o.v_;
    return num_ == o.num_ && den_ == o.den_;
}

FieldElem FieldElem::inv() const {
    require(!is_zero(), Errc::zero_element, "inverse of zero");
    if (ctx_->is_finite()) {
        FieldElem r = *this;
        ctx_->inv(v_.data(), r.v_.data());
        return r;
    }
    return fraction(ctx_, den_, num_);
}

FieldElem FieldElem::pow(const mpz_class& e) const {
    require(e >= 0, Errc::invalid_argument, "negative exponent");
    FieldElem r = one(ctx_);
    FieldElem b = *this;
    const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) r = r * b;
        if (i + 1 < bits) b = b * b;
    }
    return r;
}

FieldElem FieldElem::frobenius() const {
    if (ctx_->is_finite()) return ctx_->k() == 1 ? *this : pow(ctx_->p());
    // Coefficients lie in F_p, so c(u)^p = c(u^p).
    FieldElem r;
    r.ctx_ = ctx_;
    r.num_ = num_.inflate(ctx_->p());
    r.den_ = den_.inflate(ctx_->p());
    return r;
}

FieldElem FieldElem::frobenius(unsigned times) const {
    if (ctx_->is_finite()) {
        times %= ctx_->k();
        if (times == 0) return *this;
        return pow(mpz_pow(ctx_->p(), times));
    }
    FieldElem r = *this;
    for (unsigned i = 0; i < times; ++i) r = r.frobenius();
    return r;
}

FieldElem FieldElem::pth_root() const {
    require(ctx_->is_finite(), Errc::invalid_argument, "p-th roots are taken in finite fields only");
    if (ctx_->k() == 1) return *this;
    return pow(mpz_pow(ctx_->p(), ctx_->k() - 1));
}

std::string FieldElem::to_string() const {
    if (!ctx_->is_finite()) {
        if (den_.degree() == 0) return num_.to_string("u");
        return "(" + num_.to_string("u") + ")/(" + den_.to_string("u") + ")";
    }
    if (ctx_->k() == 1) return std::to_string(v_[0]);
    return Poly(ctx_->prime_field(), v_).to_string("a");
}

// ---- radicals ----

Poly separable_radical(const Poly& f) {
    require(!f.is_zero(), Errc::zero_polynomial, "radical of the zero polynomial");
    if (f.degree() <= 0) return Poly::constant(FieldElem::one(f.ctx()));
    Poly d = f.derivative();
    if (d.is_zero()) {
        // f = g(x)^p with g built from p-th roots of the coefficients c_{ip}.
        const u64 p = f.ctx()->p();
        Poly g(f.ctx());
        for (std::size_t i = 0; i * p < f.size(); ++i) g.set_coeff(i, f.coeff(i * p).pth_root());
        return separable_radical(g);
    }
    Poly g = gcd(f, d);
    Poly u = (f / g).monic();
    if (g.degree() == 0) return u;
    return lcm(u, separable_radical(g));
}

std::size_t distinct_root_count(const Poly& f) { return static_cast<std::size_t>(separable_radical(f).degree()); }

}  // namespace dynzeta
