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

#include "dynzeta/twisted.hpp"

#include <algorithm>
#include <sstream>

#include "dynzeta/error.hpp"

namespace dynzeta {

TwistedPoly::TwistedPoly(FieldRef ctx, std::vector<FieldElem> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    trim();
}

TwistedPoly TwistedPoly::phi(const FieldRef& ctx) {
    return TwistedPoly(ctx, {FieldElem::zero(ctx), FieldElem::one(ctx)});
}

TwistedPoly TwistedPoly::scalar(const FieldElem& c) { return TwistedPoly(c.ctx(), {c}); }

TwistedPoly TwistedPoly::from_ints(const FieldRef& ctx, const std::vector<i64>& coeffs) {
    std::vector<FieldElem> c;
    for (i64 v : coeffs) c.push_back(FieldElem::from_int(ctx, v));
    return TwistedPoly(ctx, std::move(c));
}

void TwistedPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElem TwistedPoly::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : FieldElem::zero(ctx_);
}

TwistedPoly TwistedPoly::operator+(const TwistedPoly& o) const {
    std::vector<FieldElem> c(std::max(c_.size(), o.c_.size()), FieldElem::zero(ctx_));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
    return TwistedPoly(ctx_, std::move(c));
}

TwistedPoly TwistedPoly::operator-() const {
    TwistedPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

TwistedPoly TwistedPoly::operator-(const TwistedPoly& o) const { return *this + (-o); }

TwistedPoly TwistedPoly::truncated(std::size_t K) const {
    TwistedPoly r = *this;
    if (r.c_.size() > K) r.c_.resize(K);
    r.trim();
    return r;
}

Poly TwistedPoly::realize() const {
    require(ctx_->is_finite(), Errc::invalid_argument, "realization needs a finite field");
    require(degree() <= degree_cap(), Errc::scale_exceeded, "additive polynomial degree exceeds the cap");
    Poly r(ctx_);
    u64 e = 1;
    for (std::size_t i = 0; i < c_.size(); ++i, e *= ctx_->p()) r.set_coeff(e, c_[i]);
    return r;
}

std::string TwistedPoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = c_[i].to_string();
        bool compound = cs.find_first_of("+ ") != std::string::npos;
        if (i == 0) {
            os << cs;
        } else {
            if (!c_[i].is_one()) os << (compound ? "(" + cs + ")" : cs) << "*";
            os << "phi";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

TwistedPoly tw_mul_trunc(const TwistedPoly& a, const TwistedPoly& b, std::size_t K) {
    const auto& ctx = a.ctx();
    if (a.is_zero() || b.is_zero()) return TwistedPoly(ctx);
    const std::size_t n = std::min(K, a.coeffs().size() + b.coeffs().size() - 1);
    std::vector<FieldElem> c(n, FieldElem::zero(ctx));
    // Frobenius twists of b, one per shift i.
    std::vector<FieldElem> tw(b.coeffs().begin(), b.coeffs().end());
    for (std::size_t i = 0; i < a.coeffs().size() && i < n; ++i) {
        if (i > 0) {
            for (std::size_t j = 0; j + i < n && j < tw.size(); ++j) tw[j] = tw[j].frobenius();
        }
        const FieldElem& ai = a.coeffs()[i];
        if (ai.is_zero()) continue;
        for (std::size_t j = 0; j < tw.size() && i + j < n; ++j) c[i + j] += ai * tw[j];
    }
    return TwistedPoly(ctx, std::move(c));
}

TwistedPoly tw_mul(const TwistedPoly& a, const TwistedPoly& b) {
    return tw_mul_trunc(a, b, a.coeffs().size() + b.coeffs().size());
}

namespace {

TwistedPoly pow_trunc(const TwistedPoly& a, u64 n, std::size_t K) {
    TwistedPoly r = TwistedPoly::scalar(FieldElem::one(a.ctx()));
    TwistedPoly b = a.truncated(K);
    while (n) {
        if (n & 1) r = tw_mul_trunc(r, b, K);
        n >>= 1;
        if (n) b = tw_mul_trunc(b, b, K);
    }
    return r;
}

}  // namespace

TwistedPoly tw_pow(const TwistedPoly& a, u64 n) {
    const std::size_t full = a.is_zero() ? 1 : static_cast<std::size_t>(a.top()) * n + 1;
    return pow_trunc(a, n, full);
}

TwistedPoly tw_sub_scalar(const TwistedPoly& a, const FieldElem& w) {
    std::vector<FieldElem> c = a.coeffs();
    if (c.empty()) c.push_back(FieldElem::zero(a.ctx()));
    c[0] -= w;
    return TwistedPoly(a.ctx(), std::move(c));
}

std::optional<u64> v_phi(const TwistedPoly& a) {
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        if (!a.coeffs()[i].is_zero()) return i;
    return std::nullopt;
}

std::optional<u64> v_phi_pow_minus(const TwistedPoly& sigma, u64 n, const FieldElem& w) {
    if (sigma.is_zero()) {
        if (n == 0) return v_phi(tw_sub_scalar(TwistedPoly::scalar(FieldElem::one(w.ctx())), w));
        return w.is_zero() ? std::nullopt : std::optional<u64>(0);
    }
    if (!(sigma.coeff(0).pow(n) - w).is_zero()) return 0;
    // sigma^n - w has phi-degree at most top * n, so the search terminates.
    const u64 bound = static_cast<u64>(sigma.top()) * n + 1;
    for (u64 K = 2;; K *= 2) {
        const u64 KK = std::min(K, bound);
        auto v = v_phi(tw_sub_scalar(pow_trunc(sigma, n, KK), w).truncated(KK));
        if (v) return v;
        if (KK == bound) return std::nullopt;
    }
}

mpz_class kernel_size_ga(const TwistedPoly& sigma) {
    auto v = v_phi(sigma);
    require(v.has_value(), Errc::zero_element, "kernel of the zero endomorphism");
    return mpz_pow(sigma.ctx()->p(), static_cast<unsigned long>(sigma.top() - static_cast<int>(*v)));
}

std::optional<u64> lte_ga(const TwistedPoly& x, u64 n) {
    require(n >= 1, Errc::invalid_argument, "exponent must be positive");
    const FieldElem one = FieldElem::one(x.ctx());
    auto base = v_phi(tw_sub_scalar(x, one));
    if (!base) return std::nullopt;
    require(*base >= 1, Errc::hypothesis_violated, "x - 1 does not lie in (phi)");
    const u64 p = x.ctx()->p();
    const unsigned vn = v_p(static_cast<i64>(n), p);
    const u64 predicted = *base * mpz_to_u64(mpz_pow(p, vn));
    if (predicted <= 4096 && (x.ctx()->is_finite() || predicted <= 8)) {
        auto direct = v_phi_pow_minus(x, n, one);
        if (!direct || *direct != predicted) fail(Errc::mismatch, "lifting-the-exponent check failed in k<phi>");
    }
    return predicted;
}

u64 element_order(const FieldElem& c) {
    require(!c.is_zero(), Errc::zero_element, "order of zero");
    require(c.ctx()->is_finite() || c.is_constant(), Errc::invalid_argument, "order of a nonconstant function");
    const mpz_class q = c.ctx()->is_finite() ? c.ctx()->order() : mpz_from_u64(c.ctx()->p());
    require(q < mpz_class(1) << 62, Errc::scale_exceeded, "field too large for order computation");
    const u64 n = mpz_to_u64(q) - 1;
    u64 ord = n;
    for (auto [r, e] : factor(n)) {
        for (unsigned i = 0; i < e && c.pow(ord / r).is_one(); ++i) ord /= r;
    }
    return ord;
}

ConstantOrder constant_order(const TwistedPoly& sigma) {
    const FieldElem c0 = sigma.coeff(0);
    require(!c0.is_zero(), Errc::inseparable_sigma, "sigma has zero constant term");
    if (!c0.is_constant() && !c0.ctx()->is_finite()) return {true, 0};
    return {false, element_order(c0)};
}

}  // namespace dynzeta
