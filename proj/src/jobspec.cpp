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

#include "dynzeta/jobspec.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "dynzeta/error.hpp"

namespace dynzeta {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { fail(Errc::invalid_argument, "job spec: " + what); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) bad(where + " must be an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k)) bad("unknown key '" + k + "' in " + where);
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        bad("bad or missing '" + std::string(key) + "' in " + where);
    }
}

template <class T>
void get_opt(const json& j, const char* key, const std::string& where, T& out) {
    if (j.contains(key)) out = get<T>(j, key, where);
}

template <class T>
void get_opt(const json& j, const char* key, const std::string& where, std::optional<T>& out) {
    if (j.contains(key)) out = get<T>(j, key, where);
}

ElemSpec elem_from(const json& v, const std::string& where) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_string()) return v.get<std::string>();
    bad(where + ": field elements are integers or strings");
}

json elem_to(const ElemSpec& e) {
    return std::visit([](const auto& x) { return json(x); }, e);
}

std::vector<ElemSpec> elems_from(const json& j, const char* key, const std::string& where) {
    std::vector<ElemSpec> out;
    if (!j.contains(key)) return out;
    if (!j.at(key).is_array()) bad(std::string(key) + " in " + where + " must be an array");
    for (const auto& v : j.at(key)) out.push_back(elem_from(v, where));
    return out;
}

json elems_to(const std::vector<ElemSpec>& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(elem_to(e));
    return a;
}

std::int64_t as_int(const ElemSpec& e, const char* what) {
    if (auto* i = std::get_if<std::int64_t>(&e)) return *i;
    bad(std::string(what) + " must be an integer");
}

}  // namespace

JobSpec job_from_json(const json& j) {
    only_keys(j, "job", {"schema", "command", "map", "field", "range", "automata", "output"});
    JobSpec s;
    s.schema = get<int>(j, "schema", "job");
    if (s.schema != job_schema_version) bad("unsupported schema " + std::to_string(s.schema));
    s.command = get<std::string>(j, "command", "job");
    static const std::set<std::string> verbs{"count", "zeta", "verdict", "oracle", "automata", "census"};
    if (!verbs.count(s.command)) bad("unknown command '" + s.command + "'");

    if (j.contains("field")) {
        const json& f = j.at("field");
        only_keys(f, "field", {"p", "k", "rational", "modulus"});
        s.field.p = get<u64>(f, "p", "field");
        get_opt(f, "k", "field", s.field.k);
        get_opt(f, "rational", "field", s.field.rational);
        get_opt(f, "modulus", "field", s.field.modulus);
    }
    if (j.contains("map")) {
        const json& m = j.at("map");
        only_keys(m, "map", {"family", "d", "sigma", "translation", "ring", "order", "gammas", "variant", "curve",
                             "num", "den"});
        MapSpec ms;
        ms.family = get<std::string>(m, "family", "map");
        get_opt(m, "d", "map", ms.d);
        ms.sigma = elems_from(m, "sigma", "map");
        if (m.contains("translation")) ms.translation = elem_from(m.at("translation"), "map.translation");
        get_opt(m, "ring", "map", ms.ring);
        get_opt(m, "order", "map", ms.order);
        get_opt(m, "gammas", "map", ms.gammas);
        get_opt(m, "variant", "map", ms.variant);
        get_opt(m, "curve", "map", ms.curve);
        ms.num = elems_from(m, "num", "map");
        ms.den = elems_from(m, "den", "map");
        s.map = ms;
    }
    if (j.contains("range")) {
        const json& r = j.at("range");
        only_keys(r, "range", {"n_min", "n_max", "terms", "max_k"});
        get_opt(r, "n_min", "range", s.range.n_min);
        get_opt(r, "n_max", "range", s.range.n_max);
        get_opt(r, "terms", "range", s.range.terms);
        get_opt(r, "max_k", "range", s.range.max_k);
    }
    if (j.contains("automata")) {
        const json& a = j.at("automata");
        only_keys(a, "automata", {"mode", "equation", "prefix", "sequence", "a", "ell", "alpha", "beta", "base",
                                  "depth", "kernel_prefix"});
        AutomataSpec as;
        get_opt(a, "mode", "automata", as.mode);
        get_opt(a, "equation", "automata", as.equation);
        get_opt(a, "prefix", "automata", as.prefix);
        get_opt(a, "sequence", "automata", as.sequence);
        get_opt(a, "a", "automata", as.a);
        get_opt(a, "ell", "automata", as.ell);
        get_opt(a, "alpha", "automata", as.alpha);
        get_opt(a, "beta", "automata", as.beta);
        get_opt(a, "base", "automata", as.base);
        get_opt(a, "depth", "automata", as.depth);
        get_opt(a, "kernel_prefix", "automata", as.kernel_prefix);
        s.automata = as;
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        only_keys(o, "output", {"format"});
        get_opt(o, "format", "output", s.output.format);
    }
    if (s.output.format != "jsonl" && s.output.format != "table") bad("format must be jsonl or table");
    if (s.range.n_min < 1 || s.range.n_min > s.range.n_max) bad("need 1 <= n_min <= n_max");
    if (s.command == "automata" && !s.automata) bad("automata command needs an automata section");
    if (s.command != "automata" && !s.map) bad(s.command + " command needs a map section");
    return s;
}

json job_to_json(const JobSpec& s) {
    json j;
    j["schema"] = s.schema;
    j["command"] = s.command;
    json f{{"p", s.field.p}, {"k", s.field.k}, {"rational", s.field.rational}};
    if (s.field.modulus) f["modulus"] = *s.field.modulus;
    j["field"] = f;
    if (s.map) {
        const MapSpec& m = *s.map;
        json jm{{"family", m.family}};
        if (m.d) jm["d"] = *m.d;
        if (!m.sigma.empty()) jm["sigma"] = elems_to(m.sigma);
        if (m.translation) jm["translation"] = elem_to(*m.translation);
        if (m.ring) jm["ring"] = *m.ring;
        if (m.order) jm["order"] = *m.order;
        if (!m.gammas.empty()) jm["gammas"] = m.gammas;
        if (m.variant) jm["variant"] = *m.variant;
        if (m.curve) jm["curve"] = *m.curve;
        if (!m.num.empty()) jm["num"] = elems_to(m.num);
        if (!m.den.empty()) jm["den"] = elems_to(m.den);
        j["map"] = jm;
    }
    j["range"] = json{{"n_min", s.range.n_min}, {"n_max", s.range.n_max}, {"terms", s.range.terms},
                      {"max_k", s.range.max_k}};
    if (s.automata) {
        const AutomataSpec& a = *s.automata;
        j["automata"] = json{{"mode", a.mode},   {"equation", a.equation}, {"prefix", a.prefix},
                             {"sequence", a.sequence}, {"a", a.a},     {"ell", a.ell},
                             {"alpha", a.alpha}, {"beta", a.beta},         {"base", a.base},
                             {"depth", a.depth}, {"kernel_prefix", a.kernel_prefix}};
    }
    j["output"] = json{{"format", s.output.format}};
    return j;
}

FieldRef build_field(const FieldSpec& s) {
    if (s.rational) {
        if (s.k != 1 || s.modulus) bad("F_p(u) takes no extension degree or modulus");
        return FieldCtx::make_rational(s.p);
    }
    if (!s.modulus) return FieldCtx::make(s.p, s.k);
    // Irreducibles are enumerated in a fixed order; find the requested one.
    if (s.modulus->size() != s.k + 1 || s.modulus->back() != 1) bad("modulus must be monic of degree k");
    for (u64 seed = 0; seed < 20000; ++seed) {
        FieldRef f;
        try {
            f = FieldCtx::make(s.p, s.k, seed);
        } catch (const Error& e) {
            if (e.code() == Errc::no_irreducible_found) break;
            throw;
        }
        if (f->modulus() == *s.modulus) return f;
    }
    bad("modulus is not a monic irreducible of degree k");
}

FieldElem build_elem(const FieldRef& ctx, const ElemSpec& e) {
    if (auto* i = std::get_if<std::int64_t>(&e)) return FieldElem::from_int(ctx, *i);
    const std::string& text = std::get<std::string>(e);
    const char var = ctx->is_finite() ? 'a' : 'u';
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) bad("empty field element");
    FieldElem acc = FieldElem::zero(ctx);
    std::size_t i = 0;
    auto number = [&](u64& out) {
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        out = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            if (out > (u64(1) << 40)) bad("number too large in '" + text + "'");
            out = out * 10 + u64(s[i++] - '0');
        }
        return true;
    };
    while (i < s.size()) {
        bool neg = false;
        if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
        u64 coef = 1, exp = 0;
        const bool has_coef = number(coef);
        if (i < s.size() && s[i] == '*') {
            if (!has_coef) bad("bad term in '" + text + "'");
            ++i;
        }
        if (i < s.size() && s[i] == var) {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (!number(exp)) bad("bad exponent in '" + text + "'");
            }
        } else if (!has_coef) {
            bad("unexpected character in '" + text + "' (the generator is '" + std::string(1, var) + "')");
        }
        if (exp > 0 && ctx->is_finite() && ctx->k() == 1) bad("F_p has no generator; write an integer");
        FieldElem term = FieldElem::from_int(ctx, static_cast<i64>(coef % ctx->p()));
        if (exp > 0) term *= FieldElem::generator(ctx).pow(exp);
        acc = neg ? acc - term : acc + term;
        if (i < s.size() && s[i] != '+' && s[i] != '-') bad("unexpected character in '" + text + "'");
    }
    return acc;
}

namespace {

std::vector<FieldElem> elems(const FieldRef& ctx, const std::vector<ElemSpec>& v) {
    std::vector<FieldElem> out;
    for (const auto& e : v) out.push_back(build_elem(ctx, e));
    return out;
}

QuadRing ring_of(const MapSpec& m) {
    if (!m.ring) return QuadRing::gaussian();
    if (m.ring->size() != 2) bad("ring is [T, N]");
    return QuadRing{(*m.ring)[0], (*m.ring)[1]};
}

QuadElem quad(const QuadRing& R, const std::vector<std::int64_t>& v, const char* what) {
    if (v.size() != 2) bad(std::string(what) + " is [a, b] for a + b tau");
    return QuadElem(R, v[0], v[1]);
}

std::vector<std::int64_t> ints(const std::vector<ElemSpec>& v) {
    std::vector<std::int64_t> out;
    for (const auto& e : v) out.push_back(as_int(e, "sigma coordinate"));
    return out;
}

std::vector<QuadElem> quad_gammas(const QuadRing& R, const MapSpec& m) {
    if (m.gammas.empty()) return {QuadElem::integer(R, 1), QuadElem::integer(R, -1)};
    std::vector<QuadElem> out;
    for (const auto& g : m.gammas) out.push_back(quad(R, g, "gamma"));
    return out;
}

u64 need_d(const MapSpec& m) {
    if (!m.d) bad(m.family + " needs d");
    return static_cast<u64>(*m.d);
}

}  // namespace

DynAffineMap build_map(const MapSpec& m, const FieldRef& ctx) {
    DynAffineMap out;
    const u64 p = ctx->p();
    if (m.family == "power") {
        out = PowerMap{static_cast<i64>(need_d(m)), ctx};
    } else if (m.family == "chebyshev") {
        out = ChebyshevMap{static_cast<i64>(need_d(m)), ctx};
    } else if (m.family == "additive") {
        if (m.sigma.empty()) bad("additive needs sigma");
        out = AdditiveMap{TwistedPoly(ctx, elems(ctx, m.sigma)),
                          m.translation ? build_elem(ctx, *m.translation) : FieldElem::zero(ctx)};
    } else if (m.family == "subadditive") {
        if (m.sigma.empty()) bad("subadditive needs sigma");
        if (!m.d || *m.d < 2) bad("subadditive needs d >= 2");
        out = SubadditiveMap{TwistedPoly(ctx, elems(ctx, m.sigma)), static_cast<u64>(*m.d)};
    } else if (m.family == "lattes_generic_j") {
        if (m.sigma.size() != 1) bad("lattes_generic_j sigma is one integer");
        LattesGenericJ L{as_int(m.sigma[0], "sigma"), p, LattesVariant::squared, std::nullopt};
        if (m.variant == "unsquared") L.variant = LattesVariant::unsquared;
        else if (m.variant && *m.variant != "squared") bad("variant is squared or unsquared");
        if (m.curve) {
            if (m.curve->size() != 2) bad("curve is [A, B]");
            L.curve = EllipticCurve::from_ints(ctx, (*m.curve)[0], (*m.curve)[1]);
        }
        out = L;
    } else if (m.family == "lattes_ordinary") {
        const QuadRing R = ring_of(m);
        out = LattesOrdinary{quad(R, ints(m.sigma), "sigma"), PrimeContext::quad_ordinary(R, p), quad_gammas(R, m)};
    } else if (m.family == "lattes_supersingular_norm") {
        const QuadRing R = ring_of(m);
        out = LattesSupersingularNorm{quad(R, ints(m.sigma), "sigma"), p, quad_gammas(R, m)};
    } else if (m.family == "lattes_supersingular") {
        QuatOrder ord = p == 2 ? QuatOrder::hurwitz : QuatOrder::order3;
        if (m.order == "hurwitz") ord = QuatOrder::hurwitz;
        else if (m.order == "order3") ord = QuatOrder::order3;
        else if (m.order) bad("order is hurwitz or order3");
        auto quat = [&](const std::vector<std::int64_t>& v) {
            if (v.size() != 4) bad("quaternions are four doubled coordinates");
            return QuatElem::from_doubled(ord, v[0], v[1], v[2], v[3]);
        };
        std::vector<QuatElem> gs;
        for (const auto& g : m.gammas) gs.push_back(quat(g));
        if (gs.empty()) gs = {QuatElem::integer(ord, 1), QuatElem::integer(ord, -1)};
        out = LattesSupersingular{quat(ints(m.sigma)), gs};
    } else if (m.family == "rational") {
        bad("rational maps have no closed form; use the oracle or census command");
    } else {
        bad("unknown family '" + m.family + "'");
    }
    validate(out);
    return out;
}

RatMap build_ratmap(const MapSpec& m, const FieldRef& ctx) {
    if (m.family != "rational") return realize(build_map(m, ctx));
    if (m.num.empty()) bad("rational map needs num");
    auto poly = [&](const std::vector<ElemSpec>& v) {
        Poly out(ctx);
        for (std::size_t i = 0; i < v.size(); ++i) out += Poly::monomial(build_elem(ctx, v[i]), i);
        return out;
    };
    return RatMap(poly(m.num), m.den.empty() ? Poly::constant(FieldElem::one(ctx)) : poly(m.den));
}

}  // namespace dynzeta
