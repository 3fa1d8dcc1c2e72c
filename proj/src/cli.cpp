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

#include "dynzeta/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "dynzeta/automata.hpp"
#include "dynzeta/zeta.hpp"

namespace dynzeta {

using nlohmann::json;

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::scale_exceeded:
        case Errc::incomplete:
        case Errc::precision_exhausted:
        case Errc::no_admissible_ell:
            return exit_scale;
        case Errc::mismatch:
        case Errc::internal:
        case Errc::non_integer_coefficient:
        case Errc::non_integer_orbit_count:
            return exit_inconsistent;
        default:
            return exit_invalid_spec;
    }
}

namespace {

// Every number leaves as a decimal string.
template <class T>
std::string S(const T& x) {
    if constexpr (std::is_same_v<T, mpz_class>) return x.get_str();
    else if constexpr (std::is_same_v<T, mpq_class>) return x.get_str();
    else return std::to_string(x);
}

template <class V>
json strings(const V& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(S(x));
    return a;
}

class Emitter {
public:
    Emitter(std::ostream& out, bool table) : out_(out), table_(table) {}

    void emit(json record) {
        record["schema"] = S(job_schema_version);
        if (table_) rows_.push_back(std::move(record));
        else out_ << record.dump() << '\n';
    }

    // Columns per record kind, in first-seen order.
    void finish() {
        if (!table_) return;
        std::vector<std::string> kinds;
        for (const auto& r : rows_)
            if (std::find(kinds.begin(), kinds.end(), r["record"]) == kinds.end()) kinds.push_back(r["record"]);
        for (const auto& kind : kinds) {
            std::vector<std::string> cols;
            for (const auto& r : rows_) {
                if (r["record"] != kind) continue;
                for (const auto& [k, v] : r.items())
                    if (k != "record" && k != "schema" && std::find(cols.begin(), cols.end(), k) == cols.end())
                        cols.push_back(k);
            }
            std::vector<std::vector<std::string>> cells;
            std::vector<std::size_t> width;
            for (const auto& c : cols) width.push_back(c.size());
            for (const auto& r : rows_) {
                if (r["record"] != kind) continue;
                std::vector<std::string> line;
                for (std::size_t i = 0; i < cols.size(); ++i) {
                    std::string cell;
                    if (r.contains(cols[i])) {
                        const json& v = r[cols[i]];
                        cell = v.is_string() ? v.get<std::string>() : v.is_null() ? "-" : v.dump();
                    }
                    width[i] = std::max(width[i], cell.size());
                    line.push_back(cell);
                }
                cells.push_back(std::move(line));
            }
            out_ << "# " << kind << '\n';
            auto row = [&](const std::vector<std::string>& line) {
                for (std::size_t i = 0; i < line.size(); ++i)
                    out_ << line[i] << std::string(i + 1 < line.size() ? width[i] - line[i].size() + 2 : 0, ' ');
                out_ << '\n';
            };
            row(cols);
            for (const auto& line : cells) row(line);
        }
    }

private:
    std::ostream& out_;
    bool table_;
    std::vector<json> rows_;
};

json kernel_json(const KernelReport& k) {
    json j{{"base", S(k.base)},
           {"depth", S(k.depth)},
           {"prefix", S(k.prefix)},
           {"classes_per_depth", strings(k.classes_per_depth)},
           {"classification", k.closed() ? "closed" : "growing"}};
    j["closed_at"] = k.closed_at ? json(S(*k.closed_at)) : json(nullptr);
    return j;
}

json certificate_json(const Certificate& c) {
    auto head = [](const std::vector<u64>& v) {
        return strings(std::vector<u64>(v.begin(), v.begin() + std::min<std::size_t>(v.size(), 32)));
    };
    json j{{"recipe", c.recipe},
           {"form", c.form == CertificateForm::valuation ? "valuation" : "power_exponent"},
           {"p", S(c.p)},
           {"m", S(c.m)},
           {"ell", S(c.ell)},
           {"stride", S(c.stride)},
           {"offset", S(c.offset)},
           {"kappa", S(c.kappa)},
           {"v0", S(c.v0)},
           {"symbol", S(c.symbol)},
           {"boundary", S(c.boundary)},
           {"group_order", S(c.group_order)},
           {"b_prefix", head(c.b)},
           {"ell_kernel", kernel_json(c.ell_kernel)},
           {"p_kernel", kernel_json(c.p_kernel)},
           {"period_prefix", S(c.period_prefix)},
           {"automaton_states", S(c.automaton_states)},
           {"heuristic", c.heuristic},
           {"consistent", c.consistent()}};
    j["period"] = c.period ? json{{"preperiod", S(c.period->preperiod)}, {"period", S(c.period->period)}}
                           : json(nullptr);
    j["checks"] = json{{"counts_agree", c.checks.counts_agree}, {"b_rederived", c.checks.b_rederived},
                       {"target_matches", c.checks.target_matches}, {"no_period", c.checks.no_period},
                       {"ell_growing", c.checks.ell_growing},   {"p_automaton", c.checks.p_automaton},
                       {"p_closed", c.checks.p_closed}};
    return j;
}

json guess_json(const std::optional<RationalityGuess>& g) {
    if (!g) return nullptr;
    json factors = json::array();
    for (const auto& [alpha, e] : g->factors) factors.push_back(json{{"alpha", S(alpha)}, {"e", S(e)}});
    return json{{"order", S(g->recurrence.size())},
                {"recurrence", strings(g->recurrence)},
                {"factors", factors},
                {"closed_form", g->zeta ? json(g->zeta->to_string()) : json(nullptr)}};
}

int cmd_count(const JobSpec& s, Emitter& em) {
    const FieldRef F = build_field(s.field);
    const DynAffineMap map = build_map(*s.map, F);
    std::vector<u64> oracle;
    try {
        const RatMap f = realize(map);
        oracle = per_n_oracle_range(f, static_cast<unsigned>(std::min<u64>(s.range.n_max, oracle_horizon(f))));
    } catch (const Error& e) {
        if (e.code() != Errc::not_realizable && e.code() != Errc::scale_exceeded) throw;
    }
    bool all_match = true;
    for (u64 n = s.range.n_min; n <= s.range.n_max; ++n) {
        const mpz_class closed = per_n_closed(map, n);
        json r{{"record", "count"}, {"n", S(n)}, {"closed", S(closed)}};
        if (n <= oracle.size()) {
            const bool ok = closed == mpz_from_u64(oracle[n - 1]);
            all_match = all_match && ok;
            r["oracle"] = S(oracle[n - 1]);
            r["match"] = ok;
        } else {
            r["oracle"] = nullptr;
            r["match"] = nullptr;
        }
        em.emit(r);
    }
    return all_match ? exit_ok : exit_inconsistent;
}

std::vector<mpz_class> counts_for(const JobSpec& s, const FieldRef& F, u64 terms, std::string& source) {
    if (s.map->family != "rational") {
        source = "closed_form";
        return per_n_closed_range(build_map(*s.map, F), terms);
    }
    source = "oracle";
    const RatMap f = build_ratmap(*s.map, F);
    if (terms > oracle_horizon(f)) fail(Errc::scale_exceeded, "oracle counts beyond the degree cap");
    std::vector<mpz_class> out;
    for (u64 x : per_n_oracle_range(f, static_cast<unsigned>(terms))) out.push_back(mpz_from_u64(x));
    return out;
}

int cmd_zeta(const JobSpec& s, Emitter& em) {
    const FieldRef F = build_field(s.field);
    std::string source;
    const auto counts = counts_for(s, F, s.range.terms, source);
    const auto z = zeta_from_counts(counts);
    em.emit(json{{"record", "zeta"},
                 {"terms", S(s.range.terms)},
                 {"counts_source", source},
                 {"counts", strings(counts)},
                 {"coefficients", strings(z.coeffs)},
                 {"guess", guess_json(rationality_guess(counts))}});
    return exit_ok;
}

int cmd_verdict(const JobSpec& s, Emitter& em) {
    const FieldRef F = build_field(s.field);
    const DynAffineMap map = build_map(*s.map, F);
    VerdictParams vp;
    vp.series_terms = s.range.terms;
    const Verdict v = verdict(map, vp);
    json r{{"record", "verdict"},
           {"family", family_name(map)},
           {"kind", v.kind == VerdictKind::rational ? "rational" : "transcendental_evidence"},
           {"basis", v.basis},
           {"series", strings(v.series)},
           {"series_verified", v.series_verified}};
    r["closed_form"] = v.closed_form ? json(v.closed_form->to_string()) : json(nullptr);
    r["certificate"] = v.certificate ? certificate_json(*v.certificate) : json(nullptr);
    em.emit(r);
    return v.certificate && !v.certificate->consistent() ? exit_inconsistent : exit_ok;
}

int cmd_oracle(const JobSpec& s, Emitter& em) {
    const FieldRef F = build_field(s.field);
    const RatMap f = build_ratmap(*s.map, F);
    if (s.range.n_max > oracle_horizon(f))
        fail(Errc::scale_exceeded, "deg^n beyond the degree cap for n = " + S(s.range.n_max));
    const auto per = per_n_oracle_range(f, static_cast<unsigned>(s.range.n_max));
    for (u64 n = s.range.n_min; n <= s.range.n_max; ++n)
        em.emit(json{{"record", "oracle"}, {"n", S(n)}, {"per_n", S(per[n - 1])}, {"map", f.to_string()}});
    return exit_ok;
}

int cmd_census(const JobSpec& s, Emitter& em) {
    const FieldRef F = build_field(s.field);
    const RatMap f = build_ratmap(*s.map, F);
    const auto c = cycle_census(f, s.range.max_k, static_cast<unsigned>(s.range.n_max));
    const auto per = census_per_n(c);
    json r{{"record", "census"},
           {"field_size", S(c.field_size)},
           {"max_n", S(c.max_n)},
           {"cycles", strings(std::vector<u64>(c.cycles.begin() + 1, c.cycles.end()))},
           {"longer_cycles", S(c.longer_cycles)},
           {"per_n", strings(per)}};
    const unsigned horizon = std::min<unsigned>(c.max_n, oracle_horizon(f));
    r["complete_prefix"] = S(census_complete_prefix(c, per_n_oracle_range(f, horizon)));
    em.emit(r);
    return exit_ok;
}

int cmd_automata(const JobSpec& s, Emitter& em) {
    const AutomataSpec& a = *s.automata;
    const u64 p = s.field.p;
    auto christol = [&](std::size_t n) {
        const auto P = BivariatePoly::parse(a.equation, p);
        const std::vector<u64> prefix = a.prefix.empty() ? std::vector<u64>{0} : a.prefix;
        return christol_series(P, prefix, n);
    };
    if (a.mode == "christol") {
        em.emit(json{{"record", "christol"},
                     {"p", S(p)},
                     {"equation", a.equation},
                     {"coefficients", strings(christol(s.range.terms))}});
        return exit_ok;
    }
    if (a.mode != "kernel") fail(Errc::invalid_argument, "automata mode is christol or kernel");
    if (a.base < 2) fail(Errc::invalid_argument, "kernel base must be at least 2");
    // Terms needed for depth D: base^D * L.
    u64 need = a.kernel_prefix;
    for (unsigned i = 0; i < a.depth; ++i) {
        if (need > (u64(1) << 26) / a.base) fail(Errc::scale_exceeded, "kernel exploration needs too many terms");
        need *= a.base;
    }
    std::vector<u64> seq;
    if (a.sequence == "valuation") seq = valuation_power_sequence(a.a, p, a.ell, a.alpha, a.beta, need).values;
    else if (a.sequence == "exponent") seq = exponent_tower_sequence(a.a, p, a.ell, need).values;
    else if (a.sequence == "christol") seq = christol(need);
    else fail(Errc::invalid_argument, "kernel sequence is valuation, exponent or christol");
    json r = kernel_json(kernel_explore(std::span<const u64>(seq), static_cast<unsigned>(a.base), a.depth,
                                        a.kernel_prefix));
    r["record"] = "kernel";
    r["sequence"] = a.sequence;
    em.emit(r);
    return exit_ok;
}

}  // namespace

int run_job(const JobSpec& spec, std::ostream& out, std::ostream& err) {
    Emitter em(out, spec.output.format == "table");
    int code = exit_ok;
    try {
        if (spec.command == "count") code = cmd_count(spec, em);
        else if (spec.command == "zeta") code = cmd_zeta(spec, em);
        else if (spec.command == "verdict") code = cmd_verdict(spec, em);
        else if (spec.command == "oracle") code = cmd_oracle(spec, em);
        else if (spec.command == "census") code = cmd_census(spec, em);
        else if (spec.command == "automata") code = cmd_automata(spec, em);
        else fail(Errc::invalid_argument, "unknown command '" + spec.command + "'");
    } catch (const Error& e) {
        em.finish();
        err << "dynzeta: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    em.finish();
    if (code == exit_inconsistent) err << "dynzeta: internal consistency failure\n";
    return code;
}

namespace {

ElemSpec elem_arg(const std::string& s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size()) return v;
    return s;
}

std::vector<ElemSpec> elem_args(const std::vector<std::string>& v) {
    std::vector<ElemSpec> out;
    for (const auto& s : v) out.push_back(elem_arg(s));
    return out;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Periodic-point counts, zeta functions and automatic-sequence certificates"};
    std::string verb, job_file, family, translation, variant, order, mode, equation, sequence;
    std::vector<std::string> sigma, num, den, gammas;
    std::vector<std::int64_t> ring, curve;
    std::vector<u64> modulus, prefix;
    std::optional<std::int64_t> d;
    std::optional<u64> p, n_min, n_max, terms, a_opt, ell, alpha, beta, base, kernel_prefix;
    std::optional<unsigned> k, max_k, depth;
    bool rational = false, table = false, print_spec = false;

    app.add_option("verb", verb, "count | zeta | verdict | oracle | automata | census");
    app.add_option("--job", job_file, "Job file (JSON); flags below may not be combined with it");
    app.add_flag("--table", table, "Human-readable columns instead of JSON lines");
    app.add_flag("--print-spec", print_spec, "Print the canonical job spec and exit");
    app.add_option("--family", family, "power chebyshev additive subadditive lattes_generic_j lattes_ordinary "
                                       "lattes_supersingular lattes_supersingular_norm rational");
    app.add_option("--p", p, "Characteristic");
    app.add_option("--k", k, "Extension degree");
    app.add_flag("--rational-field", rational, "Work over F_p(u)");
    app.add_option("--modulus", modulus, "Monic modulus, ascending coefficients");
    app.add_option("--d", d, "Degree parameter");
    app.add_option("--sigma", sigma, "sigma coefficients or coordinates");
    app.add_option("--translation", translation, "Translation of an additive map");
    app.add_option("--ring", ring, "Quadratic ring T N");
    app.add_option("--order", order, "Quaternion order: hurwitz or order3");
    app.add_option("--gamma", gammas, "Automorphism, comma-separated coordinates (repeatable)");
    app.add_option("--variant", variant, "Generic-j kernel: squared or unsquared");
    app.add_option("--curve", curve, "Curve coefficients A B");
    app.add_option("--num", num, "Numerator of a raw rational map, ascending");
    app.add_option("--den", den, "Denominator of a raw rational map, ascending");
    app.add_option("--n-min", n_min, "First n");
    app.add_option("--n-max", n_max, "Last n");
    app.add_option("--terms", terms, "Zeta or series terms");
    app.add_option("--max-k", max_k, "Census extension degree");
    app.add_option("--mode", mode, "automata: christol or kernel");
    app.add_option("--equation", equation, "P(t, y) over F_p");
    app.add_option("--prefix", prefix, "Initial series coefficients");
    app.add_option("--sequence", sequence, "Kernel sequence: valuation exponent christol");
    app.add_option("--a", a_opt, "Valuation sequence base");
    app.add_option("--ell", ell, "Modulus ell");
    app.add_option("--alpha", alpha, "Stride");
    app.add_option("--beta", beta, "Offset");
    app.add_option("--base", base, "Kernel base");
    app.add_option("--depth", depth, "Kernel depth");
    app.add_option("--kernel-prefix", kernel_prefix, "Kernel prefix length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? exit_ok : exit_invalid_spec;
    }

    JobSpec spec;
    try {
        if (!job_file.empty()) {
            const bool extra = !family.empty() || p || k || rational || !modulus.empty() || d || !sigma.empty() ||
                               !translation.empty() || !ring.empty() || !order.empty() || !gammas.empty() ||
                               !variant.empty() || !curve.empty() || !num.empty() || !den.empty() || n_min ||
                               n_max || terms || max_k || !mode.empty() || !equation.empty() || !prefix.empty() ||
                               !sequence.empty() || a_opt || ell || alpha || beta || base || depth || kernel_prefix;
            if (extra) fail(Errc::invalid_argument, "job files cannot be combined with map or range flags");
            std::ifstream in(job_file);
            if (!in) fail(Errc::invalid_argument, "cannot read job file " + job_file);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception& e) {
                fail(Errc::invalid_argument, std::string("job file is not JSON: ") + e.what());
            }
            spec = job_from_json(j);
            if (!verb.empty() && verb != spec.command)
                fail(Errc::invalid_argument, "verb '" + verb + "' disagrees with the job file");
        } else {
            // Flags compile to the same JSON a job file would hold.
            json j{{"schema", job_schema_version}, {"command", verb}};
            json f{{"p", p.value_or(2)}};
            if (k) f["k"] = *k;
            if (rational) f["rational"] = true;
            if (!modulus.empty()) f["modulus"] = modulus;
            j["field"] = f;
            if (!family.empty()) {
                MapSpec m;
                m.family = family;
                m.d = d;
                m.sigma = elem_args(sigma);
                if (!translation.empty()) m.translation = elem_arg(translation);
                if (!ring.empty()) m.ring = ring;
                if (!order.empty()) m.order = order;
                for (const auto& g : gammas) {
                    std::vector<std::int64_t> coords;
                    std::stringstream ss(g);
                    std::string part;
                    while (std::getline(ss, part, ',')) {
                        const ElemSpec e = elem_arg(part);
                        if (!std::holds_alternative<std::int64_t>(e))
                            fail(Errc::invalid_argument, "gamma coordinates are integers");
                        coords.push_back(std::get<std::int64_t>(e));
                    }
                    m.gammas.push_back(coords);
                }
                if (!variant.empty()) m.variant = variant;
                if (!curve.empty()) m.curve = curve;
                m.num = elem_args(num);
                m.den = elem_args(den);
                JobSpec tmp;
                tmp.map = m;
                j["map"] = job_to_json(tmp)["map"];
            }
            json r = json::object();
            if (n_min) r["n_min"] = *n_min;
            if (n_max) r["n_max"] = *n_max;
            if (terms) r["terms"] = *terms;
            if (max_k) r["max_k"] = *max_k;
            j["range"] = r;
            if (verb == "automata") {
                json a = json::object();
                if (!mode.empty()) a["mode"] = mode;
                if (!equation.empty()) a["equation"] = equation;
                if (!prefix.empty()) a["prefix"] = prefix;
                if (!sequence.empty()) a["sequence"] = sequence;
                if (a_opt) a["a"] = *a_opt;
                if (ell) a["ell"] = *ell;
                if (alpha) a["alpha"] = *alpha;
                if (beta) a["beta"] = *beta;
                if (base) a["base"] = *base;
                if (depth) a["depth"] = *depth;
                if (kernel_prefix) a["kernel_prefix"] = *kernel_prefix;
                j["automata"] = a;
            }
            if (verb.empty()) fail(Errc::invalid_argument, "a verb or --job is required");
            spec = job_from_json(j);
        }
    } catch (const Error& e) {
        err << "dynzeta: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    if (table) spec.output.format = "table";
    if (print_spec) {
        out << job_to_json(spec).dump(2) << '\n';
        return exit_ok;
    }
    return run_job(spec, out, err);
}

}  // namespace dynzeta
