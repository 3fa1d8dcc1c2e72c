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

#ifndef DYNZETA_AUTOMATA_HPP
#define DYNZETA_AUTOMATA_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynzeta/arith.hpp"

namespace dynzeta {

// Deterministic finite automaton with output, digits read least significant
// first. Construction rejects automata whose output changes when zero digits
// are appended.
class Dfao {
public:
    Dfao(unsigned base, std::vector<std::vector<unsigned>> delta, std::vector<u64> output,
         unsigned initial = 0);

    unsigned base() const { return base_; }
    std::size_t states() const { return output_.size(); }
    unsigned step(unsigned state, unsigned digit) const { return delta_[state][digit]; }
    u64 output(unsigned state) const { return output_[state]; }
    unsigned initial() const { return initial_; }

    u64 eval(u64 n) const;

    // Automata for n mod m and for the indicator of powers of k.
    static Dfao residue(unsigned base, unsigned m);
    static Dfao power_indicator(unsigned base);

private:
    unsigned base_;
    std::vector<std::vector<unsigned>> delta_;
    std::vector<u64> output_;
    unsigned initial_;
};

u64 dfao_eval(const Dfao& a, u64 n);

using SequenceOracle = std::function<u64(u64)>;

struct KernelWitness {
    unsigned depth;
    u64 residue;
};

enum class KernelClass { closed, growing };

// Prefix-based evidence only: two subsequences share a class when they agree
// on the first L terms.
struct KernelReport {
    unsigned base = 0;
    unsigned depth = 0;
    std::size_t prefix = 0;
    std::vector<std::size_t> classes_per_depth;  // cumulative, index = depth
    KernelClass classification = KernelClass::growing;
    std::optional<unsigned> closed_at;  // first depth after which two depths add nothing
    std::vector<KernelWitness> witnesses;  // first representative of each class

    std::size_t classes() const { return classes_per_depth.empty() ? 0 : classes_per_depth.back(); }
    bool closed() const { return classification == KernelClass::closed; }
};

inline constexpr std::size_t kernel_default_prefix = 256;

KernelReport kernel_explore(const SequenceOracle& seq, unsigned k, unsigned depth,
                            std::size_t prefix = kernel_default_prefix);
// Needs seq.size() >= k^depth * prefix.
KernelReport kernel_explore(std::span<const u64> seq, unsigned k, unsigned depth,
                            std::size_t prefix = kernel_default_prefix);

// Bivariate polynomial over F_p: coeffs[j] holds the t-coefficients of y^j.
struct BivariatePoly {
    u64 p = 2;
    std::vector<std::vector<u64>> coeffs;

    // Terms like "3*t^2*y", "y^2", "t" joined by + or -.
    static BivariatePoly parse(const std::string& text, u64 p);
    unsigned y_degree() const;
    // P(t, y) and dP/dy(t, y), truncated mod t^prec.
    std::vector<u64> eval(std::span<const u64> y, std::size_t prec) const;
    std::vector<u64> eval_dy(std::span<const u64> y, std::size_t prec) const;
};

std::vector<u64> christol_series(const BivariatePoly& P, std::span<const u64> prefix, std::size_t n);

struct Periodicity {
    std::size_t preperiod;
    std::size_t period;
    bool operator==(const Periodicity&) const = default;
};

std::optional<Periodicity> eventual_period_detect(std::span<const u64> prefix);

// a^{v_p(alpha n + beta)} mod ell; index with alpha n + beta = 0 gets 0.
struct ValuationSequence {
    std::vector<u64> values;
    u64 modulus;
    u64 residue_modulus;             // d: the sequence is a function of v mod d
    std::vector<u64> residues;       // valuation mod d, or `undefined`
    std::vector<u64> table;          // symbol for each residue class
    static constexpr u64 undefined = ~u64(0);
    bool witness_ok() const;
};

// Base-p automaton with output table[v_p(c n + r) mod table.size()] (and
// `undefined` where c n + r = 0); nullopt past max_states.
std::optional<Dfao> valuation_dfao(u64 p, u64 c, u64 r, const std::vector<u64>& table, u64 undefined = 0,
                                   std::size_t max_states = 200000);

ValuationSequence valuation_power_sequence(u64 a, u64 p, u64 ell, i64 alpha, i64 beta, std::size_t length);
// p^{a p^{v_p(n)}} mod ell; index 0 gets 0.
ValuationSequence exponent_tower_sequence(u64 a, u64 p, u64 ell, std::size_t length);

}  // namespace dynzeta

#endif
