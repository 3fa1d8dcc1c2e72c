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

#ifndef DYNZETA_CERTIFICATE_HPP
#define DYNZETA_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dynzeta/automata.hpp"
#include "dynzeta/families.hpp"

namespace dynzeta {

struct CertificateParams {
    std::size_t prefix = 2000;          // stored length of b; first period-test length
    std::size_t period_cap = 64000;     // longest prefix given to the periodicity detector
    std::size_t kernel_prefix = 256;    // L for kernel exploration
    u64 kernel_budget = u64(1) << 23;   // max sequence terms generated per kernel
    unsigned max_ell_depth = 4;
    unsigned max_p_depth = 8;
    u64 ell_cap = 10000000;
};

// b_n is a^{v_p(c n + r)} mod ell (valuation form) or p^{a p^{v_p(c n)}}
// mod ell (power-exponent form, additive families, b_0 = 0).
enum class CertificateForm { valuation, power_exponent };

struct CertificateChecks {
    bool counts_agree = false;    // modular Per_{mj} equals exact closed form mod ell on a window
    bool b_rederived = false;     // small-n b values rebuilt from exact counts
    bool target_matches = false;  // b equals the independently generated target
    bool no_period = false;       // eventual_period_detect(b prefix) is none
    bool ell_growing = false;     // base-ell kernel growing
    bool p_automaton = false;     // explicit base-p automaton reproduces the target
    bool p_closed = false;        // target kernel closed in base p (evidence only)
};

struct Certificate {
    std::string recipe;
    CertificateForm form = CertificateForm::valuation;
    u64 p = 0;
    u64 m = 0;
    u64 ell = 0;
    u64 stride = 0;  // c
    u64 offset = 0;  // r
    unsigned kappa = 1;
    u64 v0 = 0;           // valuation of sigma^m - 1
    u64 symbol = 0;       // a in the target: p^kappa mod ell, or the exponent scale
    u64 boundary = 0;
    std::size_t group_order = 1;
    std::vector<u64> counts_mod;    // Per_{mj} mod ell from the modular model, j = 1..W
    std::vector<u64> counts_exact;  // the same from exact closed forms
    std::vector<std::pair<u64, u64>> exact_b;
    std::vector<u64> b;
    std::vector<u64> target;
    KernelReport ell_kernel;
    KernelReport p_kernel;
    std::optional<Periodicity> period;
    std::size_t period_prefix = 0;  // terms given to the periodicity detector
    std::size_t automaton_states = 0;
    bool heuristic = false;  // ell bound infeasible below the cap
    CertificateChecks checks;

    bool consistent() const;
};

// Choose m and the least admissible ell, build b_n and run the detectors.
Certificate certificate_build(const DynAffineMap& map, const CertificateParams& params = {});

}  // namespace dynzeta

#endif
