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

#ifndef DYNZETA_FAMILIES_HPP
#define DYNZETA_FAMILIES_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dynzeta/dynmap.hpp"
#include "dynzeta/elliptic.hpp"
#include "dynzeta/orders.hpp"
#include "dynzeta/twisted.hpp"

namespace dynzeta {

// x -> x^d on P^1 over ctx, |d| >= 2.
struct PowerMap {
    i64 d = 2;
    FieldRef ctx;
};

// T_d with T_d(x + 1/x) = x^d + x^-d; d and -d give the same map.
struct ChebyshevMap {
    i64 d = 2;
    FieldRef ctx;
};

// sigma(x) + translation, sigma in k<phi> of degree >= p.
struct AdditiveMap {
    TwistedPoly sigma;
    FieldElem translation;
};

// The map f with psi(x)^d = f(x^d), psi = sigma commuting with mu_d.
struct SubadditiveMap {
    TwistedPoly sigma;
    u64 d = 2;
};

enum class LattesVariant {
    squared,  // kernel (s^n -+ 1)^2 / p^v
    unsquared,  // kernel |s^n -+ 1| / p^v
};

// End(E) = Z and Gamma = {+-1}. An optional concrete curve makes the
// map realizable through its x-coordinate.
struct LattesGenericJ {
    i64 sigma = 2;
    u64 p = 5;
    LattesVariant variant = LattesVariant::squared;
    std::optional<EllipticCurve> curve;
};

struct LattesOrdinary {
    QuadElem sigma;
    PrimeContext prime;
    std::vector<QuadElem> gammas;
};

// p in {2, 3}: explicit quaternion coordinates.
struct LattesSupersingular {
    QuatElem sigma;
    std::vector<QuatElem> gammas;
};

// p >= 5: sigma and Gamma inside one imaginary quadratic subring; the
// valuation at the quaternion prime is v_p of the norm.
struct LattesSupersingularNorm {
    QuadElem sigma;
    u64 p = 5;
    std::vector<QuadElem> gammas;
};

using DynAffineMap = std::variant<PowerMap, ChebyshevMap, AdditiveMap, SubadditiveMap, LattesGenericJ, LattesOrdinary,
                                  LattesSupersingular, LattesSupersingularNorm>;

std::string family_name(const DynAffineMap& map);
u64 characteristic(const DynAffineMap& map);
// Throws on invalid parameters.
void validate(const DynAffineMap& map);
mpz_class map_degree(const DynAffineMap& map);

enum class Separability { separable, inseparable };
Separability classify_separability(const DynAffineMap& map);

// boundary + (sum of kernel sizes) / |Gamma|; the sum must divide evenly.
mpz_class per_n_template(u64 boundary, const std::vector<mpz_class>& kernel_sizes);

// #Per_n from the closed forms.
mpz_class per_n_closed(const DynAffineMap& map, u64 n);
std::vector<mpz_class> per_n_closed_range(const DynAffineMap& map, u64 n_max);

// Concrete rational map; NotRealizable for Lattes maps with non-integer sigma.
RatMap realize(const DynAffineMap& map);

// Chebyshev polynomial by T_0 = 2, T_1 = x, T_{j+1} = x T_j - T_{j-1}.
Poly chebyshev_poly(const FieldRef& ctx, u64 d);

// Generator of mu_d in ctx; requires d | q - 1.
FieldElem root_of_unity(const FieldRef& ctx, u64 d);

}  // namespace dynzeta

#endif
