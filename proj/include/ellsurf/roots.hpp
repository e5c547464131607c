#pragma once

// Rational roots of polynomials over Q and roots of low-degree equations over k(t).

#include <vector>

#include "ellsurf/poly.hpp"

namespace ellsurf {

/// Distinct rational roots in increasing order. Requires rational
/// coefficients (NonRationalCoefficients otherwise) and p != 0.
std::vector<Rational> rational_roots(const Poly& p);

/// Roots of a x^2 + b x + c in k(t), a != 0. With cyclotomic = false only
/// roots with rational coefficients are returned.
std::vector<RatFun> quadratic_roots(const RatFun& a, const RatFun& b, const RatFun& c,
                                    bool cyclotomic);

/// Roots in k(t) of x^3 + p x^2 + q x + r. Complete when r = 0 or when the
/// coefficients are rational (an irreducible cubic over Q(t) has no root in
/// Q(zeta_8)(t)); for other cyclotomic cubics only the r = 0 case is handled.
std::vector<RatFun> cubic_roots(const RatFun& p, const RatFun& q, const RatFun& r, bool cyclotomic);

}  // namespace ellsurf
