#pragma once

// Multi-modular gcd over Q(zeta8)[t]: images modulo primes p = 1 (mod 8),
// one per embedding zeta -> omega^j, recombined by CRT and rational
// reconstruction, confirmed by exact trial division.

#include <optional>

#include "ellsurf/poly.hpp"

namespace ellsurf::detail {

/// Monic gcd of two nonzero polynomials, or nullopt when the prime budget is
/// exhausted (the caller then falls back to the Euclidean algorithm).
std::optional<Poly> modular_gcd(const Poly& a, const Poly& b);

}  // namespace ellsurf::detail
