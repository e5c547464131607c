#pragma once

// Torsion: 2-power torsion over k(t) by repeated halving, the family's
// torsion structure, and torsion over Q through division polynomials.

#include <string>
#include <vector>

#include "ellsurf/family.hpp"
#include "ellsurf/mwgroup.hpp"

namespace ellsurf {

struct TorsionReport {
  std::vector<int> structure;           // invariant factors n1 | n2, ones dropped
  std::vector<CurvePoint> generators;   // one per invariant factor
  std::string bound;                    // component-group constraint that was used
  std::vector<CurvePoint> elements;     // the whole torsion subgroup, O first

  /// "Z/2 + Z/4", or "trivial".
  std::string describe() const;
  int order() const;
};

/// Order of p if it divides max_order, 0 otherwise.
int point_order(const WeierstrassModel& m, const CurvePoint& p, int max_order);

/// Points with 2P = O other than O whose coordinates lie in Q(zeta8)(t).
std::vector<CurvePoint> two_torsion(const WeierstrassModel& m);

/// All P with 2P = q and coordinates in Q(zeta8)(t). Needs a1 = a3 = 0 and a
/// split cubic. Throws Unrepresentable when a half exists over Qbar(t) but
/// needs a constant square root outside Q(zeta8).
std::vector<CurvePoint> halve(const WeierstrassModel& m, const CurvePoint& q);

/// halve() restricted to 2-torsion input (NotTwoTorsion otherwise).
std::vector<CurvePoint> halve_two_torsion(const WeierstrassModel& m, const CurvePoint& t);

/// Torsion of y^2 = x (x - f^2)(x - g^2) over Qbar(t). Needs deg f = 2,
/// deg g <= 2, gcd(f, g) = 1 (OutOfFamily / NotCoprime otherwise).
TorsionReport torsion_structure_family(const Poly& f, const Poly& g);
TorsionReport torsion_structure_family(const PythagoreanTriple& t);

/// psi_n for odd n, psi_n / psi_2 for even n > 2 and psi_2^2 for n = 2, as a
/// polynomial in x (the variable is printed as t).
/// Needs a model with constant rational coefficients and 2 <= n <= 12.
Poly division_polynomial(const WeierstrassModel& m, int n);

/// Full torsion subgroup of a curve over Q.
TorsionReport torsion_over_Q(const WeierstrassModel& m);

/// True iff p is a point of infinite order (p not in the torsion subgroup).
bool is_nontorsion_Q(const WeierstrassModel& m, const CurvePoint& p);

}  // namespace ellsurf
