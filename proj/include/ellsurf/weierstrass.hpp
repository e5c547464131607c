#pragma once

// Long Weierstrass models over k(t), coordinate changes, minimality and
// Kodaira fiber classification (residue characteristic zero).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ellsurf/poly.hpp"

namespace ellsurf {

/// Weights of a1, a2, a3, a4, a6.
inline constexpr std::array<int, 5> kCoefficientWeights{1, 2, 3, 4, 6};

struct WeierstrassModel {
  std::array<RatFun, 5> a;       // a1, a2, a3, a4, a6
  std::optional<int> s_chart;    // weight n when written in s = 1/t

  const RatFun& a1() const { return a[0]; }
  const RatFun& a2() const { return a[1]; }
  const RatFun& a3() const { return a[2]; }
  const RatFun& a4() const { return a[3]; }
  const RatFun& a6() const { return a[4]; }

  static WeierstrassModel from(RatFun a1, RatFun a2, RatFun a3, RatFun a4, RatFun a6);
  /// y^2 = x^3 + a2 x^2 + a4 x + a6.
  static WeierstrassModel short_form(RatFun a2, RatFun a4, RatFun a6);

  bool is_integral() const;
  bool is_rational() const;
  bool is_constant() const;
  WeierstrassModel galois(int k) const;

  friend bool operator==(const WeierstrassModel& x, const WeierstrassModel& y) {
    return x.a == y.a && x.s_chart == y.s_chart;
  }
};

/// x = u^2 x' + r, y = u^3 y' + u^2 s x' + w.
struct CoordinateChange {
  RatFun u{1}, r{0}, s{0}, w{0};

  bool is_admissible() const;
  /// Apply this change first, then `then`.
  CoordinateChange compose(const CoordinateChange& then) const;
  CoordinateChange inverse() const;
};

WeierstrassModel transform(const WeierstrassModel& m, const CoordinateChange& c);

struct StandardInvariants {
  RatFun b2, b4, b6, b8, c4, c6, delta;
  /// c4^3 / delta; throws SingularModel when delta == 0.
  RatFun j() const;
};

StandardInvariants standard_invariants(const WeierstrassModel& m);

/// Roots in k(t) of the 2-division cubic x^3 + b2/4 x^2 + b4/2 x + b6/4
/// (exactly the x-coordinates of 2-torsion points). k = Q for rational
/// models, Q(zeta_8) otherwise.
std::vector<RatFun> two_division_roots(const WeierstrassModel& m);

struct MinimalityVerdict {
  bool minimal = true;
  std::optional<Place> place;  // first failing place when not minimal
};

/// Throws NonPolynomial when some a_i is not a polynomial.
MinimalityVerdict is_globally_minimal(const WeierstrassModel& m);

/// max_i ceil(deg a_i / i); the least n making the s-chart integral.
int chart_weight(const WeierstrassModel& m);

/// chi of a globally minimal model; NotMinimal otherwise.
int euler_characteristic(const WeierstrassModel& m);

/// a_i'(s) = s^{n i} a_i(1/s); DegreeOverflow when deg a_i > n i.
WeierstrassModel infinity_chart(const WeierstrassModel& m, int n);

struct MinimalModel {
  WeierstrassModel model;
  CoordinateChange change;  // from the input model to the minimal one
};

/// Integral, globally minimal model with a1 = a3 = 0 related to m by a change
/// over k(t). Clusters processed in ascending (degree, coefficients) order.
MinimalModel minimize(const WeierstrassModel& m);

enum class FiberKind { In, II, III, IV, InStar, IVStar, IIIStar, IIStar };

struct FiberType {
  FiberKind kind = FiberKind::In;
  int n = 0;  // index for In and In*
  std::string name() const;
  int components() const;
  int group_order() const;
  friend bool operator==(const FiberType&, const FiberType&) = default;
};

/// Type from valuations of c4 and delta (nullopt = +infinity for c4).
FiberType kodaira_type(std::optional<int> v_c4, int v_delta);

struct KodairaFiber {
  Place place;
  FiberType type;
  int components = 1;
  int group_order = 1;
  int count = 1;
  int v_delta = 0;
};

struct SurfaceSummary {
  int chi = 0;
  int pg = 0;
  std::vector<KodairaFiber> fibers;  // finite clusters sorted, infinity last
  /// Set when no singular fiber exists (everywhere good reduction).
  bool no_singular_fibers = false;
};

/// The model written in the s-chart with n = chi (the chart used for data at infinity).
WeierstrassModel model_at_infinity(const WeierstrassModel& m);

/// Fibers over clusters of the gcd-free basis of delta, c4, the 2-division
/// root differences and any extra sources (extra sources only refine
/// clusters; they never add good places).
SurfaceSummary classify_fibers(const WeierstrassModel& m, const std::vector<Poly>& extra_sources = {});

}  // namespace ellsurf
