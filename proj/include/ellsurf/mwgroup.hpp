#pragma once

// Points over k(t), the chord-tangent law and the height pairing on the
// associated elliptic surface.

#include <optional>
#include <utility>
#include <vector>

#include "ellsurf/weierstrass.hpp"

namespace ellsurf {

class CurvePoint {
 public:
  CurvePoint() = default;  // the point at infinity O
  CurvePoint(RatFun x, RatFun y) : xy_(std::make_pair(std::move(x), std::move(y))) {}

  static CurvePoint zero() { return CurvePoint(); }

  bool is_zero() const { return !xy_.has_value(); }
  const RatFun& x() const;
  const RatFun& y() const;
  bool is_rational() const;
  CurvePoint galois(int k) const;

  friend bool operator==(const CurvePoint& a, const CurvePoint& b) { return a.xy_ == b.xy_; }

 private:
  std::optional<std::pair<RatFun, RatFun>> xy_;
};

bool on_curve(const WeierstrassModel& m, const CurvePoint& p);
/// Throws OffCurve unless p lies on m.
void require_on_curve(const WeierstrassModel& m, const CurvePoint& p);

CurvePoint negate(const WeierstrassModel& m, const CurvePoint& p);
CurvePoint add_points(const WeierstrassModel& m, const CurvePoint& p, const CurvePoint& q);
CurvePoint mul_scalar(const WeierstrassModel& m, const CurvePoint& p, long k);

/// Image of p under the change of coordinates used by transform(m, c).
CurvePoint transform_point(const CurvePoint& p, const CoordinateChange& c);
/// Coordinates (x(1/s) s^{2n}, y(1/s) s^{3n}) matching infinity_chart(m, n).
CurvePoint point_at_infinity_chart(const CurvePoint& p, int n);

/// Pbar . Obar = -1/2 sum_v min(0, v(x)) over all places, infinity in the
/// s-chart with n = chi. Requires a globally minimal model and p != O.
Rational intersection_with_zero(const WeierstrassModel& m, const CurvePoint& p);

struct LocalContribution {
  Place place;
  int fiber_n = 1;          // N, number of components
  Rational n_index;         // component index, 0 for the identity component
  Rational value;           // n (N - n) / N
  int count = 1;            // roots in the cluster
};

/// Correction term at one fiber. The fiber's cluster must not split against
/// the point's coordinates (use local_contributions for the full sum).
LocalContribution local_contribution(const WeierstrassModel& m, const CurvePoint& p,
                                     const KodairaFiber& fiber);

/// All nonzero-capable contributions, with fiber clusters refined by the
/// point's coordinate data. Sorted by place.
std::vector<LocalContribution> local_contributions(const WeierstrassModel& m, const CurvePoint& p);

/// <P,P> = 2 chi + 2 Pbar.Obar - sum_v c_v(P,P).
Rational height(const WeierstrassModel& m, const CurvePoint& p);
/// Polarization of the height.
Rational pairing(const WeierstrassModel& m, const CurvePoint& p, const CurvePoint& q);

struct GramReport {
  std::vector<std::vector<Rational>> matrix;
  Rational det;
  GramReport scaled(const Rational& factor) const;
};

GramReport gram(const WeierstrassModel& m, const std::vector<CurvePoint>& points);
Rational determinant(std::vector<std::vector<Rational>> a);

}  // namespace ellsurf
