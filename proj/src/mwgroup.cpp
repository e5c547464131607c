#include "ellsurf/mwgroup.hpp"

#include <algorithm>

#include "ellsurf/error.hpp"

namespace ellsurf {

const RatFun& CurvePoint::x() const {
  if (!xy_) fail(ErrorKind::InfinityInput, "the point at infinity has no coordinates");
  return xy_->first;
}

const RatFun& CurvePoint::y() const {
  if (!xy_) fail(ErrorKind::InfinityInput, "the point at infinity has no coordinates");
  return xy_->second;
}

bool CurvePoint::is_rational() const { return !xy_ || (xy_->first.is_rational() && xy_->second.is_rational()); }

CurvePoint CurvePoint::galois(int k) const {
  if (!xy_) return *this;
  return CurvePoint(xy_->first.galois(k), xy_->second.galois(k));
}

bool on_curve(const WeierstrassModel& m, const CurvePoint& p) {
  if (p.is_zero()) return true;
  const RatFun &x = p.x(), &y = p.y();
  RatFun lhs = y * y + m.a1() * x * y + m.a3() * y;
  RatFun rhs = ((x + m.a2()) * x + m.a4()) * x + m.a6();
  return lhs == rhs;
}

void require_on_curve(const WeierstrassModel& m, const CurvePoint& p) {
  if (!on_curve(m, p)) fail(ErrorKind::OffCurve, "point does not satisfy the Weierstrass equation");
}

namespace {

CurvePoint negate_unchecked(const WeierstrassModel& m, const CurvePoint& p) {
  if (p.is_zero()) return p;
  return CurvePoint(p.x(), -p.y() - m.a1() * p.x() - m.a3());
}

CurvePoint add_unchecked(const WeierstrassModel& m, const CurvePoint& p, const CurvePoint& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  const RatFun &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();
  RatFun lambda, nu;
  if (x1 == x2) {
    RatFun denom = RatFun(2) * y1 + m.a1() * x1 + m.a3();
    if (y1 != y2 || denom.is_zero()) return CurvePoint::zero();
    lambda = (RatFun(3) * x1 * x1 + RatFun(2) * m.a2() * x1 + m.a4() - m.a1() * y1) / denom;
    nu = (-pow(x1, 3) + m.a4() * x1 + RatFun(2) * m.a6() - m.a3() * y1) / denom;
  } else {
    RatFun dx = x2 - x1;
    lambda = (y2 - y1) / dx;
    nu = (y1 * x2 - y2 * x1) / dx;
  }
  RatFun x3 = lambda * lambda + m.a1() * lambda - m.a2() - x1 - x2;
  RatFun y3 = -(lambda + m.a1()) * x3 - nu - m.a3();
  return CurvePoint(x3, y3);
}

}  // namespace

CurvePoint negate(const WeierstrassModel& m, const CurvePoint& p) {
  require_on_curve(m, p);
  return negate_unchecked(m, p);
}

CurvePoint add_points(const WeierstrassModel& m, const CurvePoint& p, const CurvePoint& q) {
  require_on_curve(m, p);
  require_on_curve(m, q);
  return add_unchecked(m, p, q);
}

CurvePoint mul_scalar(const WeierstrassModel& m, const CurvePoint& p, long k) {
  require_on_curve(m, p);
  CurvePoint base = k < 0 ? negate_unchecked(m, p) : p;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  CurvePoint acc;
  while (e > 0) {
    if (e & 1UL) acc = add_unchecked(m, acc, base);
    e >>= 1UL;
    if (e > 0) base = add_unchecked(m, base, base);
  }
  return acc;
}

CurvePoint transform_point(const CurvePoint& p, const CoordinateChange& c) {
  if (p.is_zero()) return p;
  RatFun xr = p.x() - c.r;
  RatFun u2 = c.u * c.u;
  return CurvePoint(xr / u2, (p.y() - c.s * xr - c.w) / (u2 * c.u));
}

CurvePoint point_at_infinity_chart(const CurvePoint& p, int n) {
  if (p.is_zero()) return p;
  return CurvePoint(p.x().to_s_chart(2 * n), p.y().to_s_chart(3 * n));
}

Rational intersection_with_zero(const WeierstrassModel& m, const CurvePoint& p) {
  if (p.is_zero()) fail(ErrorKind::InfinityInput, "intersection with the zero section of O itself");
  int chi = euler_characteristic(m);
  require_on_curve(m, p);
  const RatFun& x = p.x();
  Rational total(x.den().degree(), 1);  // finite poles, counted with cluster degree
  if (!x.is_zero()) {
    int v_inf = 2 * chi - x.degree();
    if (v_inf < 0) total += -v_inf;
  }
  return total / 2;
}

namespace {

struct LocalData {
  RatFun x, eta, phi;
};

LocalData local_data(const WeierstrassModel& m, const CurvePoint& p) {
  const RatFun &x = p.x(), &y = p.y();
  RatFun eta = RatFun(2) * y + m.a1() * x + m.a3();
  RatFun phi = RatFun(3) * x * x + RatFun(2) * m.a2() * x + m.a4() - m.a1() * y;
  return {x, eta, phi};
}

bool positive(const std::optional<int>& v) { return !v || *v > 0; }

}  // namespace

namespace {

LocalContribution contribution_from(const LocalData& d, const Place& v, const KodairaFiber& fiber) {
  LocalContribution out{fiber.place, fiber.components, Rational(0), Rational(0), fiber.count};
  auto vx = valuation(v, d.x);
  if (vx && *vx < 0) return out;  // meets O itself
  auto v_eta = valuation(v, d.eta);
  if (!positive(v_eta) || !positive(valuation(v, d.phi))) return out;
  // The section passes through the singular point of the fiber.
  if (fiber.type.kind != FiberKind::In) {
    fail(ErrorKind::AdditiveFiber, "section meets a non-identity component of an additive fiber");
  }
  const int N = fiber.components;
  if (N == 1) return out;
  Rational half(N, 2);
  half.canonicalize();
  Rational n = v_eta ? std::min(Rational(*v_eta), half) : half;
  if (n.get_den() != 1) {
    fail(ErrorKind::AmbiguousComponent, "component index N/2 is not an integer for odd N");
  }
  out.n_index = n;
  out.value = n * (N - n) / N;
  return out;
}

LocalData infinity_data(const WeierstrassModel& m, const CurvePoint& p) {
  int chi = chart_weight(m);
  return local_data(infinity_chart(m, chi), point_at_infinity_chart(p, chi));
}

}  // namespace

LocalContribution local_contribution(const WeierstrassModel& m, const CurvePoint& p,
                                     const KodairaFiber& fiber) {
  if (p.is_zero()) fail(ErrorKind::InfinityInput, "local contribution of O");
  if (fiber.place.is_infinity()) return contribution_from(infinity_data(m, p), Place::finite(Poly::t()), fiber);
  return contribution_from(local_data(m, p), fiber.place, fiber);
}

namespace {

// Splits a squarefree cluster into pieces on which v(r) is constant.
std::vector<Poly> split_by_valuation(const Poly& cluster, Poly r) {
  std::vector<Poly> out;
  Poly rest = cluster;
  while (true) {
    Poly g = poly_gcd(rest, r);
    if (g.degree() <= 0) break;
    Poly free = rest / g;
    if (free.degree() > 0) out.push_back(free.monic());
    rest = g.monic();
    r = r / rest;
  }
  out.push_back(rest.monic());
  return out;
}

}  // namespace

std::vector<LocalContribution> local_contributions(const WeierstrassModel& m, const CurvePoint& p) {
  if (p.is_zero()) return {};
  LocalData d = local_data(m, p);
  // Fiber types are constant on each discriminant cluster; only the section
  // data can differ between its roots, so the clusters are split by it.
  SurfaceSummary summary = classify_fibers(m);
  std::vector<LocalContribution> out;
  std::optional<LocalContribution> at_infinity;
  for (const auto& fiber : summary.fibers) {
    if (fiber.place.is_infinity()) {
      at_infinity = contribution_from(infinity_data(m, p), Place::finite(Poly::t()), fiber);
      continue;
    }
    std::vector<Poly> pieces{fiber.place.cluster()};
    for (const RatFun* r : {&d.x, &d.eta, &d.phi}) {
      if (r->is_zero()) continue;
      for (const Poly* part : {&r->num(), &r->den()}) {
        if (part->degree() <= 0) continue;
        std::vector<Poly> next;
        for (const auto& piece : pieces) {
          for (auto& q : split_by_valuation(piece, *part)) next.push_back(std::move(q));
        }
        pieces = std::move(next);
      }
    }
    for (const auto& piece : pieces) {
      KodairaFiber sub = fiber;
      sub.place = Place::finite(piece);
      sub.count = piece.degree();
      out.push_back(contribution_from(d, sub.place, sub));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const LocalContribution& a, const LocalContribution& b) { return a.place < b.place; });
  if (at_infinity) out.push_back(*at_infinity);
  return out;
}

Rational height(const WeierstrassModel& m, const CurvePoint& p) {
  if (p.is_zero()) {
    euler_characteristic(m);
    return Rational(0);
  }
  Rational po = intersection_with_zero(m, p);
  int chi = chart_weight(m);
  Rational correction = 0;
  for (const auto& c : local_contributions(m, p)) correction += c.value * c.count;
  return Rational(2 * chi) + 2 * po - correction;
}

Rational pairing(const WeierstrassModel& m, const CurvePoint& p, const CurvePoint& q) {
  if (p == q) return height(m, p);
  CurvePoint sum = add_points(m, p, q);
  return (height(m, sum) - height(m, p) - height(m, q)) / 2;
}

Rational determinant(std::vector<std::vector<Rational>> a) {
  const size_t n = a.size();
  Rational det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

GramReport GramReport::scaled(const Rational& factor) const {
  GramReport out = *this;
  for (auto& row : out.matrix) {
    for (auto& v : row) v *= factor;
  }
  out.det = determinant(out.matrix);
  return out;
}

GramReport gram(const WeierstrassModel& m, const std::vector<CurvePoint>& points) {
  const size_t n = points.size();
  std::vector<Rational> heights(n);
  for (size_t i = 0; i < n; ++i) heights[i] = height(m, points[i]);
  GramReport out;
  out.matrix.assign(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i) {
    out.matrix[i][i] = heights[i];
    for (size_t j = i + 1; j < n; ++j) {
      Rational v = 0;
      if (!points[i].is_zero() && !points[j].is_zero()) {
        CurvePoint sum = add_points(m, points[i], points[j]);
        v = (height(m, sum) - heights[i] - heights[j]) / 2;
      }
      out.matrix[i][j] = out.matrix[j][i] = v;
    }
  }
  out.det = determinant(out.matrix);
  return out;
}

}  // namespace ellsurf
