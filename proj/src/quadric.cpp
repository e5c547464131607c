#include "ellsurf/quadric.hpp"

#include <array>

#include "ellsurf/error.hpp"
#include "ellsurf/torsion.hpp"

namespace ellsurf {

namespace {

using Vec3 = std::array<Rational, 3>;

Poly constant(const Rational& c) { return Poly(FieldElem(c)); }

Rational det3(const Vec3& u, const Vec3& v, const Vec3& w) {
  return u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
         u[2] * (v[0] * w[1] - v[1] * w[0]);
}

// Direction candidates in scan order: unit vectors first, then small
// combinations with entries in {-1, 0, 1, 2}.
std::vector<Vec3> directions() {
  std::vector<Vec3> out = {Vec3{0, 1, 0}, Vec3{1, 0, 0}, Vec3{0, 0, 1}};
  const int vals[] = {1, -1, 2, 0};
  for (int a : vals) {
    for (int b : vals) {
      for (int c : vals) {
        Vec3 v{a, b, c};
        if (a == 0 && b == 0 && c == 0) continue;
        if ((a != 0) + (b != 0) + (c != 0) == 1 && (a == 1 || b == 1 || c == 1)) continue;
        out.push_back(v);
      }
    }
  }
  return out;
}

Rational at(const RatFun& r, const Rational& t0) { return r.eval(FieldElem(t0)).rational(); }

CurvePoint rational_point(const Rational& x, const Rational& y) {
  return CurvePoint(RatFun(FieldElem(x)), RatFun(FieldElem(y)));
}

WeierstrassModel split_curve(const Rational& A, const Rational& B) {
  return WeierstrassModel::short_form(RatFun(FieldElem(-(A + B))), RatFun(FieldElem(A * B)), RatFun());
}

bool is_rational_square(const Rational& c) { return c != 0 && is_square_rational(c).has_value(); }

std::pair<Rational, Rational> descent_pair(const Rational& A, const Rational& B, const Rational& x) {
  if (x == 0) return {A * B, -A};
  if (x == A) return {A, A * (A - B)};
  return {x, x - A};
}

void fill_certificate(RankCertificate& cert, const WeierstrassModel& m, const Rational& A, const Rational& B,
                      const std::vector<CurvePoint>& pts) {
  cert.on_curve = true;
  cert.non_torsion = true;
  for (const auto& p : pts) {
    if (!on_curve(m, p)) {
      cert.on_curve = false;
      cert.non_torsion = false;
      continue;
    }
    if (!is_nontorsion_Q(m, p)) cert.non_torsion = false;
  }
  cert.descent_rank_bound = cert.on_curve ? descent_rank_bound(A, B, pts) : 0;
}

}  // namespace

Quadric::Quadric(Rational a, Rational b, Rational c)
    : alpha(std::move(a)), beta(std::move(b)), gamma(std::move(c)) {
  abc_product = alpha * beta * gamma;
  side_quantity = beta * beta + 4 * alpha * gamma;
  if (abc_product == 0) fail(ErrorKind::DegenerateConic, "alpha beta gamma = 0");
  if (side_quantity == 0) fail(ErrorKind::DegenerateConic, "beta^2 + 4 alpha gamma = 0");
}

Rational Quadric::eval(const Rational& a, const Rational& b, const Rational& c) const {
  return alpha * a * a + beta * b * b - gamma * c * c;
}

Poly Quadric::eval(const Poly& a, const Poly& b, const Poly& c) const {
  return constant(alpha) * a * a + constant(beta) * b * b - constant(gamma) * c * c;
}

bool is_parametrization(const Quadric& q, const Poly& f, const Poly& g, const Poly& h) {
  return f.is_rational() && g.is_rational() && h.is_rational() && q.eval(f, g, h).is_zero();
}

ParamSolution parametrize(const Quadric& q, const RationalTriple& p0) {
  if (p0.a == 0 && p0.b == 0 && p0.c == 0) fail(ErrorKind::PointNotOnQuadric, "base point is (0, 0, 0)");
  if (q.eval(p0.a, p0.b, p0.c) != 0) fail(ErrorKind::PointNotOnQuadric, "base point is not on the conic");
  const Vec3 P{p0.a, p0.b, p0.c};
  const Vec3 w{q.alpha, q.beta, -q.gamma};
  // Q(P + l D) = 2 l B(P, D) + l^2 Q(D), so the second point is Q(D) P - 2 B(P, D) D.
  const auto dirs = directions();
  for (const auto& d0 : dirs) {
    for (const auto& d1 : dirs) {
      if (det3(P, d0, d1) == 0) continue;
      std::array<Poly, 3> D;
      for (int i = 0; i < 3; ++i) D[i] = constant(d0[i]) + constant(d1[i]) * Poly::t();
      Poly QD, BPD;
      for (int i = 0; i < 3; ++i) {
        QD += constant(w[i]) * D[i] * D[i];
        BPD += constant(w[i] * P[i]) * D[i];
      }
      std::array<Poly, 3> X;
      for (int i = 0; i < 3; ++i) X[i] = QD * constant(P[i]) - Poly(2) * BPD * D[i];
      if (X[0].degree() != 2 || X[2].degree() != 2) continue;
      if (!is_parametrization(q, X[0], X[1], X[2])) {
        fail(ErrorKind::CertificateFailed, "pencil parametrization identity failed");
      }
      return ParamSolution{X[0], X[1], X[2], p0};
    }
  }
  fail(ErrorKind::DegenerateConic, "no pencil direction gives deg f = deg h = 2");
}

QuadricFamily family_of(const Quadric& q, const ParamSolution& sol) {
  if (!is_parametrization(q, sol.f, sol.g, sol.h)) {
    fail(ErrorKind::OutOfFamily, "alpha f^2 + beta g^2 != gamma h^2");
  }
  Poly A = constant(q.alpha) * sol.f * sol.f, B = constant(q.beta) * sol.g * sol.g;
  if (A.is_zero() || B.is_zero() || A == B) fail(ErrorKind::SingularModel, "the family curve is singular");
  QuadricFamily fam{q, sol, WeierstrassModel::short_form(RatFun(-(A + B)), RatFun(A * B), RatFun()),
                    std::nullopt, std::nullopt, 0};
  if (auto w1 = is_square_rational(-2 * q.gamma); w1 && *w1 != 0) {
    Poly bg2 = constant(q.beta) * sol.g * sol.g;
    fam.q1 = CurvePoint(RatFun(-bg2), RatFun(bg2 * sol.h * constant(-*w1)));
  }
  if (auto w2 = is_square_rational(q.abc_product); w2 && *w2 != 0) {
    fam.q2 = CurvePoint(RatFun(constant(q.gamma) * sol.h * sol.h), RatFun(sol.f * sol.g * sol.h * constant(-*w2)));
  }
  for (const auto& p : {fam.q1, fam.q2}) {
    if (p && !on_curve(fam.model, *p)) fail(ErrorKind::CertificateFailed, "template point is off the curve");
  }
  fam.rank_bound = (fam.q1 ? 1 : 0) + (fam.q2 ? 1 : 0);
  return fam;
}

std::string RankCertificate::describe() const {
  return "rank >= " + std::to_string(rank_lower_bound) + " (finite exceptions)";
}

Specialization specialize(const QuadricFamily& fam, const Rational& t0) {
  const FieldElem x0(t0);
  const Rational c = fam.sol.h.eval(x0).rational();
  if (c == 0) fail(ErrorKind::ParametrizationPole, "h(t0) = 0");
  Specialization s;
  s.t0 = t0;
  s.triple = {fam.sol.f.eval(x0).rational(), fam.sol.g.eval(x0).rational(), c};
  const Quadric& q = fam.quadric;
  Rational A = q.alpha * s.triple.a * s.triple.a, B = q.beta * s.triple.b * s.triple.b;
  if (A == 0 || B == 0 || A == B) fail(ErrorKind::SingularSpecialization, "the specialized curve is singular");
  s.curve = split_curve(A, B);
  if (fam.q1) {
    s.points.push_back(rational_point(at(fam.q1->x(), t0), at(fam.q1->y(), t0)));
    s.labels.push_back("Q1");
  }
  if (fam.q2) {
    s.points.push_back(rational_point(at(fam.q2->x(), t0), at(fam.q2->y(), t0)));
    s.labels.push_back("Q2");
  }
  s.certificate.rank_lower_bound = fam.rank_bound;
  fill_certificate(s.certificate, s.curve, A, B, s.points);
  return s;
}

ParamSolution rank3_parametrization() {
  Poly t = Poly::t();
  return ParamSolution{t * t + Poly(32), Poly(-16) * t, -(t * t - Poly(32)), RationalTriple{1, 0, 1}};
}

Rank3Member rank3_member(const Rational& t0) {
  if (t0 == 0) fail(ErrorKind::DegenerateMember, "t0 = 0 gives b = 0");
  const Rational den = t0 * t0 - 10;
  if (den == 0) fail(ErrorKind::DegenerateMember, "t0^2 = 10");
  const Rational u = -16 * t0 / den;
  static const QuadricFamily fam = family_of(Quadric(-2, 1, -2), rank3_parametrization());
  Specialization s;
  try {
    s = specialize(fam, u);
  } catch (const Error& e) {
    fail(ErrorKind::DegenerateMember, std::string("degenerate member: ") + e.what());
  }
  Rank3Member r;
  r.t0 = t0;
  r.triple = s.triple;
  r.curve = s.curve;
  const Rational& a = r.triple.a;
  const Rational& b = r.triple.b;
  if (-2 * a * a + b * b != -2 * r.triple.c * r.triple.c) {
    fail(ErrorKind::CertificateFailed, "-2 a^2 + b^2 != -2 c^2");
  }
  auto w = is_square_rational(2 * (a - 32) * (64 * a + b * b));
  if (!w || *w == 0) fail(ErrorKind::DegenerateMember, "2 (a - 32)(64 a + b^2) is not a nonzero square");
  r.witness = *w;
  r.points = s.points;
  r.points.push_back(rational_point(-64 * a, 8 * a * r.witness));
  r.certificate.rank_lower_bound = 3;
  fill_certificate(r.certificate, r.curve, -2 * a * a, b * b, r.points);
  if (!r.certificate.on_curve) fail(ErrorKind::CertificateFailed, "a rank-3 point is off the curve");
  if (!r.certificate.non_torsion) fail(ErrorKind::DegenerateMember, "a rank-3 point has finite order");
  return r;
}

int descent_rank_bound(const Rational& A, const Rational& B, const std::vector<CurvePoint>& points) {
  std::vector<std::pair<Rational, Rational>> images = {descent_pair(A, B, 0), descent_pair(A, B, A)};
  for (const auto& p : points) {
    if (p.is_zero()) continue;
    if (!p.x().is_constant() || !p.x().is_rational()) fail(ErrorKind::UnsupportedInput, "point not over Q");
    images.push_back(descent_pair(A, B, p.x().num().coeff(0).rational()));
  }
  const std::size_t k = images.size();
  if (k > 20) fail(ErrorKind::UnsupportedInput, "too many points for subset enumeration");
  // The kernel of F2^k -> (Q^x / Q^x2)^2 is counted directly.
  std::size_t kernel = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Rational u = 1, v = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        u *= images[i].first;
        v *= images[i].second;
      }
    }
    if (is_rational_square(u) && is_rational_square(v)) ++kernel;
  }
  int dim = static_cast<int>(k);
  while (kernel > 1) {
    kernel >>= 1;
    --dim;
  }
  return dim - 2;
}

}  // namespace ellsurf
