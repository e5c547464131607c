#pragma once

// Conics alpha a^2 + beta b^2 = gamma c^2 over Q: parametrization through a
// rational point, the attached curves y^2 = x (x - alpha a^2)(x - beta b^2),
// their specializations and rank lower bounds.

#include <optional>
#include <string>
#include <vector>

#include "ellsurf/mwgroup.hpp"

namespace ellsurf {

struct Quadric {
  Rational alpha, beta, gamma;
  Rational abc_product;    // alpha beta gamma
  Rational side_quantity;  // beta^2 + 4 alpha gamma

  /// DegenerateConic when alpha beta gamma = 0 or beta^2 + 4 alpha gamma = 0.
  Quadric(Rational a, Rational b, Rational c);

  /// alpha a^2 + beta b^2 - gamma c^2.
  Rational eval(const Rational& a, const Rational& b, const Rational& c) const;
  Poly eval(const Poly& a, const Poly& b, const Poly& c) const;
};

struct RationalTriple {
  Rational a, b, c;
  friend bool operator==(const RationalTriple&, const RationalTriple&) = default;
};

struct ParamSolution {
  Poly f, g, h;
  RationalTriple base_point;
};

/// Second intersection of the line through p0 in direction d0 + t d1, for
/// the first pair of small direction vectors giving 2 = deg h = deg f >= deg g.
/// PointNotOnQuadric when p0 = 0 or q(p0) != 0.
ParamSolution parametrize(const Quadric& q, const RationalTriple& p0);

/// alpha f^2 + beta g^2 = gamma h^2 exactly, f, g, h in Q[t].
bool is_parametrization(const Quadric& q, const Poly& f, const Poly& g, const Poly& h);

struct QuadricFamily {
  Quadric quadric;
  ParamSolution sol;
  WeierstrassModel model;        // y^2 = x (x - alpha f^2)(x - beta g^2) over Q(t)
  std::optional<CurvePoint> q1;  // (-beta g^2, beta g^2 h w1), w1^2 = -2 gamma
  std::optional<CurvePoint> q2;  // (gamma h^2, f g h w2),      w2^2 = alpha beta gamma
  int rank_bound = 0;            // number of available templates
};

/// Templates are instantiated only when the square roots are rational; the
/// negative roots are used.
QuadricFamily family_of(const Quadric& q, const ParamSolution& sol);

struct RankCertificate {
  int rank_lower_bound = 0;  // valid outside a finite set of exceptions
  bool on_curve = false;
  bool non_torsion = false;
  /// r >= this over Q with no exceptions, from the images of the points
  /// and the 2-torsion under x -> (x, x - e) into (Q^x / Q^x2)^2.
  int descent_rank_bound = 0;
  std::string caveat = "silverman-finite-exceptions";

  /// "rank >= 3 (finite exceptions)".
  std::string describe() const;
};

struct Specialization {
  Rational t0;
  RationalTriple triple;
  WeierstrassModel curve;
  std::vector<CurvePoint> points;
  std::vector<std::string> labels;
  RankCertificate certificate;
};

/// ParametrizationPole when h(t0) = 0, SingularSpecialization when the
/// specialized curve is singular.
Specialization specialize(const QuadricFamily& fam, const Rational& t0);

struct Rank3Member {
  Rational t0;
  RationalTriple triple;  // (f1(u), g1(u), h1(u)), u = -16 t0 / (t0^2 - 10)
  WeierstrassModel curve; // y^2 = x (x + 2 a^2)(x - b^2)
  Rational witness;       // w >= 0, w^2 = 2 (a - 32)(64 a + b^2)
  std::vector<CurvePoint> points;  // Q1, Q2, Q3
  RankCertificate certificate;
};

/// f1 = t^2 + 32, g1 = -16 t, h1 = -(t^2 - 32).
ParamSolution rank3_parametrization();

/// DegenerateMember for t0 = 0, t0^2 = 10, or a member whose curve is
/// singular or whose points fail to be of infinite order.
Rank3Member rank3_member(const Rational& t0);

/// Dimension of the span of the images of the points under the 2-descent
/// map of y^2 = x (x - A)(x - B) over Q, together with the 2-torsion,
/// minus 2. A lower bound for the rank.
int descent_rank_bound(const Rational& A, const Rational& B, const std::vector<CurvePoint>& points);

}  // namespace ellsurf
