#pragma once

// Pythagorean polynomial triples f^2 + g^2 = h^2, the curves
// y^2 = x (x - f^2)(x - g^2), their canonical points and 2-descent images.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/mwgroup.hpp"

namespace ellsurf {

struct PythagoreanTriple {
  Poly f, g, h;
  std::optional<std::pair<Poly, Poly>> generators;  // (h1, h2) when built from them

  bool is_rational() const { return f.is_rational() && g.is_rational() && h.is_rational(); }
  /// deg f = 2, 1 <= deg g <= 2: the hypotheses of the structure theorem.
  bool theorem_grade() const;
};

/// f = (h1^2 + h2^2)/2, g = (h1^2 - h2^2)/(2i), h = h1 h2.
PythagoreanTriple triple_from_generators(const Poly& h1, const Poly& h2);
/// Validates f^2 + g^2 = h^2 (OutOfFamily) and gcd(f, g) = 1 (NotCoprime).
PythagoreanTriple make_triple(Poly f, Poly g, Poly h);

/// y^2 = x (x - f^2)(x - g^2); SingularModel when f g (f^2 - g^2) = 0.
WeierstrassModel curve_of(const PythagoreanTriple& t);

struct CanonicalPoints {
  CurvePoint P1, P2, T1, T2, Q1, Q2;
};

/// Fixed branches: i = zeta^2, sqrt2 = zeta - zeta^3, sqrt(-2) = zeta + zeta^3.
/// Verifies every point is on the curve and Q1 = -2 P1, Q2 = -2 P2.
CanonicalPoints canonical_points(const PythagoreanTriple& t);

/// Class in K^x / (K^x)^2 for K = Qbar(t): constants are squares, so a class
/// is its monic squarefree representative.
struct SquareClass {
  Poly representative{1};
  bool is_trivial() const { return representative.degree() == 0; }
  friend bool operator==(const SquareClass&, const SquareClass&) = default;
};

SquareClass square_class(const RatFun& r);
SquareClass operator*(const SquareClass& a, const SquareClass& b);

using DescentImage = std::pair<SquareClass, SquareClass>;

/// psi(x, y) = (x, x - f^2). O maps to the trivial pair; the 2-torsion
/// points with x = 0 or x = f^2 are rejected (UnsupportedInput).
DescentImage descent_image(const PythagoreanTriple& t, const CurvePoint& p);

/// F2-linear independence of the classes.
bool square_class_independent(const std::vector<SquareClass>& classes);
bool descent_images_independent(const std::vector<DescentImage>& images);

/// Closed-form images of (P1, P2, T1, T2) in terms of the generators (h1, h2).
std::array<DescentImage, 4> reference_descent_images(const Poly& h1, const Poly& h2);

// ---------------------------------------------------------------------------
// Certificates

struct CertificateStage {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Certificate {
  std::vector<CertificateStage> stages;
  bool passed() const;
  /// Name of the first failing stage, empty when all passed.
  std::string failing_stage() const;
  void add(std::string name, bool ok, std::string detail);
};

struct QbarCertificate {
  Certificate certificate;
  SurfaceSummary fibers;
  int trivial_rank = 0;     // 2 + sum count (N - 1)
  int closed_form_trivial = 0;  // 8 + deg(f^2 - g^2) + 3 deg g + max(N_inf - 1, 0)
  int rank_upper_bound = 0;
  int rank_lower_bound = 0;
  GramReport gram;          // of (P1, P2)
  GramReport scaled_gram;   // 4 * gram
  std::vector<int> torsion_structure;
  int index_bound = 0;      // n with n^2 | disc(scaled lattice)
  std::array<DescentImage, 4> images;
  std::vector<CurvePoint> generators;  // P1, P2, T1, T2
};

/// Structure of E(Qbar(t)) for a theorem-grade triple with f^2 - g^2 separable.
QbarCertificate mw_certificate_qbar(const PythagoreanTriple& t);

struct GaloisRow {
  std::string point;    // name of the canonical point
  std::string image;    // expression of tau(point) in the generators
};

struct QtStructure {
  Certificate certificate;
  int rank = 0;
  std::vector<int> torsion_structure;
  int fixed_index = 1;                           // [K : pi(H)], see below
  std::vector<CurvePoint> generators;            // free generators first
  std::vector<std::string> generator_names;      // in terms of P1, P2, T1, T2
  std::vector<GaloisRow> tau_table;
};

/// Structure of E(Q(t)) as the points of E(Qbar(t)) = <P1, P2, T1, T2> fixed
/// by Gal(Q(zeta8)/Q). K is the lattice of free coordinates fixed by every
/// automorphism, pi(H) the coordinates of rational points. Needs a curve
/// with rational coefficients (NonRationalCoefficients otherwise); f, g, h
/// themselves may lie in Q(zeta8)[t]. With `claimed` nonempty the claimed
/// points are checked to generate E(Q(t)) and reported; otherwise a basis is
/// computed.
QtStructure mw_structure_qt(const PythagoreanTriple& t, const std::vector<CurvePoint>& claimed = {});

/// The rank-3 example over Q(t): E3 : y^2 = x (x - (u^2 - 1)^2)(x - 4u^2) with
/// u = 2t / (5 + t^2), and E4 = its conjugate under t -> t / sqrt(-2) scaled
/// by (x, y) -> (s^2 x, s^3 y), s = -32 sqrt(-2). The structure of E3 over
/// Qbar(t) (rank 3, generated by P1, P2, P3, T1, T2) is an input.
struct RankThreeExample {
  Certificate certificate;
  WeierstrassModel e3, e4;
  std::vector<CurvePoint> e4_generators;   // 2P1, 2P2, P3 (free), T1, 2T2
  std::vector<std::string> generator_names;
  GramReport gram;                          // free part on E4, minimal model
  int rank = 0;
  std::vector<int> torsion_structure;
};

RankThreeExample verify_rank_three_example();

}  // namespace ellsurf
