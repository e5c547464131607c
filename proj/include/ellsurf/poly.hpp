#pragma once

// Univariate polynomials and rational functions over Q or Q(zeta_8),
// valuations at places of P^1, and gcd-free bases used as place clusters.

#include <climits>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "ellsurf/fields.hpp"

namespace ellsurf {

/// Degree reported for the zero polynomial.
inline constexpr int kDegreeMinusInfinity = INT_MIN;

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<FieldElem> coeffs);
  Poly(const FieldElem& c);  // NOLINT: constants promote
  Poly(int c) : Poly(FieldElem(c)) {}  // NOLINT

  static Poly monomial(const FieldElem& c, int degree);
  static Poly t() { return monomial(FieldElem(1), 1); }

  const std::vector<FieldElem>& coeffs() const { return c_; }
  /// Coefficient of t^i (zero beyond the degree).
  FieldElem coeff(int i) const;

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return c_.empty() ? kDegreeMinusInfinity : static_cast<int>(c_.size()) - 1; }
  const FieldElem& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  bool is_rational() const;

  Poly monic() const;
  Poly derivative() const;
  FieldElem eval(const FieldElem& x) const;
  Poly galois(int k) const;
  /// p(c*t).
  Poly scale_variable(const FieldElem& c) const;
  /// t^n p(1/t); requires n >= degree.
  Poly reverse(int n) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  /// Degree first, then coefficients from the top; deterministic ordering only.
  friend bool operator<(const Poly& a, const Poly& b);

 private:
  void trim();
  std::vector<FieldElem> c_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly pow(const Poly& p, int e);

/// Euclidean division over the coefficient field; throws DivisionByZero on b == 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact quotient part
Poly operator%(const Poly& a, const Poly& b);
bool divides(const Poly& d, const Poly& p);

/// Monic gcd; throws BothZero when both inputs vanish.
Poly poly_gcd(const Poly& p, const Poly& q);

struct SquarefreeFactor {
  Poly factor;
  int multiplicity;
};
/// p = lc * prod factor^mult with pairwise coprime monic squarefree factors,
/// ascending multiplicity. Throws ZeroInput on p == 0.
std::vector<SquarefreeFactor> squarefree_decompose(const Poly& p);

Poly squarefree_part(const Poly& p);
FieldElem resultant(const Poly& p, const Poly& q);
/// Standard discriminant (-1)^{n(n-1)/2} res(p, p') / lc(p); ConstantInput on deg < 1.
FieldElem discriminant(const Poly& p);
/// Square root in k[t] with k = Q(zeta_8), if one exists.
std::optional<Poly> poly_sqrt(const Poly& p);

std::ostream& operator<<(std::ostream& os, const Poly& p);

// ---------------------------------------------------------------------------

/// Reduced quotient num/den with den monic.
class RatFun {
 public:
  RatFun() : num_(), den_(1) {}
  RatFun(Poly num);  // NOLINT
  RatFun(const FieldElem& c) : RatFun(Poly(c)) {}  // NOLINT
  RatFun(int c) : RatFun(Poly(c)) {}  // NOLINT
  RatFun(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  bool is_rational() const { return num_.is_rational() && den_.is_rational(); }
  /// deg num - deg den (minus infinity for zero).
  int degree() const;

  RatFun operator-() const;
  RatFun& operator+=(const RatFun& o);
  RatFun& operator-=(const RatFun& o);
  RatFun& operator*=(const RatFun& o);
  RatFun& operator/=(const RatFun& o);
  RatFun inverse() const;

  /// Evaluate at t0; DivisionByZero at a pole.
  FieldElem eval(const FieldElem& t0) const;
  RatFun galois(int k) const;
  RatFun scale_variable(const FieldElem& c) const;
  /// r(1/s) * s^shift as a rational function of s.
  RatFun to_s_chart(int shift) const;
  /// Substitute t -> q(t).
  RatFun compose(const RatFun& q) const;

  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

RatFun operator+(RatFun a, const RatFun& b);
RatFun operator-(RatFun a, const RatFun& b);
RatFun operator*(RatFun a, const RatFun& b);
RatFun operator/(RatFun a, const RatFun& b);
RatFun pow(const RatFun& r, int e);
std::optional<RatFun> ratfun_sqrt(const RatFun& r);

std::ostream& operator<<(std::ostream& os, const RatFun& r);

// ---------------------------------------------------------------------------

/// A finite place is the Galois-stable set of roots of a monic squarefree
/// cluster polynomial; per-root data is constant across the cluster.
class Place {
 public:
  static Place infinity() { return Place(); }
  static Place finite(Poly cluster);

  bool is_infinity() const { return !cluster_.has_value(); }
  const Poly& cluster() const { return *cluster_; }
  /// Number of points of P^1 represented.
  int count() const { return is_infinity() ? 1 : cluster_->degree(); }

  friend bool operator==(const Place& a, const Place& b) { return a.cluster_ == b.cluster_; }
  /// Finite clusters by (degree, coefficients), infinity last.
  friend bool operator<(const Place& a, const Place& b);

 private:
  Place() = default;
  std::optional<Poly> cluster_;
};

/// Order of vanishing; nullopt stands for +infinity (r == 0). At a finite
/// place throws ClusterSplits when the cluster does not divide num/den
/// uniformly. chart_weight shifts the result by a caller-provided amount.
std::optional<int> valuation(const Place& v, const RatFun& r, int chart_weight = 0);
std::optional<int> valuation(const Place& v, const Poly& p);

struct PlaceBasis {
  std::vector<Poly> clusters;  // monic, squarefree, pairwise coprime, sorted
  std::vector<Poly> sources;
};

/// Refine sources into pairwise coprime squarefree clusters.
PlaceBasis gcd_free_basis(const std::vector<Poly>& sources);

}  // namespace ellsurf
