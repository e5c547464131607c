// Mordell-Weil certificates for the family: the structure over Qbar(t),
// Galois descent to Q(t), and the rank-3 twist example.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <numeric>
#include <sstream>

#include "ellsurf/error.hpp"
#include "ellsurf/family.hpp"
#include "ellsurf/torsion.hpp"

namespace ellsurf {

namespace {

using IntVec = std::vector<long>;
using IntMat = std::vector<IntVec>;

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (int x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
  return "[" + out + "]";
}

std::string rat_str(const Rational& q) { return q.get_str(); }

// Integer kernel of a (rows x d) matrix by unimodular column operations.
std::vector<IntVec> integer_kernel(IntMat a, size_t d) {
  IntMat u(d, IntVec(d, 0));
  for (size_t i = 0; i < d; ++i) u[i][i] = 1;
  auto col_op = [&](size_t dst, size_t src, long k) {  // col dst -= k col src
    for (auto& row : a) row[dst] -= k * row[src];
    for (auto& row : u) row[dst] -= k * row[src];
  };
  auto col_swap = [&](size_t x, size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  size_t piv = 0;
  for (size_t r = 0; r < a.size() && piv < d; ++r) {
    for (;;) {
      // smallest nonzero entry of row r among columns >= piv goes to piv
      size_t best = d;
      for (size_t c = piv; c < d; ++c) {
        if (a[r][c] != 0 && (best == d || std::labs(a[r][c]) < std::labs(a[r][best]))) best = c;
      }
      if (best == d) break;
      col_swap(piv, best);
      bool clean = true;
      for (size_t c = piv + 1; c < d; ++c) {
        if (a[r][c] == 0) continue;
        col_op(c, piv, a[r][c] / a[r][piv]);
        if (a[r][c] != 0) clean = false;
      }
      if (clean) {
        ++piv;
        break;
      }
    }
  }
  std::vector<IntVec> out;
  for (size_t c = piv; c < d; ++c) {
    IntVec v(d);
    for (size_t i = 0; i < d; ++i) v[i] = u[i][c];
    out.push_back(v);
  }
  return out;
}

// Basis (echelon rows) of the lattice spanned by the given vectors.
std::vector<IntVec> lattice_basis(std::vector<IntVec> rows, size_t d) {
  std::vector<IntVec> out;
  for (size_t c = 0; c < d; ++c) {
    for (;;) {
      size_t best = rows.size();
      for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][c] != 0 && (best == rows.size() || std::labs(rows[i][c]) < std::labs(rows[best][c]))) best = i;
      }
      if (best == rows.size()) break;
      bool clean = true;
      for (size_t i = 0; i < rows.size(); ++i) {
        if (i == best || rows[i][c] == 0) continue;
        long k = rows[i][c] / rows[best][c];
        for (size_t j = 0; j < d; ++j) rows[i][j] -= k * rows[best][j];
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) {
        IntVec v = rows[best];
        if (v[c] < 0) {
          for (auto& x : v) x = -x;
        }
        out.push_back(v);
        rows.erase(rows.begin() + static_cast<long>(best));
        break;
      }
    }
  }
  return out;
}

// det(B B^T) for integer rows, the squared covolume of their span.
Rational gram_det(const std::vector<IntVec>& b) {
  std::vector<std::vector<Rational>> g(b.size(), std::vector<Rational>(b.size()));
  for (size_t i = 0; i < b.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      long s = 0;
      for (size_t k = 0; k < b[i].size(); ++k) s += b[i][k] * b[j][k];
      g[i][j] = s;
    }
  }
  return b.empty() ? Rational(1) : determinant(g);
}

std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> rhs) {
  const size_t n = a.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(rhs[piv], rhs[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational k = a[r][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[r][j] -= k * a[c][j];
      rhs[r] -= k * rhs[c];
    }
  }
  for (size_t i = 0; i < n; ++i) rhs[i] /= a[i][i];
  return rhs;
}

// ---------------------------------------------------------------------------
// E(Qbar(t)) presented by a free basis and independent torsion generators,
// with the action of Gal(Q(zeta8)/Q) computed through heights.

struct Presentation {
  WeierstrassModel model;  // over Q(t)
  std::vector<CurvePoint> free;
  std::vector<std::string> free_names;
  std::vector<CurvePoint> tors;
  std::vector<std::string> tors_names;
  std::vector<int> tors_orders;
};

struct Coords {
  IntVec a;               // free part
  std::vector<int> b;     // torsion part, b[i] mod tors_orders[i]
  friend bool operator==(const Coords&, const Coords&) = default;
};

class GaloisModule {
 public:
  explicit GaloisModule(Presentation p) : p_(std::move(p)), min_(minimize(p_.model)) {
    const size_t d = p_.free.size();
    for (const auto& g : p_.free) {
      gmin_.push_back(transform_point(g, min_.change));
      hmin_.push_back(height(min_.model, gmin_.back()));
    }
    gram_.assign(d, std::vector<Rational>(d));
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = 0; j < d; ++j) {
        gram_[i][j] = i == j ? hmin_[i] : pair_with_basis(gmin_[i], hmin_[i], j);
      }
    }
    // all torsion combinations, first index fastest
    std::vector<int> b(p_.tors.size(), 0);
    for (;;) {
      CurvePoint pt;
      for (size_t i = 0; i < b.size(); ++i) pt = add_points(p_.model, pt, mul_scalar(p_.model, p_.tors[i], b[i]));
      torsion_.push_back({b, pt});
      size_t i = 0;
      while (i < b.size() && ++b[i] == p_.tors_orders[i]) b[i++] = 0;
      if (i == b.size()) break;
    }
  }

  const Presentation& presentation() const { return p_; }
  const std::vector<std::vector<Rational>>& gram() const { return gram_; }
  size_t rank() const { return p_.free.size(); }
  const std::vector<std::pair<std::vector<int>, CurvePoint>>& torsion() const { return torsion_; }

  std::optional<Coords> express(const CurvePoint& x) const {
    const size_t d = rank();
    Coords c;
    c.a.assign(d, 0);
    if (d > 0 && !x.is_zero()) {
      CurvePoint xm = transform_point(x, min_.change);
      Rational hx = height(min_.model, xm);
      std::vector<Rational> rhs;
      for (size_t k = 0; k < d; ++k) rhs.push_back(pair_with_basis(xm, hx, k));
      auto sol = solve(gram_, rhs);
      if (!sol) return std::nullopt;
      for (size_t k = 0; k < d; ++k) {
        if ((*sol)[k].get_den() != 1) return std::nullopt;
        c.a[k] = (*sol)[k].get_num().get_si();
      }
    }
    CurvePoint rest = x;
    for (size_t k = 0; k < d; ++k) {
      rest = add_points(p_.model, rest, mul_scalar(p_.model, p_.free[k], -c.a[k]));
    }
    for (const auto& [b, pt] : torsion_) {
      if (pt == rest) {
        c.b = b;
        return c;
      }
    }
    return std::nullopt;
  }

  CurvePoint point_of(const Coords& c) const {
    CurvePoint out;
    for (size_t k = 0; k < rank(); ++k) out = add_points(p_.model, out, mul_scalar(p_.model, p_.free[k], c.a[k]));
    for (size_t i = 0; i < c.b.size(); ++i) {
      out = add_points(p_.model, out, mul_scalar(p_.model, p_.tors[i], c.b[i]));
    }
    return out;
  }

  std::string name_of(const Coords& c) const {
    std::string out;
    auto term = [&](long k, const std::string& name) {
      if (k == 0) return;
      std::string mag = std::labs(k) == 1 ? name : std::to_string(std::labs(k)) + name;
      if (out.empty()) out = (k < 0 ? "-" : "") + mag;
      else out += (k < 0 ? " - " : " + ") + mag;
    };
    for (size_t k = 0; k < rank(); ++k) term(c.a[k], p_.free_names[k]);
    for (size_t i = 0; i < c.b.size(); ++i) {
      int n = p_.tors_orders[i], v = c.b[i];
      term(2 * v > n ? v - n : v, p_.tors_names[i]);
    }
    return out.empty() ? "O" : out;
  }

 private:
  Rational pair_with_basis(const CurvePoint& xm, const Rational& hx, size_t k) const {
    CurvePoint s = add_points(min_.model, xm, gmin_[k]);
    return (height(min_.model, s) - hx - hmin_[k]) / 2;
  }

  Presentation p_;
  MinimalModel min_;
  std::vector<CurvePoint> gmin_;
  std::vector<Rational> hmin_;
  std::vector<std::vector<Rational>> gram_;
  std::vector<std::pair<std::vector<int>, CurvePoint>> torsion_;
};

struct FixedSubgroup {
  bool closed = false;                 // every conjugate of a generator was expressed
  std::string failure;
  std::vector<IntVec> kernel;          // basis of K
  long index = 1;                      // [K : pi(H)]
  std::vector<IntVec> lattice;         // basis of pi(H)
  std::vector<Coords> lattice_points;  // rational lifts of the lattice basis
  std::vector<std::vector<int>> fixed_torsion;
  std::vector<Coords> torsion_generators;
  std::vector<int> torsion_structure;
  std::map<int, std::vector<Coords>> images;  // sigma -> images of free then torsion generators
};

class FixedSubgroupSolver {
 public:
  explicit FixedSubgroupSolver(const GaloisModule& g) : g_(g) {}

  FixedSubgroup run() {
    FixedSubgroup out;
    const auto& p = g_.presentation();
    const size_t d = g_.rank();
    for (int s : {3, 5, 7}) {
      std::vector<Coords> imgs;
      for (const auto& gen : p.free) imgs.push_back(require(g_.express(gen.galois(s)), out));
      for (const auto& gen : p.tors) imgs.push_back(require(g_.express(gen.galois(s)), out));
      if (!out.failure.empty()) return out;
      for (size_t i = d; i < imgs.size(); ++i) {
        if (std::any_of(imgs[i].a.begin(), imgs[i].a.end(), [](long v) { return v != 0; })) {
          out.failure = "conjugate of a torsion generator has a free part";
          return out;
        }
      }
      out.images[s] = std::move(imgs);
    }
    out.closed = true;
    images_ = out.images;

    IntMat stacked;
    for (const auto& [s, imgs] : out.images) {
      for (size_t row = 0; row < d; ++row) {
        IntVec r(d);
        for (size_t col = 0; col < d; ++col) r[col] = imgs[col].a[row] - (row == col ? 1 : 0);
        stacked.push_back(r);
      }
    }
    out.kernel = d == 0 ? std::vector<IntVec>{} : integer_kernel(stacked, d);

    for (const auto& [b, pt] : g_.torsion()) {
      if (is_fixed_torsion(b)) out.fixed_torsion.push_back(b);
    }
    torsion_basis(out);

    // Lambda: classes of K / eK that lift to rational points.
    long e = 1;
    for (int n : p.tors_orders) e = std::lcm(e, static_cast<long>(n));
    const size_t dk = out.kernel.size();
    std::vector<IntVec> gens;
    for (const auto& k : out.kernel) {
      IntVec v(d);
      for (size_t j = 0; j < d; ++j) v[j] = e * k[j];
      gens.push_back(v);
    }
    long classes = 1, solvable = 0;
    for (size_t i = 0; i < dk; ++i) classes *= e;
    for (long code = 0; code < classes; ++code) {
      IntVec a(d, 0);
      long rest = code;
      for (size_t i = 0; i < dk; ++i) {
        long lam = rest % e;
        rest /= e;
        for (size_t j = 0; j < d; ++j) a[j] += lam * out.kernel[i][j];
      }
      if (lift(a)) {
        ++solvable;
        gens.push_back(a);
      }
    }
    out.index = classes / solvable;
    out.lattice = lattice_basis(gens, d);
    for (const auto& a : out.lattice) out.lattice_points.push_back(Coords{a, *lift(a)});
    return out;
  }

  // Torsion part tau making sum a_j G_j + tau fixed by every automorphism.
  std::optional<std::vector<int>> lift(const IntVec& a) const {
    const auto& p = g_.presentation();
    const size_t d = a.size();
    for (const auto& [s, imgs] : images_) {
      for (size_t row = 0; row < d; ++row) {
        long v = 0;
        for (size_t col = 0; col < d; ++col) v += imgs[col].a[row] * a[col];
        if (v != a[row]) return std::nullopt;
      }
    }
    std::vector<int> zero(p.tors.size(), 0);
    // prefer tau = 0, then the first solution in enumeration order
    std::vector<std::vector<int>> order{zero};
    for (const auto& [b, pt] : g_.torsion()) order.push_back(b);
    for (const auto& tau : order) {
      bool ok = true;
      for (const auto& [s, imgs] : images_) {
        // sigma(X) - X = sum a_j tau_{sigma,j} + sigma(tau) - tau
        std::vector<long> acc(tau.size(), 0);
        for (size_t j = 0; j < d; ++j) {
          for (size_t i = 0; i < tau.size(); ++i) acc[i] += a[j] * imgs[j].b[i];
        }
        auto st = act(s, tau);
        for (size_t i = 0; i < tau.size() && ok; ++i) {
          long n = p.tors_orders[i];
          ok = (((acc[i] + st[i] - tau[i]) % n) + n) % n == 0;
        }
        if (!ok) break;
      }
      if (ok) return tau;
    }
    return std::nullopt;
  }

  bool is_fixed_torsion(const std::vector<int>& b) const {
    for (const auto& [s, imgs] : images_) {
      if (act(s, b) != b) return false;
    }
    return true;
  }

  int torsion_order(const std::vector<int>& b) const {
    const auto& n = g_.presentation().tors_orders;
    int o = 1;
    for (size_t i = 0; i < b.size(); ++i) o = std::lcm(o, n[i] / std::gcd(n[i], b[i]));
    return o;
  }

  std::vector<int> add(const std::vector<int>& x, const std::vector<int>& y) const {
    const auto& n = g_.presentation().tors_orders;
    std::vector<int> out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = (x[i] + y[i]) % n[i];
    return out;
  }

  std::vector<std::vector<int>> span(const std::vector<std::vector<int>>& gens) const {
    std::vector<std::vector<int>> out{std::vector<int>(g_.presentation().tors.size(), 0)};
    for (size_t i = 0; i < out.size(); ++i) {
      for (const auto& g : gens) {
        auto s = add(out[i], g);
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
      }
    }
    return out;
  }

 private:
  Coords require(std::optional<Coords> c, FixedSubgroup& out) {
    if (!c) {
      if (out.failure.empty()) out.failure = "a conjugate is not in the span of the given generators";
      return Coords{};
    }
    return *c;
  }

  std::vector<int> act(int s, const std::vector<int>& b) const {
    const auto& p = g_.presentation();
    const auto& imgs = images_.at(s);
    const size_t d = p.free.size();
    std::vector<int> out(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) {
      for (int k = 0; k < b[i]; ++k) out = add(out, imgs[d + i].b);
    }
    return out;
  }

  void torsion_basis(FixedSubgroup& out) const {
    const auto& fixed = out.fixed_torsion;
    const int order = static_cast<int>(fixed.size());
    int exponent = 1;
    for (const auto& b : fixed) exponent = std::max(exponent, torsion_order(b));
    if (order / exponent > 1) out.torsion_structure.push_back(order / exponent);
    if (exponent > 1) out.torsion_structure.push_back(exponent);
    if (out.torsion_structure.empty()) return;
    const int n2 = out.torsion_structure.back();
    auto g2 = *std::find_if(fixed.begin(), fixed.end(), [&](const auto& b) { return torsion_order(b) == n2; });
    std::vector<std::vector<int>> gens{g2};
    if (out.torsion_structure.size() == 2) {
      const int n1 = out.torsion_structure.front();
      auto s2 = span({g2});
      for (const auto& b : fixed) {
        if (torsion_order(b) != n1) continue;
        auto s1 = span({b});
        bool meets = std::any_of(s1.begin() + 1, s1.end(),
                                 [&](const auto& x) { return std::find(s2.begin(), s2.end(), x) != s2.end(); });
        if (!meets) {
          gens = n1 == n2 ? std::vector<std::vector<int>>{g2, b} : std::vector<std::vector<int>>{b, g2};
          break;
        }
      }
    }
    const size_t d = g_.rank();
    for (const auto& b : gens) out.torsion_generators.push_back(Coords{IntVec(d, 0), b});
  }

  const GaloisModule& g_;
  std::map<int, std::vector<Coords>> images_;
};

// Checks that `claimed` generate the fixed subgroup; returns a failure reason.
std::string verify_claimed(const GaloisModule& g, const FixedSubgroupSolver& solver, const FixedSubgroup& fs,
                           const std::vector<CurvePoint>& claimed, std::vector<Coords>& coords) {
  std::vector<IntVec> free_rows;
  std::vector<std::vector<int>> tors;
  for (const auto& x : claimed) {
    if (!x.is_rational()) return "a claimed generator is not defined over Q(t)";
    auto c = g.express(x);
    if (!c) return "a claimed generator is outside the presented group";
    coords.push_back(*c);
    if (std::all_of(c->a.begin(), c->a.end(), [](long v) { return v == 0; })) {
      tors.push_back(c->b);
    } else {
      free_rows.push_back(c->a);
    }
  }
  if (free_rows.size() != fs.kernel.size()) return "number of free generators differs from the rank";
  if (lattice_basis(free_rows, g.rank()).size() != free_rows.size()) return "free generators are dependent";
  if (gram_det(free_rows) != gram_det(fs.lattice)) return "free generators span a proper sublattice";
  for (const auto& b : tors) {
    if (!solver.is_fixed_torsion(b)) return "a claimed torsion point is not fixed";
  }
  if (solver.span(tors).size() != fs.fixed_torsion.size()) return "claimed torsion does not generate";
  return {};
}

// ---------------------------------------------------------------------------

bool separable(const Poly& p) { return p.degree() < 1 || squarefree_part(p).degree() == p.degree(); }

std::string fiber_table(const SurfaceSummary& s) {
  std::string out;
  for (const auto& fb : s.fibers) {
    if (!out.empty()) out += ",";
    out += fb.type.name();
    if (fb.count > 1) out += "x" + std::to_string(fb.count);
  }
  return out.empty() ? "none" : out;
}

Presentation family_presentation(const PythagoreanTriple& t, const CanonicalPoints& pts) {
  return Presentation{curve_of(t), {pts.P1, pts.P2}, {"P1", "P2"}, {pts.T1, pts.T2}, {"T1", "T2"}, {2, 4}};
}

}  // namespace

// ---------------------------------------------------------------------------

QbarCertificate mw_certificate_qbar(const PythagoreanTriple& t) {
  QbarCertificate out;
  Certificate& cert = out.certificate;
  auto stop = [&] { return !cert.passed(); };

  // 1. hypotheses
  {
    std::ostringstream d;
    bool ok = true;
    if (t.g.is_zero() || poly_gcd(t.f, t.g).degree() > 0) {
      ok = false;
      d << "f, g not coprime";
    } else if (!t.theorem_grade()) {
      ok = false;
      d << "degrees (" << t.f.degree() << ", " << t.g.degree() << ") outside deg f = 2, 1 <= deg g <= 2";
    } else if (!separable(t.f * t.f - t.g * t.g)) {
      ok = false;
      auto tr = torsion_structure_family(t.f, t.g);
      const Poly f2 = t.f * t.f, g2 = t.g * t.g;
      auto fibers = classify_fibers(WeierstrassModel::short_form(RatFun(-(f2 + g2)), RatFun(f2 * g2), RatFun()));
      int trivial = 2;
      for (const auto& fb : fibers.fibers) trivial += fb.count * (fb.components - 1);
      d << "f^2 - g^2 is inseparable; torsion " << tr.describe() << ", rank <= " << 20 - trivial;
    } else if (t.f * t.f + t.g * t.g != t.h * t.h) {
      ok = false;
      d << "f^2 + g^2 != h^2";
    } else {
      d << "deg f = 2, deg g = " << t.g.degree() << ", f^2 - g^2 separable";
    }
    cert.add("triple", ok, d.str());
    if (stop()) return out;
  }
  const WeierstrassModel m = curve_of(t);

  // 2. model
  {
    auto v = is_globally_minimal(m);
    int chi = v.minimal ? euler_characteristic(m) : 0;
    cert.add("model", v.minimal && chi == 2,
             std::string(v.minimal ? "globally minimal" : "not minimal") + ", chi = " + std::to_string(chi));
    if (stop()) return out;
  }

  // 3. fibers and the trivial lattice
  out.fibers = classify_fibers(m);
  {
    int trivial = 2, n_inf = 1;
    for (const auto& fb : out.fibers.fibers) {
      trivial += fb.count * (fb.components - 1);
      if (fb.place.is_infinity()) n_inf = fb.components;
    }
    out.trivial_rank = trivial;
    const Poly d = t.f * t.f - t.g * t.g;
    out.closed_form_trivial = 8 + d.degree() + 3 * t.g.degree() + std::max(n_inf - 1, 0);
    cert.add("fibers", trivial == out.closed_form_trivial,
             fiber_table(out.fibers) + "; trivial lattice rank " + std::to_string(trivial) + ", closed form " +
                 std::to_string(out.closed_form_trivial));
    if (stop()) return out;
  }

  // 4. Shioda-Tate with rho <= h^{1,1} = 20
  out.rank_upper_bound = 20 - out.trivial_rank;
  cert.add("shioda-tate", out.rank_upper_bound >= 0, "rank <= 20 - " + std::to_string(out.trivial_rank) + " = " +
                                                         std::to_string(out.rank_upper_bound));
  if (stop()) return out;

  // 5. canonical points
  CanonicalPoints pts;
  try {
    pts = canonical_points(t);
    cert.add("points", true, "P1, P2, T1, T2 on the curve; Q1 = -2P1, Q2 = -2P2");
  } catch (const Error& e) {
    cert.add("points", false, e.what());
    return out;
  }
  out.generators = {pts.P1, pts.P2, pts.T1, pts.T2};

  // 6. heights
  out.gram = gram(m, {pts.P1, pts.P2});
  out.scaled_gram = out.gram.scaled(4);
  {
    const Rational df(t.f.degree());
    const auto& g = out.gram.matrix;
    bool ok = g[0][0] == df / 4 && g[1][1] == df / 2 && g[0][1] == 0 && out.gram.det != 0;
    out.rank_lower_bound = out.gram.det != 0 ? 2 : 0;
    cert.add("gram", ok && out.rank_lower_bound == out.rank_upper_bound,
             "diag(" + rat_str(g[0][0]) + ", " + rat_str(g[1][1]) + "), det " + rat_str(out.gram.det) +
                 "; rank = " + std::to_string(out.rank_lower_bound));
    if (stop()) return out;
  }

  // 7. torsion
  {
    auto tr = torsion_structure_family(t);
    out.torsion_structure = tr.structure;
    bool ok = tr.structure == std::vector<int>{2, 4};
    cert.add("torsion", ok, tr.describe() + " (" + tr.bound + ")");
    if (stop()) return out;
  }

  // 8. index of <P1, P2, T1, T2>: n^2 divides the scaled discriminant
  {
    const Rational disc = out.scaled_gram.det;
    bool integral = disc.get_den() == 1;
    long dv = integral ? disc.get_num().get_si() : 0;
    int n = 1;
    for (int k = 1; integral && static_cast<long>(k) * k <= dv; ++k) {
      if (dv % (static_cast<long>(k) * k) == 0) n = k;
    }
    out.index_bound = n;
    cert.add("index", integral && n <= 2,
             "scaled discriminant " + rat_str(disc) + " so the index n satisfies n^2 | " + rat_str(disc) +
                 ", n <= " + std::to_string(n));
    if (stop()) return out;
  }

  // 9. 2-descent: independent images rule out n = 2
  {
    for (size_t i = 0; i < 4; ++i) out.images[i] = descent_image(t, out.generators[i]);
    bool indep = descent_images_independent({out.images.begin(), out.images.end()});
    std::string detail = indep ? "images of P1, P2, T1, T2 independent, n = 1" : "images dependent";
    bool ok = indep;
    if (t.generators) {
      auto ref = reference_descent_images(t.generators->first, t.generators->second);
      bool match = std::equal(ref.begin(), ref.end(), out.images.begin());
      ok = ok && match;
      detail += match ? "; matches the closed-form table" : "; differs from the closed-form table";
    }
    cert.add("descent", ok, detail);
  }
  return out;
}

QtStructure mw_structure_qt(const PythagoreanTriple& t, const std::vector<CurvePoint>& claimed) {
  QtStructure out;
  const WeierstrassModel m = curve_of(t);
  if (!m.is_rational()) fail(ErrorKind::NonRationalCoefficients, "the curve is not defined over Q(t)");
  Certificate& cert = out.certificate;

  auto qbar = mw_certificate_qbar(t);
  cert.add("qbar structure", qbar.certificate.passed(),
           qbar.certificate.passed() ? "E(Qbar(t)) = <P1, P2> + <T1> + <T2>"
                                     : "failed at " + qbar.certificate.failing_stage());
  if (!cert.passed()) return out;

  auto pts = canonical_points(t);
  GaloisModule g(family_presentation(t, pts));
  FixedSubgroupSolver solver(g);
  FixedSubgroup fs = solver.run();
  cert.add("galois action", fs.closed, fs.closed ? "conjugates expressed for sigma_3, sigma_5, sigma_7" : fs.failure);
  if (!cert.passed()) return out;

  out.rank = static_cast<int>(fs.kernel.size());
  out.torsion_structure = fs.torsion_structure;
  out.fixed_index = static_cast<int>(fs.index);

  // tau: i -> -i, sqrt2 -> sqrt2 is zeta -> zeta^7
  const auto& imgs = fs.images.at(7);
  const char* names[] = {"P1", "P2", "T1", "T2"};
  for (size_t i = 0; i < 4; ++i) out.tau_table.push_back({names[i], g.name_of(imgs[i])});

  std::vector<Coords> coords;
  if (claimed.empty()) {
    for (const auto& c : fs.lattice_points) coords.push_back(c);
    for (const auto& c : fs.torsion_generators) coords.push_back(c);
    bool ok = true;
    for (const auto& c : coords) {
      out.generators.push_back(g.point_of(c));
      ok = ok && out.generators.back().is_rational();
    }
    cert.add("generators", ok, "basis of the fixed subgroup, [K : pi(H)] = " + std::to_string(fs.index));
  } else {
    std::string why = verify_claimed(g, solver, fs, claimed, coords);
    out.generators = claimed;
    cert.add("generators", why.empty(), why.empty() ? "claimed points generate E(Q(t))" : why);
  }
  for (const auto& c : coords) out.generator_names.push_back(g.name_of(c));
  cert.add("structure", true,
           "rank " + std::to_string(out.rank) + ", torsion " + join_ints(out.torsion_structure));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

WeierstrassModel family_model(const RatFun& f, const RatFun& g) {
  return WeierstrassModel::short_form(-(f * f + g * g), f * f * g * g, RatFun());
}

// Canonical points from rational-function f, g, h (same formulas as for
// polynomial triples).
std::array<CurvePoint, 4> points_of(const RatFun& f, const RatFun& g, const RatFun& h) {
  const RatFun i(named_constant("i")), r2(named_constant("sqrt2"));
  const RatFun a = RatFun(1) + r2, gg = g * (g - h);
  return {CurvePoint(-a * gg, i * a * gg * (r2 * g - h)), CurvePoint((f - h) * (g - h), (f + g) * (f - h) * (g - h)),
          CurvePoint(g * g, RatFun()), CurvePoint(f * g, i * f * (f - g) * g)};
}

}  // namespace

RankThreeExample verify_rank_three_example() {
  RankThreeExample out;
  Certificate& cert = out.certificate;
  const RatFun t(Poly::t());
  const RatFun rm2(named_constant("sqrt_minus2"));
  const RatFun u3 = RatFun(2) * t / (RatFun(5) + t * t);
  const RatFun u4 = RatFun(-16) * t / (t * t - RatFun(10));
  const RatFun f3 = u3 * u3 - RatFun(1), g3 = RatFun(2) * u3, h3 = u3 * u3 + RatFun(1);
  const RatFun f4 = rm2 * (u4 * u4 + RatFun(32)), g4 = RatFun(-16) * u4, h4 = rm2 * (RatFun(32) - u4 * u4);
  out.e3 = family_model(f3, g3);
  out.e4 = family_model(f4, g4);
  const auto& e3 = out.e3;
  const auto& e4 = out.e4;

  auto p3 = points_of(f3, g3, h3), p4 = points_of(f4, g4, h4);
  const CurvePoint p33(-f3, (t * t - RatFun(5)) * u3 * (u3 * u3 - RatFun(1)) / (RatFun(5) + t * t));
  const CurvePoint p34(-(RatFun(64) / rm2) * f4,
                       RatFun(512) * (t * t + RatFun(10)) * u4 * (RatFun(32) + u4 * u4) / (RatFun(10) - t * t));

  bool on = e3.is_rational() && e4.is_rational() && on_curve(e3, p33) && on_curve(e4, p34);
  for (size_t i = 0; i < 4; ++i) on = on && on_curve(e3, p3[i]) && on_curve(e4, p4[i]);
  cert.add("curves", on, "E3, E4 over Q(t); P1, P2, P3, T1, T2 on both");
  if (!cert.passed()) return out;

  // phi o sigma: t -> t / sqrt(-2), then (x, y) -> (s^2 x, s^3 y)
  const FieldElem c = FieldElem(1) / FieldElem(named_constant("sqrt_minus2"));
  const RatFun s = RatFun(-32) * rm2;
  auto phi = [&](const CurvePoint& p) {
    return CurvePoint(p.x().scale_variable(c) * s * s, p.y().scale_variable(c) * s * s * s);
  };
  auto add = [&](const CurvePoint& a, const CurvePoint& b) { return add_points(e4, a, b); };
  const CurvePoint two_t2 = add(p4[3], p4[3]);
  bool twist = phi(p3[0]) == add(add(negate(e4, p4[0]), p4[2]), two_t2) &&
               phi(p3[1]) == add(negate(e4, p4[1]), two_t2) && phi(p3[2]) == p4[2] && phi(p3[3]) == p4[3] &&
               phi(p33) == p34;
  cert.add("twist", twist, "phi(P1) = -P1 + T1 + 2T2, phi(P2) = -P2 + 2T2, phi(T1) = T1, phi(T2) = T2, phi(P3) = P3");
  if (!cert.passed()) return out;

  // E3(Q(t)) as a consistency check of the presented structure
  {
    GaloisModule mod3({e3, {p3[0], p3[1], p33}, {"P1", "P2", "P3"}, {p3[2], p3[3]}, {"T1", "T2"}, {2, 4}});
    FixedSubgroupSolver solver(mod3);
    auto fs = solver.run();
    std::vector<Coords> coords;
    std::string why = fs.closed ? verify_claimed(mod3, solver, fs, {p3[1], p33, p3[2], add_points(e3, p3[3], p3[3])},
                                                 coords)
                                : fs.failure;
    cert.add("E3 over Q(t)", why.empty(), why.empty() ? "generated by P2, P3, T1, 2T2" : why);
    if (!cert.passed()) return out;
  }

  // E4(Q(t)): E4(Qbar(t)) = <P1, P2, P3> + <T1> + <T2> by transport along phi
  GaloisModule mod4({e4, {p4[0], p4[1], p34}, {"P1", "P2", "P3"}, {p4[2], p4[3]}, {"T1", "T2"}, {2, 4}});
  {
    auto det = determinant(mod4.gram());
    cert.add("gram", det != 0, "Gram of P1, P2, P3 on the minimal model has det " + rat_str(det));
    if (!cert.passed()) return out;
  }
  FixedSubgroupSolver solver(mod4);
  auto fs = solver.run();
  cert.add("galois action", fs.closed, fs.closed ? "conjugates expressed" : fs.failure);
  if (!cert.passed()) return out;
  out.e4_generators = {add(p4[0], p4[0]), add(p4[1], p4[1]), p34, p4[2], two_t2};
  std::vector<Coords> coords;
  std::string why = verify_claimed(mod4, solver, fs, out.e4_generators, coords);
  for (const auto& co : coords) out.generator_names.push_back(mod4.name_of(co));
  out.rank = static_cast<int>(fs.kernel.size());
  out.torsion_structure = fs.torsion_structure;
  cert.add("E4 over Q(t)", why.empty() && out.rank == 3,
           why.empty() ? "generated by 2P1, 2P2, P3, T1, 2T2; rank " + std::to_string(out.rank) + ", torsion " +
                             join_ints(out.torsion_structure)
                       : why);

  MinimalModel mm = minimize(e4);
  std::vector<CurvePoint> free;
  for (size_t i = 0; i < 3; ++i) free.push_back(transform_point(out.e4_generators[i], mm.change));
  out.gram = gram(mm.model, free);
  return out;
}

}  // namespace ellsurf
