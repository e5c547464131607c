#include "modgcd.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace ellsurf::detail {

namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // ascending, trimmed

u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }

u64 powmod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic for n < 2^32
  for (u64 a : {2ULL, 7ULL, 61ULL}) {
    if (a % n == 0) continue;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct PrimeData {
  u64 p;
  std::array<u64, 4> omega;      // the four primitive 8th roots of unity
  std::array<u64, 4> omega_inv;
};

// Primes p = 1 (mod 8) below 2^31, with their 8th roots of unity.
const PrimeData& prime_at(size_t index) {
  static std::vector<PrimeData> cache;
  static u64 next = (1ULL << 31) - ((1ULL << 31) % 8) + 1 - 8;
  while (cache.size() <= index) {
    while (!is_prime(next)) next -= 8;
    u64 p = next;
    next -= 8;
    u64 w = 0;
    for (u64 g = 2;; ++g) {
      w = powmod(g, (p - 1) / 8, p);
      if (powmod(w, 4, p) == p - 1) break;
    }
    PrimeData d{p, {}, {}};
    for (int j = 0; j < 4; ++j) {
      d.omega[j] = powmod(w, 2 * j + 1, p);
      d.omega_inv[j] = invmod(d.omega[j], p);
    }
    cache.push_back(d);
  }
  return cache[index];
}

// Polynomial scaled to integer zeta-components: coefficient i is
// sum_k c[i][k] zeta^k, all c[i][k] integers.
struct IntPoly {
  std::vector<std::array<mpz_class, 4>> c;
  bool rational = true;
};

IntPoly to_int_poly(const Poly& a) {
  IntPoly out;
  out.rational = a.is_rational();
  const int comps = out.rational ? 1 : 4;
  std::vector<std::array<Rational, 4>> rows;
  mpz_class den = 1;
  for (const FieldElem& c : a.coeffs()) {
    std::array<Rational, 4> row;
    if (c.is_rational()) {
      row[0] = c.rational();
    } else {
      const Zeta8Elem z = c.to_zeta8();
      for (int k = 0; k < 4; ++k) row[k] = z[k];
    }
    for (int k = 0; k < comps; ++k) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), row[k].get_den_mpz_t());
    rows.push_back(std::move(row));
  }
  out.c.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (int k = 0; k < comps; ++k) {
      mpz_divexact(out.c[i][k].get_mpz_t(), den.get_mpz_t(), rows[i][k].get_den_mpz_t());
      out.c[i][k] *= rows[i][k].get_num();
    }
  }
  return out;
}

std::optional<ModPoly> embed(const IntPoly& a, u64 omega, u64 p) {
  ModPoly out;
  out.reserve(a.c.size());
  const int comps = a.rational ? 1 : 4;
  for (const auto& row : a.c) {
    u64 acc = 0, pw = 1;
    for (int k = 0; k < comps; ++k) {
      u64 r = mpz_fdiv_ui(row[k].get_mpz_t(), p);
      acc = (acc + mulmod(r, pw, p)) % p;
      pw = mulmod(pw, omega, p);
    }
    out.push_back(acc);
  }
  if (out.back() == 0) return std::nullopt;  // leading coefficient vanished
  return out;
}

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void make_monic(ModPoly& a, u64 p) {
  u64 inv = invmod(a.back(), p);
  for (auto& c : a) c = mulmod(c, inv, p);
}

ModPoly mod_gcd(ModPoly a, ModPoly b, u64 p) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    make_monic(b, p);
    // a <- a mod b
    while (a.size() >= b.size()) {
      u64 lead = a.back();
      size_t shift = a.size() - b.size();
      if (lead != 0) {
        for (size_t i = 0; i < b.size(); ++i) {
          a[shift + i] = (a[shift + i] + p - mulmod(lead, b[i], p)) % p;
        }
      }
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  make_monic(a, p);
  return a;
}

std::optional<Rational> rational_reconstruct(const mpz_class& u, const mpz_class& m) {
  // find n/d = u mod m with |n|, d <= sqrt(m/2)
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = u, s0 = 0, s1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  mpz_class g = gcd(r1, s1);
  if (g != 1) return std::nullopt;
  Rational out(r1, s1);
  out.canonicalize();
  return out;
}

}  // namespace

std::optional<Poly> modular_gcd(const Poly& a, const Poly& b) {
  const IntPoly ia = to_int_poly(a), ib = to_int_poly(b);
  const bool rational = ia.rational && ib.rational;
  const int embeddings = rational ? 1 : 4;
  const int components = rational ? 1 : 4;
  int best_degree = std::min(a.degree(), b.degree()) + 1;
  // residues[i][k]: component k of coefficient i, modulo `modulus`
  std::vector<std::array<mpz_class, 4>> residues;
  mpz_class modulus = 1;
  std::optional<Poly> last_candidate;
  const size_t budget = 300;
  for (size_t pi = 0; pi < budget; ++pi) {
    const PrimeData& pd = prime_at(pi);
    const u64 p = pd.p;
    std::array<ModPoly, 4> images;
    bool ok = true;
    int deg = -1;
    for (int j = 0; j < embeddings && ok; ++j) {
      auto ea = embed(ia, pd.omega[j], p), eb = embed(ib, pd.omega[j], p);
      if (!ea || !eb) {
        ok = false;
        break;
      }
      images[j] = mod_gcd(*ea, *eb, p);
      int d = static_cast<int>(images[j].size()) - 1;
      if (deg >= 0 && d != deg) ok = false;
      deg = d;
    }
    if (!ok) continue;
    if (deg == 0) return Poly(1);
    if (deg > best_degree) continue;
    if (deg < best_degree) {
      best_degree = deg;
      residues.assign(static_cast<size_t>(deg) + 1, {});
      modulus = 1;
      last_candidate.reset();
    }
    // recover the components mod p and merge by CRT
    const u64 inv4 = invmod(4 % p, p);
    mpz_class mp = static_cast<unsigned long>(p);
    mpz_class minv;
    mpz_class mod_p = modulus % mp;
    mpz_invert(minv.get_mpz_t(), mod_p.get_mpz_t(), mp.get_mpz_t());
    for (int i = 0; i <= deg; ++i) {
      std::array<u64, 4> comp{};
      if (rational) {
        comp[0] = images[0][i];
      } else {
        for (int k = 0; k < 4; ++k) {
          u64 acc = 0;
          for (int j = 0; j < 4; ++j) acc = (acc + mulmod(images[j][i], powmod(pd.omega_inv[j], k, p), p)) % p;
          comp[k] = mulmod(acc, inv4, p);
        }
      }
      for (int k = 0; k < components; ++k) {
        mpz_class& r = residues[i][k];
        // r' = r + modulus * ((c - r) * modulus^{-1} mod p)
        mpz_class diff = mpz_class(static_cast<unsigned long>(comp[k])) - r;
        mpz_class tmod = (diff % mp) * minv % mp;
        if (tmod < 0) tmod += mp;
        r += modulus * tmod;
      }
    }
    modulus *= mp;
    // reconstruct and verify
    std::vector<FieldElem> coeffs;
    bool rec = true;
    for (int i = 0; i <= deg && rec; ++i) {
      std::array<Rational, 4> c{};
      for (int k = 0; k < components && rec; ++k) {
        auto q = rational_reconstruct(residues[i][k], modulus);
        if (!q) rec = false;
        else c[k] = *q;
      }
      coeffs.emplace_back(rational ? FieldElem(c[0]) : FieldElem(Zeta8Elem(c[0], c[1], c[2], c[3])));
    }
    if (!rec) continue;
    Poly cand(std::move(coeffs));
    if (last_candidate && *last_candidate == cand) continue;  // already refuted
    if (divides(cand, a) && divides(cand, b)) return cand;
    last_candidate = cand;
  }
  return std::nullopt;
}

}  // namespace ellsurf::detail
