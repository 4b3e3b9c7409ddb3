#include "parityrank/localsolve.hpp"

#include <array>
#include <climits>
#include <vector>

#include "parityrank/errors.hpp"

namespace parityrank {

namespace {

constexpr unsigned kMaxDepth = 200;

bool is_cube_free(const Int& n) {
  for (const auto& [p, e] : factor(n).factors)
    if (e >= 3) return false;
  return true;
}

void require_prime(const Int& p) {
  if (!is_prime(p)) throw PreconditionError("local solvability needs a prime, got " + p.get_str());
}

bool is_padic_square(const Int& x, const Int& p) {
  const unsigned v = valuation(x, p);
  if (v % 2) return false;
  Int pv;
  mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), v);
  const Int u = x / pv;
  if (p == 2) {
    Int r = u % 8;
    if (r < 0) r += 8;
    return r == 1;
  }
  return mpz_legendre(u.get_mpz_t(), p.get_mpz_t()) == 1;
}

// Coefficients of f(z0 + X), low degree first.
std::vector<Int> taylor_shift(std::vector<Int> c, const Int& z0) {
  const std::size_t n = c.size() - 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n; j-- > i;) c[j] += z0 * c[j + 1];
  return c;
}

// Is there z in z0 + p^k Z_p with f(z) in Q_p^2 (zero included)?
bool square_value_in_disc(const std::vector<Int>& f, const Int& p, const Int& z0, unsigned k, const Int& pk,
                          unsigned depth) {
  const std::vector<Int> t = taylor_shift(f, z0);
  if (t[0] == 0) return true;
  if (is_padic_square(t[0], p)) return true;
  const long e = valuation(t[0], p);
  if (t[1] != 0) {
    const long lambda = valuation(t[1], p);
    if (e > 2 * lambda && e - lambda >= static_cast<long>(k)) return true;
  }
  long stable = LONG_MAX;
  for (std::size_t j = 1; j < t.size(); ++j) {
    if (t[j] == 0) continue;
    stable = std::min(stable, static_cast<long>(j * k + valuation(t[j], p)));
  }
  const long needed = e + 1 + (p == 2 ? 2 : 0);
  if (stable >= needed) return false;
  if (depth > kMaxDepth) throw InvariantError("p-adic sweep exceeded its depth bound");
  const Int next_pk = pk * p;
  for (Int r = 0; r < p; ++r) {
    if (square_value_in_disc(f, p, Int(z0 + r * pk), k + 1, next_pk, depth + 1)) return true;
  }
  return false;
}

// Dense bivariate polynomial, coef[i][j] for s^i t^j, total degree <= 3.
using Bivariate = std::array<std::array<Int, 4>, 4>;

Bivariate shift(const Bivariate& g, const Int& s0, const Int& t0) {
  Bivariate h = g;
  for (std::size_t j = 0; j < 4; ++j) {
    std::vector<Int> col(4);
    for (std::size_t i = 0; i < 4; ++i) col[i] = h[i][j];
    col = taylor_shift(col, s0);
    for (std::size_t i = 0; i < 4; ++i) h[i][j] = col[i];
  }
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Int> row(h[i].begin(), h[i].end());
    row = taylor_shift(row, t0);
    for (std::size_t j = 0; j < 4; ++j) h[i][j] = row[j];
  }
  return h;
}

// Is there a zero of g in (s0 + p^ks Z_p) x (t0 + p^kt Z_p)?
bool root_in_polydisc(const Bivariate& g, const Int& p, const Int& s0, unsigned ks, const Int& pks, const Int& t0,
                      unsigned kt, const Int& pkt, unsigned depth) {
  const Bivariate h = shift(g, s0, t0);
  if (h[0][0] == 0) return true;
  const long e = valuation(h[0][0], p);
  if (h[1][0] != 0) {
    const long lambda = valuation(h[1][0], p);
    if (e > 2 * lambda && e - lambda >= static_cast<long>(ks)) return true;
  }
  if (h[0][1] != 0) {
    const long lambda = valuation(h[0][1], p);
    if (e > 2 * lambda && e - lambda >= static_cast<long>(kt)) return true;
  }
  long change = LONG_MAX;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if ((i == 0 && j == 0) || h[i][j] == 0) continue;
      change = std::min(change, static_cast<long>(i * ks + j * kt + valuation(h[i][j], p)));
    }
  if (change > e) return false;
  if (depth > kMaxDepth) throw InvariantError("p-adic cubic sweep exceeded its depth bound");
  const Int next_s = pks * p, next_t = pkt * p;
  for (Int a = 0; a < p; ++a)
    for (Int b = 0; b < p; ++b)
      if (root_in_polydisc(g, p, Int(s0 + a * pks), ks + 1, next_s, Int(t0 + b * pkt), kt + 1, next_t, depth + 1))
        return true;
  return false;
}

Int mod_nonneg(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

QuarticSpace::QuarticSpace(Int d, Int B) : d_(std::move(d)), B_(std::move(B)) {
  if (d_ == 0 || !is_squarefree(d_)) throw PreconditionError("QuarticSpace: d must be nonzero and square-free");
  if (B_ == 0) throw PreconditionError("QuarticSpace: B must be nonzero");
}

TernaryCubic::TernaryCubic(Int u1, Int u2, Int u3) : u1_(std::move(u1)), u2_(std::move(u2)), u3_(std::move(u3)) {
  for (const Int* u : {&u1_, &u2_, &u3_})
    if (*u == 0 || !is_cube_free(*u)) throw PreconditionError("TernaryCubic: coefficients must be nonzero and cube-free");
  if (gcd(u1_, u2_) != 1 || gcd(u1_, u3_) != 1 || gcd(u2_, u3_) != 1)
    throw PreconditionError("TernaryCubic: coefficients must be pairwise coprime");
}

bool quartic_solvable_real(const QuarticSpace& space) { return space.d() > 0 || space.B() < 0; }

std::optional<QuarticShortcutResult> quartic_shortcut(const QuarticSpace& space, const Int& p) {
  const Int& d = space.d();
  const Int& B = space.B();
  if (p == 2) {
    if (abs(d) == 2 && B % 2 != 0) return QuarticShortcutResult{QuarticShortcut::kMod16AtTwo, false};
    if (d == 2 && valuation(B, Int(2)) == 2) {
      const Int r = mod_nonneg(Int(B / 4), Int(8));
      if (r != 1 && r != 7) return QuarticShortcutResult{QuarticShortcut::kMod8AtTwo, false};
    }
    return std::nullopt;
  }
  if (valuation(B, p) == 1 && d % p != 0) {
    const bool qr = mpz_legendre(mod_nonneg(d, p).get_mpz_t(), p.get_mpz_t()) == 1;
    return QuarticShortcutResult{QuarticShortcut::kResidueAtP, qr};
  }
  return std::nullopt;
}

std::string to_string(QuarticShortcut rule) {
  switch (rule) {
    case QuarticShortcut::kMod8AtTwo: return "mod8";
    case QuarticShortcut::kMod16AtTwo: return "mod16";
    case QuarticShortcut::kResidueAtP: return "residue";
  }
  return "?";
}

bool quartic_solvable_padic_generic(const QuarticSpace& space, const Int& p) {
  require_prime(p);
  const Int& d = space.d();
  const Int& B = space.B();
  // w^2 = (d^2 + B z^4)/d is a square iff d*(d^2 + B z^4) is.
  const std::vector<Int> affine = {Int(d * d * d), 0, 0, 0, Int(d * B)};
  if (square_value_in_disc(affine, p, Int(0), 0, Int(1), 0)) return true;
  // z = 1/u with u in pZ_p; u = 0 is the pair of points at infinity.
  const std::vector<Int> at_infinity = {Int(d * B), 0, 0, 0, Int(d * d * d)};
  return square_value_in_disc(at_infinity, p, Int(0), 1, p, 0);
}

bool quartic_solvable_padic(const QuarticSpace& space, const Int& p) {
  require_prime(p);
  if (auto fast = quartic_shortcut(space, p)) return fast->solvable;
  return quartic_solvable_padic_generic(space, p);
}

std::optional<bool> ternary_mod9_criterion(const TernaryCubic& space) {
  const std::array<Int, 3> u = {space.u1(), space.u2(), space.u3()};
  for (const Int& x : u)
    if (x % 3 == 0) return std::nullopt;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (mod_nonneg(Int(u[i] - u[j]), Int(9)) == 0 || mod_nonneg(Int(u[i] + u[j]), Int(9)) == 0) return true;
    }
  return false;
}

std::optional<bool> ternary_cube_residue_criterion(const TernaryCubic& space, const Int& p) {
  if (p == 3) return std::nullopt;
  const std::array<Int, 3> u = {space.u1(), space.u2(), space.u3()};
  int hit = -1;
  for (int i = 0; i < 3; ++i) {
    if (u[i] % p == 0) {
      if (hit >= 0) return std::nullopt;
      hit = i;
    }
  }
  if (hit < 0) return std::nullopt;
  if (p == 2 || p % 3 == 2) return true;
  const Int& a = u[(hit + 1) % 3];
  const Int& b = u[(hit + 2) % 3];
  Int binv;
  const Int bm = mod_nonneg(b, p);
  mpz_invert(binv.get_mpz_t(), bm.get_mpz_t(), p.get_mpz_t());
  const Int ratio = mod_nonneg(Int(a * binv), p);
  const Int exponent = (p - 1) / 3;
  Int r;
  mpz_powm(r.get_mpz_t(), ratio.get_mpz_t(), exponent.get_mpz_t(), p.get_mpz_t());
  return r == 1;
}

bool ternary_cubic_solvable_generic(const TernaryCubic& space, const Int& p) {
  require_prime(p);
  const Int &a = space.u1(), &b = space.u2(), &c = space.u3();
  // Chart Z = 1: a s^3 + b t^3 + c, with s, t in Z_p.
  Bivariate g{};
  g[3][0] = a;
  g[0][3] = b;
  g[0][0] = c;
  if (root_in_polydisc(g, p, Int(0), 0, Int(1), Int(0), 0, Int(1), 0)) return true;
  // Chart Y = 1, Z in pZ_p: a s^3 + b + c t^3.
  Bivariate h{};
  h[3][0] = a;
  h[0][0] = b;
  h[0][3] = c;
  if (root_in_polydisc(h, p, Int(0), 0, Int(1), Int(0), 1, p, 0)) return true;
  // Chart X = 1, Y and Z in pZ_p: a + b s^3 + c t^3.
  Bivariate k{};
  k[0][0] = a;
  k[3][0] = b;
  k[0][3] = c;
  return root_in_polydisc(k, p, Int(0), 1, p, Int(0), 1, p, 0);
}

bool ternary_cubic_solvable(const TernaryCubic& space, const Int& p) {
  require_prime(p);
  if (p != 3 && space.u1() % p != 0 && space.u2() % p != 0 && space.u3() % p != 0) return true;
  if (p == 3) {
    if (auto fast = ternary_mod9_criterion(space)) return *fast;
  } else if (auto fast = ternary_cube_residue_criterion(space, p)) {
    return *fast;
  }
  return ternary_cubic_solvable_generic(space, p);
}

bool kcubic_solvable_at_2(const EisensteinNum& v) { return cube_class_f4(v) == 0; }

}  // namespace parityrank
