#pragma once

#include <optional>
#include <string>

#include "parityrank/arith.hpp"

namespace parityrank {

/// A place of Q: the prime p, or the real place when p == 0.
struct Place {
  Int p;
  bool is_real() const { return p == 0; }
  std::string str() const { return is_real() ? "inf" : p.get_str(); }
};

/// The genus-one quartic d*w^2 = d^2 + B*z^4 (d square-free, B nonzero).
/// For E_m the phi-side spaces have B = -4m and the dual side B = m.
class QuarticSpace {
 public:
  QuarticSpace(Int d, Int B);

  const Int& d() const { return d_; }
  const Int& B() const { return B_; }

 private:
  Int d_;
  Int B_;
};

/// Diagonal plane cubic u1*X^3 + u2*Y^3 + u3*Z^3 = 0 with nonzero,
/// cube-free, pairwise coprime coefficients.
class TernaryCubic {
 public:
  TernaryCubic(Int u1, Int u2, Int u3);

  const Int& u1() const { return u1_; }
  const Int& u2() const { return u2_; }
  const Int& u3() const { return u3_; }

 private:
  Int u1_, u2_, u3_;
};

bool quartic_solvable_real(const QuarticSpace& space);

/// Decides whether the quartic has a Q_p-point. Congruence shortcuts are used
/// when one applies, otherwise the digit-by-digit sweep.
bool quartic_solvable_padic(const QuarticSpace& space, const Int& p);

/// Reference decision procedure: recursive search for z in Z_p (and u = 1/z
/// in pZ_p) making d*(d^2 + B z^4) a p-adic square, closed off by Hensel's
/// lemma on roots and by a square-class stability bound on the residue discs.
bool quartic_solvable_padic_generic(const QuarticSpace& space, const Int& p);

enum class QuarticShortcut {
  kMod8AtTwo,   // d = 2, B = 4n, n odd, n != +-1 (mod 8): no Q_2-point
  kMod16AtTwo,  // d = +-2, B odd: no Q_2-point
  kResidueAtP,  // p odd, p || B, p !| d: solvable iff (d/p) = 1
};

struct QuarticShortcutResult {
  QuarticShortcut rule;
  bool solvable;
};

std::optional<QuarticShortcutResult> quartic_shortcut(const QuarticSpace& space, const Int& p);

std::string to_string(QuarticShortcut rule);

/// Nontrivial Q_p-point on the diagonal cubic.
bool ternary_cubic_solvable(const TernaryCubic& space, const Int& p);

/// Reference decision procedure over the three affine charts of P^2. Cost grows
/// like p^2 per refinement level, so it is meant for small primes.
bool ternary_cubic_solvable_generic(const TernaryCubic& space, const Int& p);

/// At p = 3 with 3 !| u1 u2 u3: solvable iff u_i = +-u_j (mod 9) for some i != j.
/// Empty when some u_i is divisible by 3.
std::optional<bool> ternary_mod9_criterion(const TernaryCubic& space);

/// At p != 3 dividing exactly one coefficient u_k: solvable iff the ratio of
/// the other two is a cube modulo p. Empty when the hypothesis fails.
std::optional<bool> ternary_cube_residue_criterion(const TernaryCubic& space, const Int& p);

/// Q_2-solvability of the dual 3-descent space attached to d = v^2 tau(v):
///   2 v2 X^3 - 6 v1 Y^3 + (6pq / (v1^2 + 3 v2^2)) Z^3 + 6 v1 X^2 Y - 18 v2 X Y^2 = 0,
/// which holds iff tau(v)/v is a cube in F_4.
bool kcubic_solvable_at_2(const EisensteinNum& v);

}  // namespace parityrank
