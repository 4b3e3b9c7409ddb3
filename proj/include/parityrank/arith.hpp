#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace parityrank {

using Int = mpz_class;
using Rat = mpq_class;

/// Primality. Miller-Rabin with the first thirteen prime bases, which is
/// deterministic for n < 3.317e24; above that GMP's BPSW-based test is used.
bool is_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);

struct Factorization {
  int sign = 1;
  std::vector<std::pair<Int, unsigned>> factors;  // ascending primes

  Int value() const;
};

/// Full factorization: trial division by odd numbers below 2^16, then Brent's rho.
Factorization factor(const Int& n);

/// n = t^k * s with s k-th-power-free, sign(s) = sign(n), t >= 1.
struct PowerfreeDecomposition {
  Int s;
  Int t;
};
PowerfreeDecomposition powerfree_part(const Int& n, unsigned k);

bool is_squarefree(const Int& n);
bool is_perfect_square(const Int& n);

/// Largest e with p^e | n, for n != 0.
unsigned valuation(const Int& n, const Int& p);
/// p-adic valuation of a nonzero rational.
long valuation(const Rat& x, const Int& p);

/// Distinct prime divisors of |n|, ascending.
std::vector<Int> prime_divisors(const Int& n);

/// Square root of a modulo an odd prime p, for a a nonzero quadratic residue.
Int sqrt_mod_prime(const Int& a, const Int& p);

std::string to_string(const Int& n);
std::string to_string(const Rat& x);
Int parse_int(const std::string& text);
Rat parse_rat(const std::string& text);

/// Element v1 + v2*sqrt(-3) of K = Q(sqrt(-3)).
class EisensteinNum {
 public:
  EisensteinNum() = default;
  EisensteinNum(Rat v1, Rat v2);

  static EisensteinNum zeta3();

  const Rat& v1() const { return v1_; }
  const Rat& v2() const { return v2_; }

  Rat norm() const { return v1_ * v1_ + 3 * v2_ * v2_; }
  EisensteinNum conj() const { return {v1_, -v2_}; }
  bool is_zero() const { return v1_ == 0 && v2_ == 0; }

  /// 2*v1 and 2*v2 are integers of equal parity.
  bool is_algebraic_integer() const;

  EisensteinNum operator+(const EisensteinNum& o) const;
  EisensteinNum operator-(const EisensteinNum& o) const;
  EisensteinNum operator*(const EisensteinNum& o) const;
  EisensteinNum operator/(const EisensteinNum& o) const;
  bool operator==(const EisensteinNum& o) const = default;

  std::string str() const;

 private:
  Rat v1_{0};
  Rat v2_{0};
};

/// Split prime p = 1 (mod 3): the unique v = v1 + v2*sqrt(-3) with v1, v2
/// positive integers and v1^2 + 3 v2^2 = p.
EisensteinNum eisenstein_split(const Int& p);

/// Discrete log in F_4^* (generator omega = (1+sqrt(-3))/2) of the image of
/// tau(v)/v in O_K/2O_K. Zero iff tau(v)/v is a cube there.
int cube_class_f4(const EisensteinNum& v);

}  // namespace parityrank
