#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parityrank/arith.hpp"
#include "parityrank/curves.hpp"
#include "parityrank/localsolve.hpp"

namespace parityrank {

/// Class of d = d1^2 * d2 in Q^*/(Q^*)^3, d1 and d2 square-free, coprime, positive.
struct CubeClass {
  Int d1{1};
  Int d2{1};

  static CubeClass of(const Rat& x);

  Int representative() const { return d1 * d1 * d2; }
  CubeClass operator*(const CubeClass& o) const;
  CubeClass inverse() const { return {d2, d1}; }
  bool is_trivial() const { return d1 == 1 && d2 == 1; }

  bool operator<(const CubeClass& o) const { return representative() < o.representative(); }
  bool operator==(const CubeClass& o) const = default;
};

/// alpha(O) = 1, alpha(0, m) = 1/(2m), alpha(x, y) = y - m on A_m.
CubeClass alpha_eval(const CurvePoint& P, const Int& m);

/// The diagonal cubic (d1, d2, 2pq/(d1 d2)) attached to a class of <2, p, q>.
TernaryCubic representative_space(const CubeClass& c, const Int& p, const Int& q);

struct LocalVerdict {
  Place place;
  bool solvable;
};

/// One orbit of classes under inversion and multiplication by 2pq, tested
/// through a single representative space.
struct DescentFamily {
  std::string label;              // the excluded class it controls, e.g. "4"
  CubeClass representative;
  std::vector<CubeClass> members;  // both cosets c<2pq> and c^-1<2pq>
  std::vector<LocalVerdict> verdicts;
  bool everywhere_locally_solvable = false;
};

struct AlphaImageBound {
  Int p, q;
  std::vector<CubeClass> lower;  // sorted
  std::vector<CubeClass> upper;  // sorted
  std::vector<DescentFamily> families;
};

/// Places 2, 3, p, q tested for each of the four families; the trivial
/// classes {1, 2pq, (2pq)^2} are always present.
AlphaImageBound alpha_upper(const Int& p, const Int& q);

/// Largest possible order of im alpha' (1 or 3) when exactly one of p, q is
/// 1 mod 3. Candidates are cut to <zeta_3, r'^2 tau(r')> with r' over the split
/// prime, then filtered by the Q_2 cube test.
int alpha_prime_upper(const Int& p, const Int& q);

struct RankInterval {
  int lo;
  int hi;
};

RankInterval rank_interval_3(const Int& p, const Int& q, bool nontorsion_witness);

/// Subgroup of cube classes generated by the given classes.
std::vector<CubeClass> cube_subgroup(const std::vector<CubeClass>& generators);

}  // namespace parityrank
