#pragma once

#include <vector>

#include "parityrank/arith.hpp"
#include "parityrank/localsolve.hpp"

namespace parityrank {

enum class IsogenySide { kPhi, kPhiDual };

/// Square-free representatives (with sign) of Q(S,2) for E_m: supported on
/// -1, 2 and the odd primes dividing m. Ordered by absolute value, then sign.
std::vector<Int> enumerate_QS2(const Int& m);

/// The bad places of E_m: infinity, 2 and the odd primes of m.
std::vector<Place> bad_places(const Int& m);

/// phi-side: d w^2 = d^2 - 4m z^4; dual side: d w^2 = d^2 + m z^4.
QuarticSpace homogeneous_space(const Int& m, IsogenySide side, const Int& d);

bool locally_solvable(const QuarticSpace& space, const Place& place);

struct SelmerGroup2 {
  IsogenySide side;
  Int m;
  std::vector<Int> members;  // canonical order

  bool contains(const Int& d) const;
  unsigned dimension() const;
};

SelmerGroup2 selmer_group(const Int& m, IsogenySide side);

/// dim Sel_phi + dim Sel_phi' - 2.
int rank_upper_2descent(const Int& m);

/// Square-free part of a nonzero integer, sign kept.
Int squarefree_class(const Int& n);

}  // namespace parityrank
