#include "parityrank/descent2.hpp"

#include <algorithm>
#include <bit>

#include "parityrank/errors.hpp"

namespace parityrank {

namespace {

void require_fourth_power_free(const Int& m) {
  if (m == 0) throw PreconditionError("descent2: m must be nonzero");
  for (const auto& [p, e] : factor(m).factors)
    if (e >= 4) throw PreconditionError("descent2: m must be fourth-power-free");
}

bool canonical_less(const Int& x, const Int& y) {
  const Int ax = abs(x), ay = abs(y);
  if (ax != ay) return ax < ay;
  return x > y;  // +d before -d
}

}  // namespace

Int squarefree_class(const Int& n) {
  const Factorization f = factor(n);
  Int s = f.sign;
  for (const auto& [p, e] : f.factors)
    if (e % 2) s *= p;
  return s;
}

std::vector<Int> enumerate_QS2(const Int& m) {
  require_fourth_power_free(m);
  std::vector<Int> primes = {Int(2)};
  for (const Int& p : prime_divisors(m))
    if (p != 2) primes.push_back(p);
  std::vector<Int> out;
  const std::size_t n = primes.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Int d = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) d *= primes[i];
    out.push_back(d);
    out.push_back(-d);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<Place> bad_places(const Int& m) {
  std::vector<Place> places = {Place{Int(0)}, Place{Int(2)}};
  for (const Int& p : prime_divisors(m))
    if (p != 2) places.push_back(Place{p});
  return places;
}

QuarticSpace homogeneous_space(const Int& m, IsogenySide side, const Int& d) {
  return side == IsogenySide::kPhi ? QuarticSpace(d, Int(-4 * m)) : QuarticSpace(d, m);
}

bool locally_solvable(const QuarticSpace& space, const Place& place) {
  return place.is_real() ? quartic_solvable_real(space) : quartic_solvable_padic(space, place.p);
}

bool SelmerGroup2::contains(const Int& d) const {
  return std::find(members.begin(), members.end(), d) != members.end();
}

unsigned SelmerGroup2::dimension() const {
  const std::size_t n = members.size();
  if (n == 0 || !std::has_single_bit(n)) throw InvariantError("Selmer group order is not a power of 2");
  return static_cast<unsigned>(std::countr_zero(n));
}

SelmerGroup2 selmer_group(const Int& m, IsogenySide side) {
  SelmerGroup2 group{side, m, {}};
  const std::vector<Place> places = bad_places(m);
  for (const Int& d : enumerate_QS2(m)) {
    const QuarticSpace space = homogeneous_space(m, side, d);
    const bool everywhere = std::all_of(places.begin(), places.end(),
                                        [&](const Place& v) { return locally_solvable(space, v); });
    if (everywhere) group.members.push_back(d);
  }
  for (const Int& x : group.members)
    for (const Int& y : group.members)
      if (!group.contains(squarefree_class(Int(x * y))))
        throw InvariantError("computed Selmer set is not closed under multiplication");
  const Int torsion_image = squarefree_class(side == IsogenySide::kPhi ? Int(-m) : m);
  if (!group.contains(torsion_image)) throw InvariantError("Selmer group misses the image of (0,0)");
  group.dimension();
  return group;
}

int rank_upper_2descent(const Int& m) {
  const unsigned dim = selmer_group(m, IsogenySide::kPhi).dimension() +
                       selmer_group(m, IsogenySide::kPhiDual).dimension();
  return static_cast<int>(dim) - 2;
}

}  // namespace parityrank
