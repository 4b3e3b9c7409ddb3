#include "parityrank/descent3.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "parityrank/errors.hpp"

namespace parityrank {

namespace {

void require_descent_primes(const Int& p, const Int& q) {
  if (p < 5 || q < 5 || !is_prime(p) || !is_prime(q) || p == q)
    throw PreconditionError("3-descent needs distinct primes p, q >= 5");
}

int log3_exact(std::size_t n) {
  int k = 0;
  while (n > 1 && n % 3 == 0) {
    n /= 3;
    ++k;
  }
  if (n != 1) throw InvariantError("group order is not a power of 3");
  return k;
}

}  // namespace

CubeClass CubeClass::of(const Rat& x) {
  if (x == 0) throw PreconditionError("CubeClass: zero has no class");
  CubeClass c;
  auto absorb = [&](const Int& n, int sign) {
    if (abs(n) == 1) return;
    for (const auto& [prime, e] : factor(n).factors) {
      const int r = ((sign * static_cast<int>(e)) % 3 + 3) % 3;
      if (r == 1) c.d2 *= prime;
      if (r == 2) c.d1 *= prime;
    }
  };
  absorb(x.get_num(), 1);
  absorb(x.get_den(), -1);
  return c;
}

CubeClass CubeClass::operator*(const CubeClass& o) const {
  // Exponents are 2 on d1 and 1 on d2; sort primes by the pair of exponents with gcds.
  const Int g11 = gcd(d1, o.d1), g22 = gcd(d2, o.d2), g12 = gcd(d1, o.d2), g21 = gcd(d2, o.d1);
  const Int r1 = d1 / (g11 * g12), r2 = d2 / (g22 * g21);
  const Int s1 = o.d1 / (g11 * g21), s2 = o.d2 / (g22 * g12);
  return {g22 * r1 * s1, g11 * r2 * s2};
}

std::vector<CubeClass> cube_subgroup(const std::vector<CubeClass>& generators) {
  std::set<CubeClass> group = {CubeClass{}};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<CubeClass> current(group.begin(), group.end());
    for (const CubeClass& a : current)
      for (const CubeClass& g : generators)
        if (group.insert(a * g).second) grew = true;
  }
  return {group.begin(), group.end()};
}

CubeClass alpha_eval(const CurvePoint& P, const Int& m) {
  if (!on_curve(P, Curve::Am(m))) throw PreconditionError("alpha_eval: point is not on A_m");
  if (P.is_infinity()) return CubeClass{};
  if (P.x() == 0 && P.y() == m) {
    Rat inv(Int(1), Int(2 * m));
    inv.canonicalize();
    return CubeClass::of(inv);
  }
  return CubeClass::of(P.y() - Rat(m));
}

TernaryCubic representative_space(const CubeClass& c, const Int& p, const Int& q) {
  const Int n = 2 * p * q;
  const Int d12 = c.d1 * c.d2;
  if (n % d12 != 0) throw PreconditionError("class lies outside <2, p, q>");
  return TernaryCubic(c.d1, c.d2, Int(n / d12));
}

AlphaImageBound alpha_upper(const Int& p, const Int& q) {
  require_descent_primes(p, q);
  AlphaImageBound bound{p, q, {}, {}, {}};
  const CubeClass two_pq = CubeClass::of(Rat(Int(2 * p * q)));
  const std::vector<CubeClass> trivial = cube_subgroup({two_pq});

  struct Seed {
    const char* label;
    CubeClass representative;
  };
  const std::array<Seed, 4> seeds = {{
      {"4", CubeClass{1, 2}},      // (1, 2, pq)
      {"q^2", CubeClass{1, q}},    // (1, q, 2p)
      {"2p^2", CubeClass{2, p}},   // (2, p, q)
      {"p^2", CubeClass{1, p}},    // (1, p, 2q)
  }};
  const std::array<Int, 4> primes = {Int(2), Int(3), p, q};

  std::vector<CubeClass> generators = {two_pq};
  for (const Seed& seed : seeds) {
    DescentFamily fam;
    fam.label = seed.label;
    fam.representative = seed.representative;
    std::set<CubeClass> members;
    for (const CubeClass& t : trivial) {
      members.insert(seed.representative * t);
      members.insert(seed.representative.inverse() * t);
    }
    fam.members.assign(members.begin(), members.end());
    const TernaryCubic space = representative_space(seed.representative, p, q);
    fam.everywhere_locally_solvable = true;
    for (const Int& ell : primes) {
      const bool ok = ternary_cubic_solvable(space, ell);
      fam.verdicts.push_back({Place{ell}, ok});
      if (!ok) fam.everywhere_locally_solvable = false;
    }
    if (fam.everywhere_locally_solvable) generators.push_back(seed.representative);
    bound.families.push_back(std::move(fam));
  }
  bound.lower = trivial;
  bound.upper = cube_subgroup(generators);
  return bound;
}

int alpha_prime_upper(const Int& p, const Int& q) {
  require_descent_primes(p, q);
  const bool p_split = p % 3 == 1, q_split = q % 3 == 1;
  if (p_split == q_split)
    throw OutsideProvenScope("alpha' bound needs exactly one of p, q congruent to 1 mod 3");
  const EisensteinNum prime_above = eisenstein_split(p_split ? p : q);
  const EisensteinNum zeta = EisensteinNum::zeta3();

  // v_{ij} = zeta^i * prime_above^j encodes d = v^2 tau(v); survivors of the Q_2 test.
  std::array<std::array<bool, 3>, 3> survives{};
  EisensteinNum zi{Rat(1), Rat(0)};
  for (int i = 0; i < 3; ++i) {
    EisensteinNum v = zi;
    for (int j = 0; j < 3; ++j) {
      survives[i][j] = kcubic_solvable_at_2(v);
      v = v * prime_above;
    }
    zi = zi * zeta;
  }
  auto contains_line = [&](int di, int dj) {
    for (int k = 0; k < 3; ++k)
      if (!survives[(k * di) % 3][(k * dj) % 3]) return false;
    return true;
  };
  bool all = true;
  for (const auto& row : survives)
    for (bool s : row) all = all && s;
  if (all) return 9;
  for (auto [di, dj] : std::array<std::pair<int, int>, 4>{{{1, 0}, {0, 1}, {1, 1}, {1, 2}}})
    if (contains_line(di, dj)) return 3;
  return 1;
}

RankInterval rank_interval_3(const Int& p, const Int& q, bool nontorsion_witness) {
  const AlphaImageBound bound = alpha_upper(p, q);
  const int dual = alpha_prime_upper(p, q);
  const int hi = log3_exact(bound.upper.size() * static_cast<std::size_t>(dual)) - 1;
  const int lo = nontorsion_witness ? 1 : std::max(0, log3_exact(bound.lower.size()) - 1);
  return {lo, hi};
}

}  // namespace parityrank
