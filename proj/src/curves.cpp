#include "parityrank/curves.hpp"

#include <algorithm>
#include <functional>

#include "parityrank/errors.hpp"

namespace parityrank {

Curve::Curve(Rat a, Rat b, CurveFamily family, Int m)
    : a_(std::move(a)), b_(std::move(b)), family_(family), m_(std::move(m)) {
  a_.canonicalize();
  b_.canonicalize();
  if (discriminant_term() == 0) throw PreconditionError("singular Weierstrass model");
}

Curve Curve::weierstrass(Rat a, Rat b) { return Curve(std::move(a), std::move(b), CurveFamily::kGeneric, Int(0)); }

Curve Curve::Em(Int m) {
  if (m == 0) throw PreconditionError("E_m needs m != 0");
  return Curve(Rat(m), Rat(0), CurveFamily::kEm, m);
}

Curve Curve::Am(Int m) {
  if (m == 0) throw PreconditionError("A_m needs m != 0");
  return Curve(Rat(0), Rat(m * m), CurveFamily::kAm, m);
}

Curve Curve::EmDual(Int m) {
  if (m == 0) throw PreconditionError("E'_m needs m != 0");
  return Curve(Rat(-4 * m), Rat(0), CurveFamily::kEmDual, m);
}

Curve Curve::AmDual(Int m) {
  if (m == 0) throw PreconditionError("A'_m needs m != 0");
  return Curve(Rat(0), Rat(-27 * m * m), CurveFamily::kAmDual, m);
}

std::string Curve::str() const {
  return "y^2 = x^3 + (" + to_string(a_) + ")x + (" + to_string(b_) + ")";
}

CurvePoint::CurvePoint(Rat x, Rat y) : infinity_(false), x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
}

std::string CurvePoint::str() const {
  if (infinity_) return "O";
  return "(" + to_string(x_) + ", " + to_string(y_) + ")";
}

bool on_curve(const CurvePoint& P, const Curve& C) {
  if (P.is_infinity()) return true;
  return P.y() * P.y() == P.x() * P.x() * P.x() + C.a() * P.x() + C.b();
}

CurvePoint negate(const CurvePoint& P) {
  if (P.is_infinity()) return P;
  return {P.x(), -P.y()};
}

namespace {

CurvePoint add_unchecked(const CurvePoint& P, const CurvePoint& Q, const Curve& C) {
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  Rat slope;
  if (P.x() == Q.x()) {
    if (P.y() + Q.y() == 0) return CurvePoint::infinity();
    slope = (3 * P.x() * P.x() + C.a()) / (2 * P.y());
  } else {
    slope = (Q.y() - P.y()) / (Q.x() - P.x());
  }
  Rat x3 = slope * slope - P.x() - Q.x();
  Rat y3 = slope * (P.x() - x3) - P.y();
  return {x3, y3};
}

void require_on_curve(const CurvePoint& P, const Curve& C) {
  if (!on_curve(P, C)) throw PreconditionError("point " + P.str() + " is not on " + C.str());
}

// Integer roots of x^3 + a x + c.
std::vector<Int> integer_roots_depressed_cubic(const Int& a, const Int& c) {
  auto g = [&](const Int& x) { return Int(x * x * x + a * x + c); };
  const Int bound = 1 + std::max(abs(a), abs(c));
  std::vector<Int> roots;
  // Searches [lo, hi] on which g is monotone in the given direction.
  auto search = [&](Int lo, Int hi, bool increasing) {
    while (lo <= hi) {
      Int mid = lo + (hi - lo) / 2;
      if (lo > hi) break;
      const Int v = g(mid);
      if (v == 0) {
        roots.push_back(mid);
        return;
      }
      if ((v < 0) == increasing)
        lo = mid + 1;
      else
        hi = mid - 1;
    }
  };
  if (a >= 0) {
    search(-bound, bound, true);
  } else {
    Int third = (-a) / 3, s;
    mpz_sqrt(s.get_mpz_t(), third.get_mpz_t());
    search(-bound, Int(-s - 1), true);
    search(Int(-s), s, false);
    search(Int(s + 1), bound, true);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// Positive y with y^2 | n.
std::vector<Int> square_divisor_roots(const Int& n) {
  std::vector<Int> out = {1};
  for (const auto& [p, e] : factor(n).factors) {
    const std::size_t size = out.size();
    Int pk = 1;
    for (unsigned k = 1; k <= e / 2; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CurvePoint add_points(const CurvePoint& P, const CurvePoint& Q, const Curve& C) {
  require_on_curve(P, C);
  require_on_curve(Q, C);
  return add_unchecked(P, Q, C);
}

CurvePoint multiply(long k, const CurvePoint& P, const Curve& C) {
  require_on_curve(P, C);
  CurvePoint base = k < 0 ? negate(P) : P;
  unsigned long n = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  CurvePoint acc = CurvePoint::infinity();
  while (n) {
    if (n & 1) acc = add_unchecked(acc, base, C);
    base = add_unchecked(base, base, C);
    n >>= 1;
  }
  return acc;
}

int torsion_order(const CurvePoint& P, const Curve& C) {
  require_on_curve(P, C);
  CurvePoint Q = P;
  for (int k = 1; k <= 12; ++k) {
    if (Q.is_infinity()) return k;
    Q = add_unchecked(Q, P, C);
  }
  return 0;
}

bool is_nontorsion(const CurvePoint& P, const Curve& C) {
  if (P.is_infinity()) throw PreconditionError("is_nontorsion: P must not be O");
  return torsion_order(P, C) == 0;
}

int TorsionGroup::order() const { return static_cast<int>(points.size()); }

std::string TorsionGroup::name() const {
  if (invariants.empty()) return "0";
  std::string out;
  for (int n : invariants) {
    if (!out.empty()) out += " x ";
    out += "Z/" + std::to_string(n);
  }
  return out;
}

TorsionGroup torsion_subgroup(const Curve& C) {
  Int u;
  mpz_lcm(u.get_mpz_t(), C.a().get_den_mpz_t(), C.b().get_den_mpz_t());
  const Rat u2 = Rat(u * u), u3 = Rat(u * u * u);
  const Int A = Rat(C.a() * u2 * u2).get_num();
  const Int B = Rat(C.b() * u3 * u3).get_num();
  const Curve integral = Curve::weierstrass(Rat(A), Rat(B));
  const Int D = 4 * A * A * A + 27 * B * B;

  TorsionGroup group;
  group.points.push_back(CurvePoint::infinity());
  std::vector<int> orders = {1};
  auto consider = [&](const Int& x, const Int& y) {
    const CurvePoint P{Rat(x), Rat(y)};
    const int order = torsion_order(P, integral);
    if (order == 0) return;
    group.points.push_back(CurvePoint(Rat(x) / u2, Rat(y) / u3));
    orders.push_back(order);
  };
  for (const Int& x : integer_roots_depressed_cubic(A, B)) consider(x, Int(0));
  for (const Int& y : square_divisor_roots(D)) {
    for (const Int& x : integer_roots_depressed_cubic(A, Int(B - y * y))) {
      consider(x, y);
      consider(x, Int(-y));
    }
  }

  const int n = group.order();
  const int two_torsion = static_cast<int>(std::count(orders.begin(), orders.end(), 2));
  if (n == 1) return group;
  auto point_of_order = [&](int k) -> std::size_t {
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] == k) return i;
    throw InvariantError("torsion group has no point of order " + std::to_string(k));
  };
  if (two_torsion == 3) {
    group.invariants = {2, n / 2};
    const std::size_t g = point_of_order(n / 2);
    group.generators.push_back(group.points[g]);
    // The cyclic factor contains exactly one point of order 2.
    const CurvePoint half = multiply(n / 4, group.points[g], C);
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (orders[i] == 2 && group.points[i] != half) {
        group.generators.push_back(group.points[i]);
        break;
      }
    }
  } else {
    group.invariants = {n};
    group.generators.push_back(group.points[point_of_order(n)]);
  }
  return group;
}

std::vector<int> torsion_closed_form(const Curve& C) {
  switch (C.family()) {
    case CurveFamily::kEm: {
      const Int s = powerfree_part(C.m(), 4).s;
      if (s == 4) return {4};
      if (is_perfect_square(Int(-s))) return {2, 2};
      return {2};
    }
    case CurveFamily::kAm: {
      Int root;
      const Int m = C.m();
      if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), 3) != 0) return {6};
      return {3};
    }
    default:
      throw PreconditionError("closed-form torsion is only known for E_m and A_m");
  }
}

PointOnCurve apply_isogeny(const CurvePoint& P, const Curve& C) {
  require_on_curve(P, C);
  const Rat m(C.m());
  if (C.family() == CurveFamily::kEm) {
    if (P.is_infinity() || P.x() == 0) throw KernelPointError("point lies in the kernel of the 2-isogeny");
    const Rat x2 = P.x() * P.x();
    PointOnCurve out{Curve::EmDual(C.m()), CurvePoint(P.y() * P.y() / x2, P.y() * (m - x2) / x2)};
    if (!on_curve(out.point, out.curve)) throw InvariantError("2-isogeny image is off the dual curve");
    return out;
  }
  if (C.family() == CurveFamily::kAm) {
    if (P.is_infinity() || P.x() == 0) throw KernelPointError("point lies in the kernel of the 3-isogeny");
    const Rat x2 = P.x() * P.x(), x3 = x2 * P.x(), m2 = m * m;
    PointOnCurve out{Curve::AmDual(C.m()), CurvePoint((x3 + 4 * m2) / x2, P.y() * (x3 - 8 * m2) / x3)};
    if (!on_curve(out.point, out.curve)) throw InvariantError("3-isogeny image is off the dual curve");
    return out;
  }
  throw PreconditionError("isogenies are defined for E_m and A_m only");
}

PointOnCurve construct_point_T2(const Int& a, const Int& b) {
  if (a == 0 || b == 0) throw PreconditionError("construct_point_T2: a and b must be nonzero");
  if (a * a == b * b) throw PreconditionError("construct_point_T2: a^2 = b^2 gives a singular curve");
  const Int b2 = b * b;
  PointOnCurve out{Curve::Em(Int(b2 * (a * a - b2))), CurvePoint(Rat(b2), Rat(a * b2))};
  if (!on_curve(out.point, out.curve)) throw InvariantError("T2 point identity failed");
  return out;
}

PointOnCurve construct_point_T3(const Int& a, const Int& b) {
  if (a == 0 || b == 0) throw PreconditionError("construct_point_T3: a and b must be nonzero");
  if (a * a == b * b) throw PreconditionError("construct_point_T3: a^2 = b^2 gives a singular curve");
  const Int a2 = a * a, b2 = b * b;
  PointOnCurve out{Curve::Am(Int(a * (a2 - b2))), CurvePoint(Rat(b2 - a2), Rat(a2 * b - b2 * b))};
  if (!on_curve(out.point, out.curve)) throw InvariantError("T3 point identity failed");
  return out;
}

PointOnCurve minimize_model(const Curve& C, const CurvePoint& P) {
  require_on_curve(P, C);
  unsigned k;
  if (C.family() == CurveFamily::kEm)
    k = 4;
  else if (C.family() == CurveFamily::kAm)
    k = 3;
  else
    throw PreconditionError("minimize_model needs an E_m or A_m curve");
  const auto [s, u] = powerfree_part(C.m(), k);
  const Curve reduced = k == 4 ? Curve::Em(s) : Curve::Am(s);
  if (P.is_infinity()) return {reduced, P};
  const Rat u2 = Rat(u * u), u3 = Rat(u * u * u);
  PointOnCurve out{reduced, CurvePoint(P.x() / u2, P.y() / u3)};
  if (!on_curve(out.point, out.curve)) throw InvariantError("minimized point is off the reduced curve");
  return out;
}

}  // namespace parityrank
