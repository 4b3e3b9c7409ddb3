#pragma once

#include <string>
#include <vector>

#include "parityrank/arith.hpp"

namespace parityrank {

enum class CurveFamily {
  kGeneric,
  kEm,      // y^2 = x^3 + m x
  kAm,      // y^2 = x^3 + m^2
  kEmDual,  // y^2 = x^3 - 4m x
  kAmDual,  // y^2 = x^3 - 27 m^2
};

/// Short Weierstrass model y^2 = x^3 + a x + b over Q.
class Curve {
 public:
  static Curve weierstrass(Rat a, Rat b);
  static Curve Em(Int m);
  static Curve Am(Int m);
  static Curve EmDual(Int m);
  static Curve AmDual(Int m);

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  CurveFamily family() const { return family_; }
  /// Family parameter; zero for generic curves.
  const Int& m() const { return m_; }

  /// 4a^3 + 27b^2, nonzero.
  Rat discriminant_term() const { return 4 * a_ * a_ * a_ + 27 * b_ * b_; }

  bool operator==(const Curve& o) const = default;

  std::string str() const;

 private:
  Curve(Rat a, Rat b, CurveFamily family, Int m);

  Rat a_, b_;
  CurveFamily family_;
  Int m_;
};

class CurvePoint {
 public:
  static CurvePoint infinity() { return CurvePoint(); }
  CurvePoint(Rat x, Rat y);

  bool is_infinity() const { return infinity_; }
  const Rat& x() const { return x_; }
  const Rat& y() const { return y_; }

  bool operator==(const CurvePoint& o) const = default;

  std::string str() const;

 private:
  CurvePoint() = default;

  bool infinity_ = true;
  Rat x_{0}, y_{0};
};

struct PointOnCurve {
  Curve curve;
  CurvePoint point;
};

bool on_curve(const CurvePoint& P, const Curve& C);

CurvePoint negate(const CurvePoint& P);
CurvePoint add_points(const CurvePoint& P, const CurvePoint& Q, const Curve& C);
CurvePoint multiply(long k, const CurvePoint& P, const Curve& C);

/// By Mazur, a rational point is torsion iff kP = O for some k <= 12.
bool is_nontorsion(const CurvePoint& P, const Curve& C);

/// Torsion order of P (0 when P has infinite order).
int torsion_order(const CurvePoint& P, const Curve& C);

struct TorsionGroup {
  /// Invariant factors: {} trivial, {n} cyclic, {2, 2n} otherwise.
  std::vector<int> invariants;
  std::vector<CurvePoint> generators;
  std::vector<CurvePoint> points;  // includes O

  int order() const;
  /// "Z/2", "Z/2 x Z/4", "0".
  std::string name() const;
};

/// Lutz-Nagell on an integral model of C.
TorsionGroup torsion_subgroup(const Curve& C);

/// Invariant factors for E_m / A_m from the closed-form description.
std::vector<int> torsion_closed_form(const Curve& C);

/// The 2-isogeny E_m -> E'_m or the 3-isogeny A_m -> A'_m.
PointOnCurve apply_isogeny(const CurvePoint& P, const Curve& C);

/// E_{b^2(a^2-b^2)} with the point (b^2, a b^2).
PointOnCurve construct_point_T2(const Int& a, const Int& b);

/// A_{a(a^2-b^2)} with the point (b^2 - a^2, a^2 b - b^3).
PointOnCurve construct_point_T3(const Int& a, const Int& b);

/// Reduce the E_m parameter by fourth powers, or the A_m parameter by cubes,
/// transporting P by (x, y) -> (x/u^2, y/u^3).
PointOnCurve minimize_model(const Curve& C, const CurvePoint& P);

}  // namespace parityrank
