#include "parityrank/family.hpp"

#include <algorithm>
#include <numeric>

#include "parityrank/descent2.hpp"
#include "parityrank/errors.hpp"
#include "parityrank/rootnum.hpp"

namespace parityrank {

void PrimePairParams::validate() const {
  if (A % 2 == 0 || B % 2 == 0 || std::gcd(A, B) != 1)
    throw PreconditionError("prime-pair search: A and B must be odd and coprime");
  if (g < 2 || i == 0 || j == 0 || i >= g || j >= g || std::gcd(i, g) != 1 || std::gcd(j, g) != 1)
    throw PreconditionError("prime-pair search: residues must be units strictly between 0 and g");
  if (!target) throw PreconditionError("prime-pair search: no target rule");
  if (n_max == 0) throw PreconditionError("prime-pair search: n_max must be positive");
  if (target(n_max) >= (std::uint64_t{1} << 62)) throw PreconditionError("prime-pair search: targets exceed 2^62");
}

PrimePairParams t2_search_params(std::uint64_t n_max) {
  if (n_max > 1000000000) throw PreconditionError("T2 search: n_max too large");
  PrimePairParams params;
  params.A = 1;
  params.B = 1;
  params.g = 16;
  params.i = 15;
  params.j = 3;
  params.target = [](std::uint64_t b) { return 2 * b * b; };
  params.n_max = n_max;
  return params;
}

PrimePairParams t3_search_params(std::uint64_t n_max) {
  if (n_max > 1000000) throw PreconditionError("T3 search: n_max too large");
  PrimePairParams params;
  params.A = 27;
  params.B = 1;
  params.g = 9;
  params.i = 2;
  params.j = 7;
  params.target = [](std::uint64_t a) { return 2 * a * a * a; };
  params.n_max = n_max;
  params.min_prime = 5;
  return params;
}

std::optional<PrimePairHit> prime_pair_for(const PrimePairParams& params, std::uint64_t n) {
  const std::uint64_t total = params.target(n);
  auto partner = [&](std::uint64_t p1) -> std::optional<std::uint64_t> {
    const std::uint64_t rest = total - params.A * p1;
    if (rest % params.B != 0) return std::nullopt;
    const std::uint64_t p2 = rest / params.B;
    if (p2 % params.g != params.j || p1 < params.min_prime || p2 < params.min_prime) return std::nullopt;
    if (!is_prime_u64(p1) || !is_prime_u64(p2)) return std::nullopt;
    return p2;
  };
  if (total <= params.A * params.i) return std::nullopt;
  const std::uint64_t top = (total - 1) / params.A;  // A*p1 < total
  std::uint64_t last = top - ((top + params.g - params.i % params.g) % params.g);

  std::optional<PrimePairHit> best;
  auto offer = [&](std::uint64_t p1, std::uint64_t p2) {
    const PrimePairHit hit{n, p1, p2};
    if (!best) {
      best = hit;
      return;
    }
    const auto key = [](const PrimePairHit& h) { return std::make_pair(std::min(h.p1, h.p2), h.p1); };
    if (key(hit) < key(*best)) best = hit;
  };
  for (std::uint64_t p1 = params.i; p1 <= last; p1 += params.g) {
    if (auto p2 = partner(p1)) {
      offer(p1, *p2);
      break;
    }
  }
  for (std::uint64_t p1 = last; p1 >= params.i; p1 -= params.g) {
    if (auto p2 = partner(p1)) {
      offer(p1, *p2);
      break;
    }
    if (p1 < params.g) break;
  }
  return best;
}

std::vector<PrimePairHit> search_prime_pairs(const PrimePairParams& params, std::uint64_t n_first,
                                             std::uint64_t n_last) {
  params.validate();
  if (n_last == 0 || n_last > params.n_max) n_last = params.n_max;
  std::vector<PrimePairHit> hits;
  for (std::uint64_t n = std::max<std::uint64_t>(n_first, 1); n <= n_last; ++n)
    if (auto hit = prime_pair_for(params, n)) hits.push_back(*hit);
  return hits;
}

std::string to_string(TorsionFamily family) { return family == TorsionFamily::kT2 ? "T2" : "T3"; }

namespace {

void expect(bool condition, const std::string& what) {
  if (!condition) throw InvariantError("certificate check failed: " + what);
}

Int mod(const Int& a, long m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

std::optional<int> even_value_in(int lo, int hi) {
  std::optional<int> found;
  for (int r = lo; r <= hi; ++r) {
    if (r % 2 != 0) continue;
    if (found) return std::nullopt;
    found = r;
  }
  return found;
}

void fill_torsion(RankCertificate& cert, const Curve& curve, const std::vector<int>& expected) {
  const TorsionGroup torsion = torsion_subgroup(curve);
  expect(torsion.invariants == torsion_closed_form(curve), "Lutz-Nagell torsion matches the closed form");
  expect(torsion.invariants == expected, "torsion subgroup is " + torsion.name());
  cert.torsion = torsion.name();
  cert.torsion_generators = torsion.generators;
}

}  // namespace

RankCertificate certify_T2(const Int& b, const Int& p, const Int& q) {
  if (b < 1) throw PreconditionError("certify_T2: b must be positive");
  if (!is_prime(p)) throw PreconditionError("certify_T2: p = " + p.get_str() + " is not prime");
  if (!is_prime(q)) throw PreconditionError("certify_T2: q = " + q.get_str() + " is not prime");
  if (mod(p, 16) != 15 || mod(q, 16) != 3) throw PreconditionError("certify_T2: need p = 15 and q = 3 (mod 16)");
  if (2 * b * b != p + q) throw PreconditionError("certify_T2: need 2b^2 = p + q");

  RankCertificate cert;
  cert.family = TorsionFamily::kT2;
  cert.b = b;
  cert.a = (p - q) / 2;
  cert.p = p;
  cert.q = q;
  const Int b2 = b * b;
  expect(cert.a * cert.a - b2 * b2 == -p * q, "a^2 - b^4 = -pq");

  const PointOnCurve raw = construct_point_T2(cert.a, b2);
  const PointOnCurve minimal = minimize_model(raw.curve, raw.point);
  cert.m = minimal.curve.m();
  expect(cert.m == -p * q, "minimized parameter is -pq");
  cert.witness = minimal.point;
  expect(on_curve(cert.witness, minimal.curve), "witness lies on E_{-pq}");
  expect(is_nontorsion(cert.witness, minimal.curve), "witness has infinite order");
  apply_isogeny(cert.witness, minimal.curve);

  fill_torsion(cert, minimal.curve, {2});
  cert.root_number = root_number_Em(cert.m);
  expect(cert.root_number == 1, "root number of E_{-pq} is +1");

  const SelmerGroup2 sel = selmer_group(cert.m, IsogenySide::kPhi);
  const SelmerGroup2 sel_dual = selmer_group(cert.m, IsogenySide::kPhiDual);
  expect(sel.contains(p * q), "pq in Sel_phi");
  expect(sel_dual.contains(-p * q), "-pq in Sel_phi'");
  const Int pq8 = mod(p * q, 8);
  if (pq8 != 1 && pq8 != 7) {
    expect(!sel.contains(2), "2 not in Sel_phi when pq != +-1 (mod 8)");
    expect(sel.members.size() <= 4, "#Sel_phi <= 4");
  }
  if (mod(p, 4) != 1 || mod(q, 4) != 1) {
    expect(!sel_dual.contains(-1) && !sel_dual.contains(2) && !sel_dual.contains(-2), "-1, +-2 not in Sel_phi'");
    expect(sel_dual.members.size() <= 4, "#Sel_phi' <= 4");
  }
  Descent2Record record{sel.members, sel_dual.members, sel.dimension(), sel_dual.dimension()};
  expect(record.dim_sel_phi + record.dim_sel_phi_dual <= 4, "dim Sel_phi + dim Sel_phi' <= 4");
  cert.rank_lo = 1;
  cert.rank_hi = static_cast<int>(record.dim_sel_phi + record.dim_sel_phi_dual) - 2;
  cert.descent = std::move(record);
  expect(cert.rank_lo <= cert.rank_hi, "witness rank bound below the Selmer bound");
  expect(cert.rank_hi <= 2, "rank interval inside [1, 2]");
  cert.rank_under_parity = even_value_in(cert.rank_lo, cert.rank_hi);
  expect(cert.rank_under_parity.has_value(), "rank interval holds a unique even rank");
  cert.assumes = {"parity_conjecture"};
  cert.notes = {"witness (b^2, ab) on E_{-pq} from (b^2, ab^2) on E_{b^2(a^2-b^2)} with b -> b^2, scaled by b",
                "rank lower bound from the non-torsion witness; upper bound from 2-isogeny Selmer groups"};
  return cert;
}

RankCertificate certify_T3(const Int& a, const Int& p, const Int& q) {
  if (a < 1) throw PreconditionError("certify_T3: a must be positive");
  if (p < 5 || !is_prime(p)) throw PreconditionError("certify_T3: p = " + p.get_str() + " is not a prime >= 5");
  if (q < 5 || !is_prime(q)) throw PreconditionError("certify_T3: q = " + q.get_str() + " is not a prime >= 5");
  if (mod(p, 9) != 2 || mod(q, 9) != 7) throw PreconditionError("certify_T3: need p = 2 and q = 7 (mod 9)");
  if (2 * a * a * a != 27 * p + q) throw PreconditionError("certify_T3: need 2a^3 = 27p + q");

  RankCertificate cert;
  cert.family = TorsionFamily::kT3;
  cert.a = a;
  cert.b = (27 * p - q) / 2;
  cert.p = p;
  cert.q = q;
  const Int a3 = a * a * a;
  expect(a3 * a3 - cert.b * cert.b == 27 * p * q, "a^6 - b^2 = 27pq");

  const PointOnCurve raw = construct_point_T3(a3, cert.b);
  const PointOnCurve minimal = minimize_model(raw.curve, raw.point);
  cert.m = minimal.curve.m();
  expect(cert.m == p * q, "minimized parameter is pq");
  cert.witness = minimal.point;
  expect(on_curve(cert.witness, minimal.curve), "witness lies on A_pq");
  expect(is_nontorsion(cert.witness, minimal.curve), "witness has infinite order");
  apply_isogeny(cert.witness, minimal.curve);

  fill_torsion(cert, minimal.curve, {3});
  cert.root_number = root_number_Am(cert.m);
  expect(cert.root_number == 1, "root number of A_pq is +1");

  const AlphaImageBound bound = alpha_upper(p, q);
  const int dual = alpha_prime_upper(p, q);
  Descent3Record record{bound.lower, bound.upper, dual, alpha_eval(cert.witness, cert.m)};
  const CubeClass two_pq = CubeClass::of(Rat(Int(2 * p * q)));
  auto in = [](const std::vector<CubeClass>& set, const CubeClass& c) {
    return std::find(set.begin(), set.end(), c) != set.end();
  };
  expect(in(record.im_alpha_lower, CubeClass{}) && in(record.im_alpha_lower, two_pq), "{1, 2pq} in im alpha");
  for (const CubeClass& c : record.im_alpha_lower) expect(in(record.im_alpha_upper, c), "lower set inside upper set");
  expect(in(record.im_alpha_upper, record.witness_alpha), "alpha(witness) inside the upper bound");
  expect(record.im_alpha_upper.size() <= 9, "#im alpha <= 9");
  expect(record.im_alpha_prime_bound <= 3, "#im alpha' <= 3");
  cert.descent = record;

  const RankInterval interval = rank_interval_3(p, q, true);
  cert.rank_lo = interval.lo;
  cert.rank_hi = interval.hi;
  expect(cert.rank_lo <= cert.rank_hi, "witness rank bound below the descent bound");
  expect(cert.rank_hi <= 2, "rank interval inside [1, 2]");
  cert.rank_under_parity = even_value_in(cert.rank_lo, cert.rank_hi);
  expect(cert.rank_under_parity.has_value(), "rank interval holds a unique even rank");
  cert.assumes = {"parity_conjecture"};
  cert.notes = {"witness (b^2 - a^6, a^6 b - b^3) on A_{a^3(a^6-b^2)}, scaled by u = 3a; ordinate is a^2 b - b^3 "
                "with a -> a^3, which satisfies the curve equation",
                "rank bounds from |im alpha| |im alpha'| = 3^(rank + 1)"};
  return cert;
}

void check_certificate_fields(const RankCertificate& cert) {
  const Int& p = cert.p;
  const Int& q = cert.q;
  expect(is_prime(p) && is_prime(q), "p and q are prime");
  if (cert.family == TorsionFamily::kT2) {
    expect(std::holds_alternative<Descent2Record>(cert.descent), "T2 carries a 2-descent record");
    expect(2 * cert.b * cert.b == p + q, "2b^2 = p + q");
    expect(mod(p, 16) == 15 && mod(q, 16) == 3, "p = 15, q = 3 (mod 16)");
    expect(cert.a * cert.a - cert.b * cert.b * cert.b * cert.b == -p * q, "a^2 - b^4 = -pq");
    expect(cert.m == -p * q, "m = -pq");
    expect(cert.torsion == "Z/2", "torsion Z/2");
    const auto& d = std::get<Descent2Record>(cert.descent);
    expect(d.dim_sel_phi + d.dim_sel_phi_dual <= 4, "dim Sel_phi + dim Sel_phi' <= 4");
    expect(d.sel_phi.size() == (std::size_t{1} << d.dim_sel_phi), "Sel_phi order matches its dimension");
    expect(d.sel_phi_dual.size() == (std::size_t{1} << d.dim_sel_phi_dual), "Sel_phi' order matches its dimension");
    expect(cert.rank_hi == static_cast<int>(d.dim_sel_phi + d.dim_sel_phi_dual) - 2, "rank upper bound from Selmer");
    expect(cert.root_number == root_number_Em(cert.m), "root number formula");
  } else {
    expect(std::holds_alternative<Descent3Record>(cert.descent), "T3 carries a 3-descent record");
    expect(2 * cert.a * cert.a * cert.a == 27 * p + q, "2a^3 = 27p + q");
    expect(mod(p, 9) == 2 && mod(q, 9) == 7, "p = 2, q = 7 (mod 9)");
    const Int a3 = cert.a * cert.a * cert.a;
    expect(a3 * a3 - cert.b * cert.b == 27 * p * q, "a^6 - b^2 = 27pq");
    expect(cert.m == p * q, "m = pq");
    expect(cert.torsion == "Z/3", "torsion Z/3");
    const auto& d = std::get<Descent3Record>(cert.descent);
    expect(d.im_alpha_upper.size() <= 9 && d.im_alpha_prime_bound <= 3, "image order bounds");
    expect(cert.root_number == root_number_Am(cert.m), "root number formula");
  }
  const Curve curve = cert.curve();
  expect(!cert.witness.is_infinity() && on_curve(cert.witness, curve), "witness lies on the curve");
  for (const CurvePoint& g : cert.torsion_generators) expect(on_curve(g, curve), "torsion generator on the curve");
  expect(cert.root_number == 1, "root number +1");
  expect(1 <= cert.rank_lo && cert.rank_lo <= cert.rank_hi && cert.rank_hi <= 2, "rank interval inside [1, 2]");
  expect(cert.rank_under_parity.has_value() && *cert.rank_under_parity % 2 == 0 &&
             *cert.rank_under_parity >= cert.rank_lo && *cert.rank_under_parity <= cert.rank_hi,
         "parity-conditional rank is the even value of the interval");
  expect(std::find(cert.assumes.begin(), cert.assumes.end(), "parity_conjecture") != cert.assumes.end(),
         "parity conjecture recorded as an assumption");
}

void verify_certificate(const RankCertificate& cert) {
  check_certificate_fields(cert);
  RankCertificate fresh;
  try {
    fresh = cert.family == TorsionFamily::kT2 ? certify_T2(cert.b, cert.p, cert.q) : certify_T3(cert.a, cert.p, cert.q);
  } catch (const PreconditionError& e) {
    throw InvariantError(std::string("certificate check failed: ") + e.what());
  }
  expect(fresh.a == cert.a && fresh.b == cert.b, "identity parameters");
  expect(fresh.m == cert.m, "curve parameter");
  expect(fresh.witness == cert.witness, "witness point");
  expect(fresh.torsion == cert.torsion && fresh.torsion_generators == cert.torsion_generators, "torsion");
  expect(fresh.root_number == cert.root_number, "root number");
  expect(fresh.descent == cert.descent, "descent record");
  expect(fresh.rank_lo == cert.rank_lo && fresh.rank_hi == cert.rank_hi, "rank interval");
  expect(fresh.rank_under_parity == cert.rank_under_parity, "parity-conditional rank");
  expect(fresh.assumes == cert.assumes && fresh.notes == cert.notes, "assumptions and notes");
}

}  // namespace parityrank
