// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "parityrank/certificate_io.hpp"
#include "parityrank/cli.hpp"
#include "parityrank/descent2.hpp"
#include "parityrank/descent3.hpp"
#include "parityrank/family.hpp"
#include "parityrank/localsolve.hpp"
#include "parityrank/rootnum.hpp"

using namespace parityrank;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " -- " << o.detail << std::endl;
}

struct SearchRun {
  int code;
  std::string jsonl;
  double seconds;
};

SearchRun run_search(int torsion, int workers) {
  std::istringstream in;
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  const int code = run({"search", "--torsion", std::to_string(torsion), "--max-n", "200", "--workers",
                        std::to_string(workers)},
                       in, out, err);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {code, out.str(), s};
}

std::vector<RankCertificate> parse_lines(const std::string& jsonl) {
  std::vector<RankCertificate> out;
  std::istringstream lines(jsonl);
  for (std::string line; std::getline(lines, line);)
    if (!line.empty()) out.push_back(parse_certificate(line));
  return out;
}

Int mod(const Int& a, long m) {
  Int r = a % m;
  return r < 0 ? Int(r + m) : r;
}

bool on_weierstrass(const CurvePoint& P, const Rat& A, const Rat& B) {
  return !P.is_infinity() && P.y() * P.y() == P.x() * P.x() * P.x() + A * P.x() + B;
}

// Failed checks of one T2 certificate, recomputed from its stored fields.
std::vector<std::string> t2_violations(const RankCertificate& c) {
  std::vector<std::string> v;
  auto need = [&](bool ok, const char* what) {
    if (!ok) v.emplace_back(what);
  };
  const Int &a = c.a, &b = c.b, &p = c.p, &q = c.q;
  need(2 * b * b == p + q, "2b^2 = p + q");
  need(mod(p, 16) == 15 && mod(q, 16) == 3, "p = 15, q = 3 (mod 16)");
  need(a * a - b * b * b * b == -p * q, "a^2 - b^4 = -pq");
  need(c.m == -p * q && on_weierstrass(c.witness, Rat(-p * q), Rat(0)), "witness on E_{-pq}");
  need(c.torsion == "Z/2" && torsion_subgroup(Curve::Em(-p * q)).name() == "Z/2", "torsion Z/2");
  need(c.root_number == 1 && root_number_Em(-p * q) == 1, "root number +1");
  const auto& d = std::get<Descent2Record>(c.descent);
  need(d.dim_sel_phi + d.dim_sel_phi_dual <= 4, "dim Sel_phi + dim Sel_phi' <= 4");
  need(c.rank_lo >= 1 && c.rank_hi <= 2 && c.rank_lo <= c.rank_hi, "interval inside [1, 2]");
  need(c.rank_under_parity == 2, "parity-conditional rank 2");
  try {
    verify_certificate(c);
  } catch (const std::exception& e) {
    v.emplace_back(e.what());
  }
  return v;
}

std::vector<std::string> t3_violations(const RankCertificate& c) {
  std::vector<std::string> v;
  auto need = [&](bool ok, const char* what) {
    if (!ok) v.emplace_back(what);
  };
  const Int &a = c.a, &b = c.b, &p = c.p, &q = c.q;
  const Int a3 = a * a * a;
  need(2 * a3 == 27 * p + q, "2a^3 = 27p + q");
  need(mod(p, 9) == 2 && mod(q, 9) == 7, "p = 2, q = 7 (mod 9)");
  need(a3 * a3 - b * b == 27 * p * q, "a^6 - b^2 = 27pq");
  need(c.m == p * q && on_weierstrass(c.witness, Rat(0), Rat(p * q * p * q)), "witness on A_pq");
  need(c.torsion == "Z/3" && torsion_subgroup(Curve::Am(p * q)).name() == "Z/3", "torsion Z/3");
  need(c.root_number == 1 && root_number_Am(p * q) == 1, "root number +1");
  const auto& d = std::get<Descent3Record>(c.descent);
  need(d.im_alpha_upper.size() <= 9, "|im alpha| <= 9");
  need(d.im_alpha_prime_bound <= 3, "|im alpha'| <= 3");
  need(c.rank_lo == 1 && c.rank_hi == 2, "interval [1, 2]");
  need(c.rank_under_parity == 2, "parity-conditional rank 2");
  try {
    verify_certificate(c);
  } catch (const std::exception& e) {
    v.emplace_back(e.what());
  }
  return v;
}

Outcome pipeline(int torsion, double limit, std::size_t min_count, const PrimePairHit& first,
                 std::vector<RankCertificate>& keep) {
  const SearchRun r = run_search(torsion, 8);
  if (r.code != 0) return {false, "search exited with " + std::to_string(r.code)};
  keep = parse_lines(r.jsonl);
  std::ostringstream msg;
  msg << keep.size() << " certificates in " << r.seconds << " s";
  bool ok = r.seconds < limit && keep.size() >= min_count;
  if (keep.empty()) return {false, msg.str()};
  const RankCertificate& c0 = keep.front();
  const bool first_ok = c0.index() == first.n && c0.p == first.p1 && c0.q == first.p2;
  msg << "; first " << (torsion == 2 ? "b" : "a") << " = " << c0.index() << " (" << c0.p << ", " << c0.q << ")";
  ok = ok && first_ok;
  std::size_t bad = 0;
  for (const auto& c : keep) {
    const auto v = torsion == 2 ? t2_violations(c) : t3_violations(c);
    if (!v.empty()) {
      ++bad;
      msg << "; " << to_string(c.family) << " " << c.index() << ": " << v.front();
    }
  }
  msg << "; " << bad << " failing";
  return {ok && bad == 0, msg.str()};
}

}  // namespace

int main() {
  std::vector<RankCertificate> t2, t3;

  report(1, "T2 pipeline", [&] { return pipeline(2, 60.0, 10, {5, 47, 3}, t2); });
  report(2, "T3 pipeline", [&] { return pipeline(3, 120.0, 5, {8, 11, 727}, t3); });

  report(3, "2-descent shortcuts vs generic sweep", [&]() -> Outcome {
    const auto hits = search_prime_pairs(t2_search_params(200));
    if (hits.size() < 10) return {false, "fewer than 10 instances"};
    std::size_t compared = 0, disagree = 0;
    for (std::size_t k = 0; k < 10; ++k) {
      const Int m = -Int(std::to_string(hits[k].p1)) * Int(std::to_string(hits[k].p2));
      for (IsogenySide side : {IsogenySide::kPhi, IsogenySide::kPhiDual})
        for (const Int& d : enumerate_QS2(m))
          for (const Place& v : bad_places(m)) {
            if (v.is_real()) continue;
            const QuarticSpace space = homogeneous_space(m, side, d);
            const auto cut = quartic_shortcut(space, v.p);
            if (!cut) continue;
            ++compared;
            if (cut->solvable != quartic_solvable_padic_generic(space, v.p)) ++disagree;
          }
    }
    return {disagree == 0 && compared > 0,
            std::to_string(compared) + " (class, place) pairs with a shortcut, " + std::to_string(disagree) +
                " disagreements"};
  });

  report(4, "mod-9 criterion vs brute force mod 3^5", []() -> Outcome {
    const auto t0 = std::chrono::steady_clock::now();
    const long reps[6][3] = {{19, 37, 73}, {2, 11, 29}, {13, 31, 67}, {5, 23, 41}, {7, 43, 61}, {17, 53, 71}};
    int triples = 0, disagree = 0;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        for (int c = 0; c < 6; ++c) {
          const long u1 = reps[a][0], u2 = reps[b][1], u3 = reps[c][2];
          ++triples;
          if (ternary_mod9_criterion(TernaryCubic(Int(u1), Int(u2), Int(u3))).value() !=
              oracle::cubic_q3_bruteforce(u1, u2, u3))
            ++disagree;
        }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream msg;
    msg << triples << " unit triples, " << disagree << " disagreements, " << s << " s";
    return {disagree == 0 && triples == 216 && s < 10.0, msg.str()};
  });

  report(5, "torsion: Lutz-Nagell vs closed form", []() -> Outcome {
    std::mt19937_64 rng(20240607);
    int em = 0, am = 0, disagree = 0;
    while (em < 50) {
      const Int m(static_cast<long>(rng() % 2000001) - 1000000);
      if (m == 0 || m == 4 || powerfree_part(m, 4).t != 1 || is_perfect_square(Int(-m))) continue;
      const Curve C = Curve::Em(m);
      if (torsion_subgroup(C).invariants != torsion_closed_form(C)) ++disagree;
      ++em;
    }
    while (am < 50) {
      const Int m(static_cast<long>(rng() % 2000001) - 1000000);
      if (m == 0 || m == 1 || gcd(m, Int(6)) != 1 || powerfree_part(m, 6).t != 1) continue;
      const Curve C = Curve::Am(m);
      if (torsion_subgroup(C).invariants != torsion_closed_form(C)) ++disagree;
      ++am;
    }
    return {disagree == 0, "50 E_m + 50 A_m, " + std::to_string(disagree) + " disagreements"};
  });

  report(6, "Selmer and image membership on every certificate", [&]() -> Outcome {
    int checked = 0, violations = 0;
    for (const auto& c : t2) {
      const auto& d = std::get<Descent2Record>(c.descent);
      const Int pq = c.p * c.q;
      const SelmerGroup2 sel = selmer_group(-pq, IsogenySide::kPhi);
      const SelmerGroup2 dual = selmer_group(-pq, IsogenySide::kPhiDual);
      const bool stored = std::count(d.sel_phi.begin(), d.sel_phi.end(), pq) == 1 &&
                          std::count(d.sel_phi_dual.begin(), d.sel_phi_dual.end(), Int(-pq)) == 1;
      if (!stored || !sel.contains(pq) || !dual.contains(-pq)) ++violations;
      ++checked;
    }
    for (const auto& c : t3) {
      const auto& d = std::get<Descent3Record>(c.descent);
      const CubeClass two_pq = CubeClass::of(Rat(Int(2 * c.p * c.q)));
      const AlphaImageBound b = alpha_upper(c.p, c.q);
      auto has = [](const std::vector<CubeClass>& s, const CubeClass& x) {
        return std::find(s.begin(), s.end(), x) != s.end();
      };
      if (!has(d.im_alpha_lower, CubeClass{}) || !has(d.im_alpha_lower, two_pq) || !has(b.lower, two_pq) ||
          !has(b.upper, alpha_eval(c.witness, c.m)))
        ++violations;
      ++checked;
    }
    return {violations == 0 && checked > 0,
            std::to_string(checked) + " certificates, " + std::to_string(violations) + " violations"};
  });

  report(7, "point identities for 1 <= a, b <= 30", []() -> Outcome {
    int checked = 0, violations = 0;
    for (long a = 1; a <= 30; ++a)
      for (long b = 1; b <= 30; ++b) {
        if (a == b) continue;
        const Int A(a), B(b);
        // y^2 = x^3 + m x at (b^2, a b^2) with m = b^2 (a^2 - b^2)
        const Int m2 = B * B * (A * A - B * B), x2 = B * B, y2 = A * B * B;
        // y^2 = x^3 + m^2 at (b^2 - a^2, a^2 b - b^3) with m = a (a^2 - b^2)
        const Int m3 = A * (A * A - B * B), x3 = B * B - A * A, y3 = A * A * B - B * B * B;
        const bool ok2 = y2 * y2 == x2 * x2 * x2 + m2 * x2;
        const bool ok3 = y3 * y3 == x3 * x3 * x3 + m3 * m3;
        const PointOnCurve t2p = construct_point_T2(A, B), t3p = construct_point_T3(A, B);
        const bool lib = t2p.point == CurvePoint(Rat(x2), Rat(y2)) && t2p.curve == Curve::Em(m2) &&
                         t3p.point == CurvePoint(Rat(x3), Rat(y3)) && t3p.curve == Curve::Am(m3);
        if (!ok2 || !ok3 || !lib) ++violations;
        ++checked;
      }
    return {violations == 0, std::to_string(checked) + " pairs, " + std::to_string(violations) + " violations"};
  });

  report(8, "determinism across worker counts", []() -> Outcome {
    const SearchRun one = run_search(2, 1), eight = run_search(2, 8);
    const bool same = one.code == 0 && eight.code == 0 && one.jsonl == eight.jsonl && !one.jsonl.empty();
    return {same, std::string(same ? "byte-identical" : "outputs differ") + " (" + std::to_string(one.jsonl.size()) +
                      " bytes)"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
