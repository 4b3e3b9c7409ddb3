#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "parityrank/arith.hpp"
#include "parityrank/curves.hpp"
#include "parityrank/descent3.hpp"

namespace parityrank {

/// Search for A*p1 + B*p2 = target(n) in primes p1 = i, p2 = j (mod g).
struct PrimePairParams {
  std::uint64_t A = 1, B = 1, g = 1, i = 0, j = 0;
  std::function<std::uint64_t(std::uint64_t)> target;
  std::uint64_t n_max = 0;
  std::uint64_t min_prime = 2;

  void validate() const;
};

/// 2b^2 = p + q, p = 15 and q = 3 (mod 16).
PrimePairParams t2_search_params(std::uint64_t n_max);
/// 2a^3 = 27p + q, p = 2 and q = 7 (mod 9), p, q >= 5.
PrimePairParams t3_search_params(std::uint64_t n_max);

struct PrimePairHit {
  std::uint64_t n, p1, p2;
  bool operator==(const PrimePairHit&) const = default;
};

/// Among all admissible pairs for n, the one whose smaller prime is least
/// (ties broken by the smaller p1).
std::optional<PrimePairHit> prime_pair_for(const PrimePairParams& params, std::uint64_t n);

/// Hits for n in [n_first, n_last], ascending in n.
std::vector<PrimePairHit> search_prime_pairs(const PrimePairParams& params, std::uint64_t n_first = 1,
                                             std::uint64_t n_last = 0);

enum class TorsionFamily { kT2, kT3 };

struct Descent2Record {
  std::vector<Int> sel_phi;
  std::vector<Int> sel_phi_dual;
  unsigned dim_sel_phi = 0;
  unsigned dim_sel_phi_dual = 0;
  bool operator==(const Descent2Record&) const = default;
};

struct Descent3Record {
  std::vector<CubeClass> im_alpha_lower;
  std::vector<CubeClass> im_alpha_upper;
  int im_alpha_prime_bound = 0;
  CubeClass witness_alpha;
  bool operator==(const Descent3Record&) const = default;
};

struct RankCertificate {
  TorsionFamily family = TorsionFamily::kT2;
  // T2: a^2 - b^4 = -pq with index b; T3: a^6 - b^2 = 27pq with index a.
  Int a, b;
  Int p, q;
  Int m;  // parameter of the minimized curve E_m / A_m
  CurvePoint witness = CurvePoint::infinity();
  std::string torsion;
  std::vector<CurvePoint> torsion_generators;
  int root_number = 0;
  std::variant<Descent2Record, Descent3Record> descent;
  int rank_lo = 0, rank_hi = 0;
  std::optional<int> rank_under_parity;
  std::vector<std::string> assumes;
  std::vector<std::string> notes;

  const Int& index() const { return family == TorsionFamily::kT2 ? b : a; }
  Curve curve() const { return family == TorsionFamily::kT2 ? Curve::Em(m) : Curve::Am(m); }

  bool operator==(const RankCertificate&) const = default;
};

RankCertificate certify_T2(const Int& b, const Int& p, const Int& q);
RankCertificate certify_T3(const Int& a, const Int& p, const Int& q);

/// Checks that only need the stored fields. Throws InvariantError.
void check_certificate_fields(const RankCertificate& cert);

/// Stored-field checks, then a from-scratch recomputation compared field by field.
void verify_certificate(const RankCertificate& cert);

std::string to_string(TorsionFamily family);

}  // namespace parityrank
