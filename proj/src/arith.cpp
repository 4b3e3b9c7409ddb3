#include "parityrank/arith.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "parityrank/errors.hpp"

namespace parityrank {

namespace {

constexpr std::array<unsigned, 13> kWitnessBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// 3317044064679887385961981: below this the thirteen bases above are a proof
// (twelve bases already fail at 318665857834031151167461).
const Int& deterministic_limit() {
  static const Int limit("3317044064679887385961981");
  return limit;
}

bool strong_probable_prime(const Int& n, const Int& base, const Int& d, unsigned s) {
  Int x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Int n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

Int brent_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Int y = 2, x, ys, q = 1, g = 1;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const Int& v) { return Int((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Int diff = x - y;
          q = (q * abs(diff)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Int diff = x - ys;
        Int ad = abs(diff);
        mpz_gcd(g.get_mpz_t(), ad.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Int d = brent_rho(n);
  split_into(d, out);
  split_into(Int(n / d), out);
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p() && n.get_ui() < (1ul << 62)) return is_prime_u64(n.get_ui());
  for (unsigned b : kWitnessBases)
    if (n % b == 0) return n == b;
  if (n >= deterministic_limit()) return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
  Int d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (unsigned b : kWitnessBases)
    if (!strong_probable_prime(n, Int(b), d, s)) return false;
  return true;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned b : kWitnessBases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned b : kWitnessBases) {
    std::uint64_t x = powmod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Int Factorization::value() const {
  Int v = sign;
  for (const auto& [p, e] : factors) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

Factorization factor(const Int& n) {
  if (n == 0) throw PreconditionError("factor: zero has no factorization");
  Factorization out;
  out.sign = n < 0 ? -1 : 1;
  Int rest = abs(n);
  std::map<Int, unsigned> found;
  auto strip = [&](unsigned long p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e) found[Int(p)] += e;
  };
  strip(2);
  for (unsigned long p = 3; p <= 65536; p += 2) {
    if (mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0) break;
    strip(p);
  }
  if (rest != 1) split_into(rest, found);
  for (auto& [p, e] : found) out.factors.emplace_back(p, e);
  return out;
}

PowerfreeDecomposition powerfree_part(const Int& n, unsigned k) {
  if (n == 0) throw PreconditionError("powerfree_part: n must be nonzero");
  if (k < 2) throw PreconditionError("powerfree_part: k must be at least 2");
  const Factorization f = factor(n);
  Int s = f.sign, t = 1;
  for (const auto& [p, e] : f.factors) {
    Int pt, ps;
    mpz_pow_ui(pt.get_mpz_t(), p.get_mpz_t(), e / k);
    mpz_pow_ui(ps.get_mpz_t(), p.get_mpz_t(), e % k);
    t *= pt;
    s *= ps;
  }
  return {s, t};
}

bool is_squarefree(const Int& n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factor(n).factors)
    if (e > 1) return false;
  return true;
}

bool is_perfect_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

unsigned valuation(const Int& n, const Int& p) {
  if (n == 0) throw PreconditionError("valuation of zero");
  Int rest = n;
  unsigned e = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

long valuation(const Rat& x, const Int& p) {
  if (x == 0) throw PreconditionError("valuation of zero");
  return static_cast<long>(valuation(x.get_num(), p)) - static_cast<long>(valuation(x.get_den(), p));
}

std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> out;
  for (const auto& [p, e] : factor(n).factors) out.push_back(p);
  return out;
}

Int sqrt_mod_prime(const Int& a_in, const Int& p) {
  Int a = a_in % p;
  if (a < 0) a += p;
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1)
    throw PreconditionError("sqrt_mod_prime: not a nonzero quadratic residue");
  // Tonelli-Shanks.
  Int q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Int c, r, t, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    Int t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    Int b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return r;
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Int parse_int(const std::string& text) {
  if (text.empty()) throw PreconditionError("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw PreconditionError("malformed integer: " + text);
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9') throw PreconditionError("malformed integer: " + text);
  return Int(text[0] == '+' ? text.substr(1) : text, 10);
}

Rat parse_rat(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw PreconditionError("rational needs a positive denominator: " + text);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

EisensteinNum::EisensteinNum(Rat v1, Rat v2) : v1_(std::move(v1)), v2_(std::move(v2)) {
  v1_.canonicalize();
  v2_.canonicalize();
}

EisensteinNum EisensteinNum::zeta3() { return {Rat(-1, 2), Rat(1, 2)}; }

bool EisensteinNum::is_algebraic_integer() const {
  const Rat a = 2 * v1_, b = 2 * v2_;
  if (a.get_den() != 1 || b.get_den() != 1) return false;
  return (a.get_num() - b.get_num()) % 2 == 0;
}

EisensteinNum EisensteinNum::operator+(const EisensteinNum& o) const { return {v1_ + o.v1_, v2_ + o.v2_}; }
EisensteinNum EisensteinNum::operator-(const EisensteinNum& o) const { return {v1_ - o.v1_, v2_ - o.v2_}; }

EisensteinNum EisensteinNum::operator*(const EisensteinNum& o) const {
  return {v1_ * o.v1_ - 3 * v2_ * o.v2_, v1_ * o.v2_ + v2_ * o.v1_};
}

EisensteinNum EisensteinNum::operator/(const EisensteinNum& o) const {
  const Rat n = o.norm();
  if (n == 0) throw PreconditionError("EisensteinNum: division by zero");
  const EisensteinNum num = *this * o.conj();
  return {num.v1_ / n, num.v2_ / n};
}

std::string EisensteinNum::str() const { return to_string(v1_) + " + " + to_string(v2_) + "*sqrt(-3)"; }

EisensteinNum eisenstein_split(const Int& p) {
  if (!is_prime(p) || p % 3 != 1)
    throw PreconditionError("eisenstein_split: " + p.get_str() + " is not a prime split in Q(sqrt(-3))");
  // Cornacchia for x^2 + 3y^2 = p.
  Int r = sqrt_mod_prime(Int(p - 3), p);
  if (2 * r > p) r = p - r;
  Int a = p, b = r;
  while (b * b >= p) {
    Int t = a % b;
    a = b;
    b = t;
  }
  Int rest = p - b * b;
  if (rest % 3 != 0 || !is_perfect_square(Int(rest / 3)))
    throw InvariantError("eisenstein_split: Cornacchia failed for " + p.get_str());
  Int y;
  Int rest3 = rest / 3;
  mpz_sqrt(y.get_mpz_t(), rest3.get_mpz_t());
  return {Rat(abs(b)), Rat(y)};
}

namespace {

// O_K / 2 O_K = F_4 = {0, 1, w, w + 1} with w = (1 + sqrt(-3))/2, w^2 = w + 1.
// Encoded as bits (const, w): 0 -> 0, 1 -> 1, w -> 2, w + 1 -> 3.
constexpr int kF4Log[4] = {-1, 0, 1, 2};

int f4_reduce(const EisensteinNum& v) {
  // v = x + y*w with x = v1 - v2, y = 2*v2.
  const Rat x = v.v1() - v.v2();
  const Rat y = 2 * v.v2();
  const int xb = mpz_odd_p(x.get_num_mpz_t()) ? 1 : 0;
  const int yb = mpz_odd_p(y.get_num_mpz_t()) ? 1 : 0;
  return xb | (yb << 1);
}

}  // namespace

int cube_class_f4(const EisensteinNum& v) {
  if (!v.is_algebraic_integer()) throw PreconditionError("cube_class_f4: not an algebraic integer");
  if (v.norm().get_num() % 2 == 0) throw PreconditionError("cube_class_f4: norm must be odd");
  const int lv = kF4Log[f4_reduce(v)];
  const int lt = kF4Log[f4_reduce(v.conj())];
  return ((lt - lv) % 3 + 3) % 3;
}

}  // namespace parityrank
