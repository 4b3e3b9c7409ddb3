#include "parityrank/rootnum.hpp"

#include "parityrank/errors.hpp"

namespace parityrank {

int root_number_Em(const Int& m) {
  if (!is_squarefree(m)) throw PreconditionError("root_number_Em: m must be square-free");
  const int w_inf = m > 0 ? 1 : -1;
  Int r = m % 16;
  if (r < 0) r += 16;
  const int w_2 = (r == 1 || r == 3 || r == 11 || r == 13) ? -1 : 1;
  return w_inf * w_2;
}

int root_number_Am(const Int& m) {
  if (!is_squarefree(m) || gcd(m, Int(6)) != 1)
    throw PreconditionError("root_number_Am: m must be square-free and prime to 6");
  Int m2 = (m * m) % 9;
  int w = (m2 == 7) ? -1 : 1;
  for (const Int& p : prime_divisors(m))
    if (p % 3 == 2) w = -w;
  return w;
}

}  // namespace parityrank
