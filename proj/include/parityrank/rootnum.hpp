#pragma once

#include "parityrank/arith.hpp"

namespace parityrank {

/// Root number of y^2 = x^3 + m x for square-free m: sgn(m) * w_2, with
/// w_2 = -1 iff m = 1, 3, 11, 13 (mod 16).
int root_number_Em(const Int& m);

/// Root number of y^2 = x^3 + m^2 for square-free m prime to 6:
/// w_3 * prod_{p | m} w_p, with w_3 = -1 iff m^2 = -2 (mod 9) and
/// w_p = -1 iff p = 2 (mod 3).
int root_number_Am(const Int& m);

}  // namespace parityrank
