#pragma once

#include <string>

#include "parityrank/family.hpp"

namespace parityrank {

/// Canonical single-line JSON: sorted keys, integers and rationals as strings.
/// Runs check_certificate_fields first.
std::string emit_certificate(const RankCertificate& cert);

/// Inverse of emit_certificate. Malformed input throws PreconditionError;
/// no arithmetic checks are made here.
RankCertificate parse_certificate(const std::string& text);

}  // namespace parityrank
