#pragma once

#include <mpfr.h>

namespace asymval {

struct PrecisionContext {
  static constexpr mpfr_prec_t kDefaultBits = 128;
  static constexpr mpfr_prec_t kMinBits = 64;

  mpfr_prec_t bits = kDefaultBits;

  /// Throws InvalidArgument below kMinBits.
  static PrecisionContext with_bits(long bits);
  /// Reads ASYMVAL_PRECISION, falling back to the default.
  static PrecisionContext from_env();
};

}  // namespace asymval
