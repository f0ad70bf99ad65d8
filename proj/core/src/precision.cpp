#include "asymval/numerics/precision.hpp"

#include <cstdlib>
#include <string>

#include "asymval/errors.hpp"

namespace asymval {

PrecisionContext PrecisionContext::with_bits(long bits) {
  if (bits < kMinBits || bits > (1L << 24))
    throw InvalidArgument("precision must be between 64 and 2^24 bits, got " + std::to_string(bits));
  PrecisionContext ctx;
  ctx.bits = static_cast<mpfr_prec_t>(bits);
  return ctx;
}

PrecisionContext PrecisionContext::from_env() {
  const char* env = std::getenv("ASYMVAL_PRECISION");
  if (env == nullptr || *env == '\0') return {};
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0') throw InvalidArgument(std::string("ASYMVAL_PRECISION is not an integer: ") + env);
  return with_bits(v);
}

}  // namespace asymval
