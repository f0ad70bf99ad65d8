#pragma once

#include <vector>

#include "asymval/numerics/real.hpp"

namespace asymval {

struct ComplexValue {
  Real re;
  Real im;
};

/// Adaptive Gauss-Legendre quadrature in MPFR for the straight-line integral
/// int_0^z e^{-w^2} dw = z int_0^1 e^{-z^2 t^2} dt.
///
/// Shares nothing with the series engine in phi0; it exists to cross-check it.
class ErfIntegralOracle {
 public:
  explicit ErfIntegralOracle(mpfr_prec_t bits, int order = 20);

  /// Throws ToleranceUnreachable if bisection depth runs out.
  ComplexValue integral(double zr, double zi, double tol) const;
  mpfr_prec_t bits() const { return bits_; }

 private:
  mpfr_prec_t bits_;
  std::vector<Real> nodes_;    // on [-1, 1]
  std::vector<Real> weights_;

  void panel(const Real& zr, const Real& zi, const Real& a, const Real& b, Real& out_re, Real& out_im) const;
};

/// One-shot convenience: builds an oracle at a precision suited to |z| and tol.
ComplexValue erf_integral_oracle(double zr, double zi, double tol);

}  // namespace asymval
