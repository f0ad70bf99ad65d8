#pragma once

// Reference computations for the tests. Nothing here calls the engine code it
// is used to check.

#include <asymval/evaluate.hpp>

#include <complex>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

/// phi0 in long double: power series for |z| <= 3, erfc continued fraction in
/// the cones |arg z| < pi/4 and |arg z - pi| < pi/4 beyond that. Empty outside.
std::optional<std::complex<double>> phi0(std::complex<double> z);

/// phi0 from the MPFR quadrature of int_0^z e^{-w^2} dw, with its error budget.
struct HighPrecision {
  asymval::Real re, im, err;
};
HighPrecision phi0_quadrature(double x, double y, mpfr_prec_t bits);

/// Rationals in (0,1) by denominator, then numerator, by brute force.
std::vector<mpq_class> block_values(size_t count);
asymval::GaussianRational beta(long n);

/// Sector rule by scanning k upward from a safe lower bound.
struct Interval {
  mpq_class lo, hi;
};
Interval child(const Interval& parent, int bit, const mpq_class& alpha, const mpz_class& N);
Interval root(int bit, const mpq_class& alpha1);

/// sum_{n <= n_eval} beta_n phi0(lambda_n z^{N_n})^n in doubles at z = r e^{i pi theta};
/// empty when some term is not representable.
std::optional<std::complex<double>> phi_sum(const asymval::FunctionPlan& plan, double log_r, const mpq_class& theta,
                                            int n_eval);

/// Deterministic random numbers for the test matrix.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20260418);
  return gen;
}
mpq_class random_rational(long bound, long max_den);

/// Plans for the test matrix are slow to certify; build each once per process.
const asymval::FunctionPlan& desk_plan(const std::string& growth, int levels = 4);

}  // namespace oracle
