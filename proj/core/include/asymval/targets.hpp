#pragma once

#include <gmpxx.h>

#include <complex>
#include <set>
#include <string>
#include <vector>

#include "asymval/sectors.hpp"

namespace asymval {

struct GaussianRational {
  mpq_class re;
  mpq_class im;

  /// "x", "x+iy", "x-iy", "iy", "-i/3", ... with p/q or exact decimal parts.
  static GaussianRational parse(const std::string& text);
  std::string str() const;
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// n-th element of P: beta_1 = 0, then blocks (q, -q, iq, -iq) with q running
/// through (0,1) by denominator, then numerator.
GaussianRational beta(long n);
/// The q of block k (0-based): 1/2, 1/3, 2/3, 1/4, 3/4, ...
mpq_class block_value(long k);
/// Inverse of beta. Throws InvalidArgument if x is not in P.
long index_of(const GaussianRational& x);

struct TargetSelection {
  GaussianRational omega;  ///< exact target (the exact image of a double in approximate mode)
  bool exact = true;
  bool infinity = false;
  double tolerance = 0.0;
  std::vector<long> A;  ///< sorted
  GaussianRational achieved;
  mpq_class abs_sum;

  /// i_j = 1 iff j in A, for j = 1..depth.
  AddressBits bits_prefix(int depth) const;
  long max_index() const { return A.empty() ? 0 : A.back(); }
};

TargetSelection select_target(const GaussianRational& omega);
/// Greedy finite truncation with |achieved - omega| <= tol; tol must be > 0.
TargetSelection select_target_approx(std::complex<double> omega, double tol);
/// First `count` indices with beta_n real and >= 1/2.
TargetSelection infinity_target(long count);
/// A containing forced_in, avoiding forced_out, summing exactly to omega.
TargetSelection constrained_target(const GaussianRational& omega, const std::set<long>& forced_in,
                                   const std::set<long>& forced_out);

}  // namespace asymval
