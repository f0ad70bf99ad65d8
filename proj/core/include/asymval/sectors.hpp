#pragma once

#include <gmpxx.h>

#include <vector>

#include "asymval/plan.hpp"

namespace asymval {

/// bits[j-1] = 1 sends generation j onto H_j, 0 onto K_j.
using AddressBits = std::vector<int>;

/// Closed sector [lo, hi] (units of pi) of a given generation.
///
/// Endpoints are not reduced mod 2: the K_1 tree lives around 1 and the H_1
/// tree around 0, so every interval is an honest lo < hi pair.
struct SectorInterval {
  mpq_class lo;
  mpq_class hi;
  int generation = 0;

  mpq_class width() const { return hi - lo; }
  mpq_class mid() const { return (lo + hi) / 2; }
  bool contains(const SectorInterval& inner) const { return lo <= inner.lo && inner.hi <= hi; }

  friend bool operator==(const SectorInterval&, const SectorInterval&) = default;
};

/// G(0) = K_1 or G(1) = H_1.
SectorInterval root_sector(int bit, const FunctionPlan& plan);

/// The leftmost sector inside `parent` that z^{N_n} maps onto H_n (bit 1) or
/// K_n (bit 0). Throws ConstructionError if none fits.
SectorInterval child_sector(const SectorInterval& parent, int bit, const FunctionPlan& plan);

/// S_1 > S_2 > ... for the address. Throws InvalidArgument past plan depth.
std::vector<SectorInterval> address_to_sector(const AddressBits& bits, const FunctionPlan& plan);

struct RayAngle {
  RationalAngle theta;
  mpq_class width;  ///< units of pi
};

RayAngle ray_angle(const AddressBits& bits, const FunctionPlan& plan);

/// All 2^depth generation-depth sectors, sorted by lo.
std::vector<SectorInterval> cantor_intervals(const FunctionPlan& plan, int depth);

/// N_n [lo, hi] shifted by a multiple of 2 so the midpoint lies in (-1, 1].
std::pair<mpq_class, mpq_class> image_interval(const SectorInterval& s, const mpz_class& N);

}  // namespace asymval
