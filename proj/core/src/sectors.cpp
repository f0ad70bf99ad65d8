#include "asymval/sectors.hpp"

#include <algorithm>
#include <string>

#include "asymval/errors.hpp"

namespace asymval {

namespace {

mpz_class ceil_q(const mpq_class& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

void check_bit(int bit) {
  if (bit != 0 && bit != 1) throw InvalidArgument("address bits must be 0 or 1");
}

}  // namespace

SectorInterval root_sector(int bit, const FunctionPlan& plan) {
  check_bit(bit);
  const mpq_class half = plan.alpha(1).q() / 2;
  const mpq_class centre = bit == 1 ? mpq_class(0) : mpq_class(1);
  return {centre - half, centre + half, 1};
}

SectorInterval child_sector(const SectorInterval& parent, int bit, const FunctionPlan& plan) {
  check_bit(bit);
  const int n = parent.generation + 1;
  if (parent.generation < 1 || n > plan.levels)
    throw InvalidArgument("child of generation " + std::to_string(parent.generation) + " is outside the plan");
  const mpq_class a = plan.alpha(n).q();
  const mpz_class& N = plan.N_at(n);
  const mpq_class t = bit == 1 ? mpq_class(-a / 2) : mpq_class(1 - a / 2);
  // c = (t + 2k)/N >= lo  <=>  k >= (N lo - t)/2
  const mpz_class k = ceil_q(mpq_class((N * parent.lo - t) / 2));
  SectorInterval s;
  s.lo = (t + 2 * k) / N;
  s.hi = s.lo + a / N;
  s.lo.canonicalize();
  s.hi.canonicalize();
  s.generation = n;
  if (s.hi > parent.hi)
    throw ConstructionError("no generation-" + std::to_string(n) + " sector fits; plan is corrupt");
  return s;
}

std::vector<SectorInterval> address_to_sector(const AddressBits& bits, const FunctionPlan& plan) {
  if (bits.empty()) throw InvalidArgument("empty address");
  if (static_cast<int>(bits.size()) > plan.levels)
    throw InvalidArgument("address longer than the plan depth");
  std::vector<SectorInterval> chain{root_sector(bits[0], plan)};
  for (size_t j = 1; j < bits.size(); ++j) {
    chain.push_back(child_sector(chain.back(), bits[j], plan));
    if (!chain[j - 1].contains(chain[j])) throw ConstructionError("sector chain is not nested");
  }
  return chain;
}

RayAngle ray_angle(const AddressBits& bits, const FunctionPlan& plan) {
  const SectorInterval s = address_to_sector(bits, plan).back();
  return {RationalAngle(s.mid()), s.width()};
}

std::vector<SectorInterval> cantor_intervals(const FunctionPlan& plan, int depth) {
  if (depth < 1 || depth > plan.levels) throw InvalidArgument("cantor depth must lie in 1..levels");
  std::vector<SectorInterval> gen{root_sector(1, plan), root_sector(0, plan)};
  for (int d = 2; d <= depth; ++d) {
    std::vector<SectorInterval> next;
    next.reserve(gen.size() * 2);
    for (const auto& s : gen) {
      next.push_back(child_sector(s, 1, plan));
      next.push_back(child_sector(s, 0, plan));
    }
    gen = std::move(next);
  }
  std::sort(gen.begin(), gen.end(), [](const SectorInterval& a, const SectorInterval& b) { return a.lo < b.lo; });
  return gen;
}

std::pair<mpq_class, mpq_class> image_interval(const SectorInterval& s, const mpz_class& N) {
  mpq_class lo = s.lo * N, hi = s.hi * N;
  mpq_class mid = (lo + hi) / 2;
  mpq_class shift = RationalAngle::reduce(mid) - mid;
  lo += shift;
  hi += shift;
  return {lo, hi};
}

}  // namespace asymval
