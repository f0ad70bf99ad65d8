#include "asymval/targets.hpp"

#include <algorithm>
#include <numeric>

#include "asymval/errors.hpp"

namespace asymval {

namespace {

constexpr long kMaxDen = 1L << 16;

// cum[d] = number of reduced fractions in (0,1) with denominator <= d.
const std::vector<long>& cumulative_totient() {
  static const std::vector<long> table = [] {
    std::vector<long> phi(kMaxDen + 1);
    std::iota(phi.begin(), phi.end(), 0L);
    for (long p = 2; p <= kMaxDen; ++p)
      if (phi[p] == p)
        for (long m = p; m <= kMaxDen; m += p) phi[m] -= phi[m] / p;
    std::vector<long> cum(kMaxDen + 1, 0);
    for (long d = 2; d <= kMaxDen; ++d) cum[d] = cum[d - 1] + phi[d];
    return cum;
  }();
  return table;
}

long block_of(const mpq_class& q) {
  if (q <= 0 || q >= 1) throw InvalidArgument("block value must lie in (0,1)");
  if (q.get_den() > kMaxDen) throw RangeError("denominator beyond the enumeration table");
  const long d = q.get_den().get_si(), p = q.get_num().get_si();
  long below = 0;
  for (long j = 1; j < p; ++j)
    if (std::gcd(j, d) == 1) ++below;
  return cumulative_totient()[d - 1] + below;
}

long index_for(const mpq_class& q, int slot) { return 2 + 4 * block_of(q) + slot; }

GaussianRational slot_value(const mpq_class& q, int slot) {
  switch (slot) {
    case 0: return {q, 0};
    case 1: return {-q, 0};
    case 2: return {0, q};
    default: return {0, -q};
  }
}

// Distinct values in (0,1) summing to x > 0, all with index > floor_index.
std::vector<mpq_class> decompose(const mpq_class& x, int slot, long floor_index) {
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  for (long e = 0; e <= 4096; ++e) {
    const mpz_class k = whole + 1 + e;
    const mpq_class b = x / k;
    std::vector<mpq_class> terms;
    if (k == 1) {
      terms.push_back(b);
    } else {
      const mpq_class c = std::min(b, mpq_class(1 - b)) / (k * (e + 1));
      const mpq_class centre = mpq_class(k - 1) / 2;
      for (mpz_class j = 0; j < k; ++j) terms.push_back(b + c * (mpq_class(j) - centre));
    }
    bool ok = true;
    for (auto& t : terms) {
      t.canonicalize();
      if (t.get_den() > kMaxDen || index_for(t, slot) <= floor_index) {
        ok = false;
        break;
      }
    }
    if (ok) return terms;
  }
  throw ConstructionError("no decomposition above index " + std::to_string(floor_index));
}

void add_axis(TargetSelection& s, const mpq_class& x, bool imag, long floor_index) {
  if (x == 0) return;
  const int slot = (imag ? 2 : 0) + (x < 0 ? 1 : 0);
  for (const auto& q : decompose(abs(x), slot, floor_index)) s.A.push_back(index_for(q, slot));
}

void finish(TargetSelection& s) {
  std::sort(s.A.begin(), s.A.end());
  if (std::adjacent_find(s.A.begin(), s.A.end()) != s.A.end()) throw ConstructionError("repeated index in A");
  s.achieved = {0, 0};
  s.abs_sum = 0;
  for (long n : s.A) {
    GaussianRational b = beta(n);
    s.achieved = s.achieved + b;
    s.abs_sum += abs(b.re) + abs(b.im);
  }
}

}  // namespace

GaussianRational GaussianRational::parse(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (ch != ' ') t += ch;
  if (t.empty()) throw FormatError("empty complex number");
  // Split at the last sign that is not leading and not an exponent sign.
  size_t cut = std::string::npos;
  for (size_t i = 1; i < t.size(); ++i)
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') cut = i;
  std::vector<std::string> parts;
  if (cut == std::string::npos)
    parts = {t};
  else
    parts = {t.substr(0, cut), t.substr(cut)};
  GaussianRational g{0, 0};
  bool seen_re = false, seen_im = false;
  for (std::string p : parts) {
    const auto ipos = p.find('i');
    if (ipos == std::string::npos) {
      if (seen_re) throw FormatError("two real parts in '" + text + "'");
      g.re = parse_rational(p.front() == '+' ? p.substr(1) : p);
      seen_re = true;
      continue;
    }
    if (seen_im || p.find('i', ipos + 1) != std::string::npos) throw FormatError("bad imaginary part in '" + text + "'");
    p.erase(ipos, 1);
    std::string sign;
    if (!p.empty() && (p[0] == '+' || p[0] == '-')) {
      sign = p[0] == '-' ? "-" : "";
      p.erase(0, 1);
    }
    if (p.empty()) p = "1";
    if (p[0] == '/') p = "1" + p;
    if (p.back() == '*') p.pop_back();
    g.im = parse_rational(sign + p);
    seen_im = true;
  }
  return g;
}

std::string GaussianRational::str() const {
  if (im == 0) return rational_str(re);
  std::string s = re == 0 ? "" : rational_str(re);
  if (im < 0)
    s += "-i";
  else if (re != 0)
    s += "+i";
  else
    s += "i";
  return s + rational_str(abs(im));
}

mpq_class block_value(long k) {
  if (k < 0) throw InvalidArgument("block index must be >= 0");
  const auto& cum = cumulative_totient();
  if (k >= cum.back()) throw RangeError("index beyond the enumeration table");
  const long d = std::upper_bound(cum.begin(), cum.end(), k) - cum.begin();
  long r = k - cum[d - 1];
  for (long p = 1; p < d; ++p)
    if (std::gcd(p, d) == 1 && r-- == 0) return mpq_class(p, d);
  throw ConstructionError("enumeration table inconsistent");
}

GaussianRational beta(long n) {
  if (n < 1) throw InvalidArgument("beta index must be >= 1");
  if (n == 1) return {0, 0};
  const long m = n - 2;
  return slot_value(block_value(m / 4), static_cast<int>(m % 4));
}

long index_of(const GaussianRational& x) {
  if (x.re == 0 && x.im == 0) return 1;
  if (x.re != 0 && x.im != 0) throw InvalidArgument(x.str() + " is not in P");
  const bool imag = x.re == 0;
  const mpq_class v = imag ? x.im : x.re;
  if (abs(v) >= 1) throw InvalidArgument(x.str() + " is not in P");
  return index_for(abs(v), (imag ? 2 : 0) + (v < 0 ? 1 : 0));
}

AddressBits TargetSelection::bits_prefix(int depth) const {
  AddressBits bits(static_cast<size_t>(depth), 0);
  for (long n : A)
    if (n >= 1 && n <= depth) bits[static_cast<size_t>(n - 1)] = 1;
  return bits;
}

TargetSelection select_target(const GaussianRational& omega) {
  TargetSelection s;
  s.omega = omega;
  add_axis(s, omega.re, false, 0);
  add_axis(s, omega.im, true, 0);
  finish(s);
  return s;
}

TargetSelection select_target_approx(std::complex<double> omega, double tol) {
  if (!(tol > 0)) throw InvalidArgument("approximate targets need tol > 0");
  if (!std::isfinite(omega.real()) || !std::isfinite(omega.imag())) throw InvalidArgument("omega must be finite");
  TargetSelection s;
  s.exact = false;
  s.tolerance = tol;
  s.omega = {mpq_class(omega.real()), mpq_class(omega.imag())};
  const mpq_class axis_tol = mpq_class(tol) / 2;
  for (int axis = 0; axis < 2; ++axis) {
    const mpq_class target = axis == 0 ? s.omega.re : s.omega.im;
    const int slot = 2 * axis + (target < 0 ? 1 : 0);
    mpq_class gap = abs(target);
    std::set<mpq_class> used;
    long D = 8;
    while (gap > axis_tol) {
      mpq_class best = 0;
      for (long d = 2; d <= D; ++d) {
        mpz_class pz;
        mpq_class gd = gap * d;
        mpz_fdiv_q(pz.get_mpz_t(), gd.get_num_mpz_t(), gd.get_den_mpz_t());
        long p = pz > d - 1 ? d - 1 : pz.get_si();
        for (; p >= 1; --p) {
          mpq_class q(p, d);
          q.canonicalize();
          if (q <= best) break;
          if (!used.count(q)) {
            best = q;
            break;
          }
        }
      }
      if (best == 0 || best * 2 < std::min(gap, mpq_class(1))) {
        if (D >= kMaxDen) throw ToleranceUnreachable("greedy selection stalled above the tolerance");
        D *= 2;
        continue;
      }
      used.insert(best);
      s.A.push_back(index_for(best, slot));
      gap -= best;
    }
  }
  finish(s);
  return s;
}

TargetSelection infinity_target(long count) {
  if (count < 1) throw InvalidArgument("infinity_target needs count >= 1");
  TargetSelection s;
  s.infinity = true;
  long k = 0;
  for (long d = 2; static_cast<long>(s.A.size()) < count; ++d)
    for (long p = 1; p < d && static_cast<long>(s.A.size()) < count; ++p) {
      if (std::gcd(p, d) != 1) continue;
      if (2 * p >= d) s.A.push_back(2 + 4 * k);
      ++k;
    }
  finish(s);
  s.omega = s.achieved;
  return s;
}

TargetSelection constrained_target(const GaussianRational& omega, const std::set<long>& forced_in,
                                   const std::set<long>& forced_out) {
  for (long n : forced_in) {
    if (n < 1) throw InvalidArgument("indices start at 1");
    if (forced_out.count(n)) throw InvalidArgument("index " + std::to_string(n) + " both forced in and out");
  }
  TargetSelection s;
  s.omega = omega;
  GaussianRational rest = omega;
  for (long n : forced_in) {
    rest = rest - beta(n);
    s.A.push_back(n);
  }
  long floor_index = 0;
  if (!forced_in.empty()) floor_index = std::max(floor_index, *forced_in.rbegin());
  if (!forced_out.empty()) floor_index = std::max(floor_index, *forced_out.rbegin());
  add_axis(s, rest.re, false, floor_index);
  add_axis(s, rest.im, true, floor_index);
  finish(s);
  return s;
}

}  // namespace asymval
