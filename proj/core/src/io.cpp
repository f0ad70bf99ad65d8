#include "asymval/io.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "asymval/errors.hpp"
#include "json.hpp"

namespace asymval {

using nlohmann::json;

namespace {

std::string q_str(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

mpq_class q_from(const json& j) {
  if (!j.is_string()) throw FormatError("expected a rational string");
  return parse_rational(j.get<std::string>());
}

std::string d_str(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double d_from(const json& j) {
  const auto s = j.get<std::string>();
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw FormatError("bad double '" + s + "'");
  return v;
}

json real_json(const Real& r) { return {{"value", r.to_decimal()}, {"bits", static_cast<long>(r.bits())}}; }

Real real_from(const json& j) {
  const long bits = j.at("bits").get<long>();
  if (bits < 2 || bits > (1L << 24)) throw FormatError("real precision out of range");
  return Real::parse(j.at("value").get<std::string>(), bits, Round::Nearest);
}

json cert_json(const SectorCertificate& c) {
  json j;
  j["kind"] = c.kind == CertKind::KBound ? "K" : "H";
  j["n"] = c.n;
  j["half_angle"] = q_str(c.half_angle.q());
  j["split_radius"] = d_str(c.split_radius);
  j["grid_step"] = d_str(c.grid_step);
  j["tiny_radius"] = d_str(c.tiny_radius);
  j["sup_mod_bound"] = real_json(c.sup_mod_bound);
  j["sup_arg_bound"] = c.sup_arg_bound ? real_json(*c.sup_arg_bound) : json(nullptr);
  j["status"] = c.certified() ? "certified" : "failed";
  j["reason"] = c.reason;
  j["segments"] = c.segments;
  return j;
}

SectorCertificate cert_from(const json& j) {
  SectorCertificate c;
  const auto kind = j.at("kind").get<std::string>();
  if (kind != "K" && kind != "H") throw FormatError("unknown certificate kind '" + kind + "'");
  c.kind = kind == "K" ? CertKind::KBound : CertKind::HBound;
  c.n = j.at("n").get<int>();
  c.half_angle = RationalAngle(q_from(j.at("half_angle")));
  c.split_radius = d_from(j.at("split_radius"));
  c.grid_step = d_from(j.at("grid_step"));
  c.tiny_radius = d_from(j.at("tiny_radius"));
  c.sup_mod_bound = real_from(j.at("sup_mod_bound"));
  if (!j.at("sup_arg_bound").is_null()) c.sup_arg_bound = real_from(j.at("sup_arg_bound"));
  const auto status = j.at("status").get<std::string>();
  if (status != "certified" && status != "failed") throw FormatError("unknown certificate status");
  c.status = status == "certified" ? CertStatus::Certified : CertStatus::Failed;
  c.reason = j.at("reason").get<std::string>();
  c.segments = j.at("segments").get<long>();
  return c;
}

json growth_json(const GrowthSpec& g) {
  json j;
  switch (g.kind) {
    case GrowthSpec::Kind::Power: j["kind"] = "pow"; break;
    case GrowthSpec::Kind::AffineLog: j["kind"] = "afflog"; break;
    case GrowthSpec::Kind::Table: j["kind"] = "table"; break;
  }
  j["params"] = json::array();
  for (const auto& p : g.params) j["params"].push_back(q_str(p));
  j["points"] = json::array();
  for (const auto& [x, y] : g.points) j["points"].push_back({q_str(x), q_str(y)});
  return j;
}

GrowthSpec growth_from(const json& j) {
  GrowthSpec g;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "pow")
    g.kind = GrowthSpec::Kind::Power;
  else if (kind == "afflog")
    g.kind = GrowthSpec::Kind::AffineLog;
  else if (kind == "table")
    g.kind = GrowthSpec::Kind::Table;
  else
    throw FormatError("unknown growth kind '" + kind + "'");
  for (const auto& p : j.at("params")) g.params.push_back(q_from(p));
  for (const auto& pt : j.at("points")) {
    if (!pt.is_array() || pt.size() != 2) throw FormatError("growth table points are pairs");
    g.points.emplace_back(q_from(pt[0]), q_from(pt[1]));
  }
  try {
    g.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("growth spec: ") + e.what());
  }
  return g;
}

json selection_json(const TargetSelection& s) {
  json j;
  j["omega"] = {{"re", q_str(s.omega.re)}, {"im", q_str(s.omega.im)}};
  j["exact"] = s.exact;
  j["infinity"] = s.infinity;
  j["tolerance"] = d_str(s.tolerance);
  j["A"] = s.A;
  j["achieved"] = {{"re", q_str(s.achieved.re)}, {"im", q_str(s.achieved.im)}};
  j["abs_sum"] = q_str(s.abs_sum);
  return j;
}

TargetSelection selection_from(const json& j) {
  TargetSelection s;
  s.omega = {q_from(j.at("omega").at("re")), q_from(j.at("omega").at("im"))};
  s.exact = j.at("exact").get<bool>();
  s.infinity = j.at("infinity").get<bool>();
  s.tolerance = d_from(j.at("tolerance"));
  s.A = j.at("A").get<std::vector<long>>();
  s.achieved = {q_from(j.at("achieved").at("re")), q_from(j.at("achieved").at("im"))};
  s.abs_sum = q_from(j.at("abs_sum"));
  GaussianRational sum{0, 0};
  mpq_class abs_sum = 0;
  for (size_t i = 0; i < s.A.size(); ++i) {
    if (s.A[i] < 1 || (i > 0 && s.A[i] <= s.A[i - 1])) throw FormatError("A must be strictly increasing from 1");
    const auto b = beta(s.A[i]);
    sum = sum + b;
    abs_sum += abs(b.re) + abs(b.im);
  }
  if (!(sum == s.achieved) || abs_sum != s.abs_sum) throw FormatError("selection sums do not match A");
  return s;
}

json plan_body(const FunctionPlan& p) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "asymval-plan";
  j["levels"] = p.levels;
  j["bits"] = static_cast<long>(p.bits);
  j["granularity_log2"] = p.granularity_log2;
  j["growth"] = growth_json(p.growth);
  j["k_half"] = q_str(p.k_half.q());
  j["k_certificate"] = cert_json(p.k_cert);
  json lv = json::array();
  for (int n = 1; n <= p.levels; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    lv.push_back({{"n", n},
                  {"alpha", q_str(p.alphas.at(i).q())},
                  {"N", p.N.at(i).get_str()},
                  {"logR", real_json(p.logR.at(i))},
                  {"logLambda", real_json(p.logLambda.at(i))},
                  {"h_certificate", cert_json(p.h_certs.at(i))}});
  }
  j["level_data"] = lv;
  return j;
}

void seal(json& j) { j["sha256"] = sha256_hex(j.dump(2)); }

void check_seal(json j, const char* what) {
  if (!j.is_object() || !j.contains("sha256")) throw FormatError(std::string(what) + " has no digest");
  const auto claimed = j.at("sha256").get<std::string>();
  j.erase("sha256");
  if (sha256_hex(j.dump(2)) != claimed) throw FormatError(std::string(what) + " digest does not match its content");
  if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion)
    throw FormatError(std::string(what) + " has an unsupported schema_version");
}

FunctionPlan plan_from(const json& j) {
  check_seal(j, "plan file");
  if (j.at("kind") != "asymval-plan") throw FormatError("not a plan file");
  FunctionPlan p;
  p.levels = j.at("levels").get<int>();
  p.bits = j.at("bits").get<long>();
  p.granularity_log2 = j.at("granularity_log2").get<int>();
  p.growth = growth_from(j.at("growth"));
  p.k_half = RationalAngle(q_from(j.at("k_half")));
  p.k_cert = cert_from(j.at("k_certificate"));
  const auto& lv = j.at("level_data");
  if (!lv.is_array() || static_cast<int>(lv.size()) != p.levels) throw FormatError("level_data size differs from levels");
  for (int n = 1; n <= p.levels; ++n) {
    const auto& e = lv[static_cast<size_t>(n - 1)];
    if (e.at("n").get<int>() != n) throw FormatError("level_data out of order");
    p.alphas.emplace_back(q_from(e.at("alpha")));
    mpz_class N;
    if (N.set_str(e.at("N").get<std::string>(), 10) != 0) throw FormatError("bad integer N");
    p.N.push_back(N);
    p.logR.push_back(real_from(e.at("logR")));
    p.logLambda.push_back(real_from(e.at("logLambda")));
    p.h_certs.push_back(cert_from(e.at("h_certificate")));
  }
  verify_plan(p);
  return p;
}

json parse_doc(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("missing or mistyped field: ") + e.what());
  }
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string plan_to_json(const FunctionPlan& plan) {
  json j = plan_body(plan);
  seal(j);
  return j.dump(2) + "\n";
}

FunctionPlan plan_from_json(const std::string& text) {
  const json j = parse_doc(text);
  return guarded([&] { return plan_from(j); });
}

std::string ray_to_json(const RayPlan& ray) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "asymval-ray";
  json pj = plan_body(ray.plan);
  seal(pj);
  j["plan"] = pj;
  j["selection"] = selection_json(ray.selection);
  j["depth"] = ray.depth;
  std::string bits;
  for (int b : ray.bits) bits += b ? '1' : '0';
  j["address"] = bits;
  j["sector"] = {{"lo", q_str(ray.sector.lo)}, {"hi", q_str(ray.sector.hi)}, {"generation", ray.sector.generation}};
  j["theta"] = q_str(ray.theta.q());
  j["theta_width"] = q_str(ray.theta_width);
  seal(j);
  return j.dump(2) + "\n";
}

RayPlan ray_from_json(const std::string& text) {
  const json j = parse_doc(text);
  return guarded([&] {
    check_seal(j, "ray file");
    if (j.at("kind") != "asymval-ray") throw FormatError("not a ray file");
    RayPlan r;
    r.plan = plan_from(j.at("plan"));
    r.selection = selection_from(j.at("selection"));
    r.depth = j.at("depth").get<int>();
    for (char c : j.at("address").get<std::string>()) {
      if (c != '0' && c != '1') throw FormatError("address must be a 0/1 string");
      r.bits.push_back(c - '0');
    }
    const auto& s = j.at("sector");
    r.sector.lo = q_from(s.at("lo"));
    r.sector.hi = q_from(s.at("hi"));
    r.sector.generation = s.at("generation").get<int>();
    r.theta = RationalAngle(q_from(j.at("theta")));
    r.theta_width = q_from(j.at("theta_width"));
    if (r.depth != r.plan.levels || static_cast<int>(r.bits.size()) != r.depth)
      throw FormatError("ray depth differs from its plan");
    if (r.bits != r.selection.bits_prefix(r.depth)) throw FormatError("address does not match the selection");
    const auto angle = ray_angle(r.bits, r.plan);
    if (!(address_to_sector(r.bits, r.plan).back() == r.sector) || !(angle.theta == r.theta) ||
        angle.width != r.theta_width)
      throw FormatError("sector or theta does not match the address");
    return r;
  });
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw Error("write to '" + tmp + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot rename into '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_plan(const std::string& path, const FunctionPlan& plan) { write_file_atomic(path, plan_to_json(plan)); }
FunctionPlan load_plan(const std::string& path) { return plan_from_json(read_file(path)); }
void save_ray(const std::string& path, const RayPlan& ray) { write_file_atomic(path, ray_to_json(ray)); }
RayPlan load_ray(const std::string& path) { return ray_from_json(read_file(path)); }

}  // namespace asymval
