#include "dualdefect/certificate_io.hpp"

#include <sstream>

#include "dualdefect/errors.hpp"

namespace dualdefect {

using json_int::Json;

namespace {

constexpr const char* kEmptyDual = "EmptyDual";

Json encode_u64(std::uint64_t v) {
  if (v < (std::uint64_t{1} << 53)) return Json(v);
  return Json(std::to_string(v));
}

std::uint64_t decode_u64(const Json& j, const char* field) {
  const Int v = json_int::decode(j);
  if (v < 0 || v > Int("18446744073709551615")) throw InputError(std::string("\"") + field + "\" out of range");
  return std::stoull(v.get_str());
}

std::size_t decode_count(const Json& j, const char* field) {
  const Int v = json_int::decode(j);
  if (v < 0 || !v.fits_slong_p()) throw InputError(std::string("\"") + field + "\" must be a small nonnegative integer");
  return v.get_ui();
}

const Json& field(const Json& j, const char* name) {
  if (!j.contains(name)) throw InputError(std::string("certificate is missing \"") + name + "\"");
  return j.at(name);
}

void write_matrix(std::ostream& os, const char* name, const IntMatrix& m) {
  os << name << ": " << m.rows() << "x" << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) os << "  " << to_string(m.row_vector(i)) << '\n';
}

void write_grouping(std::ostream& os, const Partition& g) {
  os << "grouping:";
  for (const auto& part : g) {
    os << " {";
    for (std::size_t i = 0; i < part.size(); ++i) os << (i ? "," : "") << part[i];
    os << '}';
  }
  os << '\n';
}

}  // namespace

Json certificate_to_json(const StructureCertificate& cert) {
  Json j;
  j["n"] = cert.n;
  j["r"] = cert.r;
  j["c"] = cert.c;
  j["delta"] = cert.delta;
  j["grouping"] = cert.grouping;
  j["pi1"] = json_int::encode(cert.pi1.matrix);
  j["pi2"] = json_int::encode(cert.pi2.matrix);
  j["p"] = json_int::encode(cert.p.matrix);
  j["seed"] = encode_u64(cert.policy.seed);
  j["bound"] = cert.policy.bound;
  j["trials"] = cert.policy.trials;
  if (cert.oracle.empty_dual())
    j["oracle_delta"] = kEmptyDual;
  else
    j["oracle_delta"] = cert.oracle.delta;
  j["checks"] = Json::object();
  for (const auto& c : cert.checks) j["checks"][c.name] = c.passed;
  return j;
}

StructureCertificate certificate_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("certificate must be a JSON object");
  StructureCertificate cert;
  cert.n = decode_count(field(j, "n"), "n");
  cert.r = decode_count(field(j, "r"), "r");
  cert.c = decode_count(field(j, "c"), "c");
  cert.delta = decode_count(field(j, "delta"), "delta");
  if (cert.c > cert.n || cert.r > cert.n) throw InputError("certificate ranks exceed n");
  const Json& g = field(j, "grouping");
  if (!g.is_array()) throw InputError("\"grouping\" must be an array of index arrays");
  for (const auto& part : g) {
    if (!part.is_array()) throw InputError("\"grouping\" must be an array of index arrays");
    std::vector<std::size_t> idx;
    for (const auto& i : part) idx.push_back(decode_count(i, "grouping"));
    cert.grouping.push_back(std::move(idx));
  }
  cert.pi1 = GroupHom(json_int::decode_matrix(field(j, "pi1"), cert.n));
  cert.pi2 = GroupHom(json_int::decode_matrix(field(j, "pi2"), cert.n - cert.c));
  cert.p = GroupHom(json_int::decode_matrix(field(j, "p"), cert.n - cert.r));
  cert.policy.seed = decode_u64(field(j, "seed"), "seed");
  cert.policy.bound = static_cast<long>(decode_count(field(j, "bound"), "bound"));
  cert.policy.trials = static_cast<unsigned>(decode_count(field(j, "trials"), "trials"));
  const Json& od = field(j, "oracle_delta");
  if (od.is_string() && od.get<std::string>() == kEmptyDual) {
    cert.oracle.status = DefectStatus::EmptyDual;
  } else {
    cert.oracle.status = DefectStatus::Computed;
    cert.oracle.delta = decode_count(od, "oracle_delta");
  }
  if (j.contains("checks")) {
    const Json& ch = j.at("checks");
    if (!ch.is_object()) throw InputError("\"checks\" must be an object");
    for (const auto& [name, val] : ch.items()) {
      if (!val.is_boolean()) throw InputError("check \"" + name + "\" must be a boolean");
      cert.checks.push_back({name, val.get<bool>()});
    }
  }
  return cert;
}

StructureCertificate parse_certificate(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed certificate JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

std::string certificate_to_text(const StructureCertificate& cert) {
  std::ostringstream os;
  os << "n: " << cert.n << "\nr: " << cert.r << "\nc: " << cert.c << "\ndelta: " << cert.delta << '\n';
  write_grouping(os, cert.grouping);
  write_matrix(os, "pi1", cert.pi1.matrix);
  write_matrix(os, "pi2", cert.pi2.matrix);
  write_matrix(os, "p", cert.p.matrix);
  os << "seed: " << cert.policy.seed << "\nbound: " << cert.policy.bound << "\ntrials: " << cert.policy.trials << '\n';
  os << "oracle_delta: ";
  if (cert.oracle.empty_dual())
    os << kEmptyDual;
  else
    os << cert.oracle.delta;
  os << '\n';
  for (const auto& c : cert.checks) os << "check " << c.name << ": " << (c.passed ? "pass" : "FAIL") << '\n';
  return os.str();
}

Json defect_to_json(const DefectResult& d, const PointConfig& a, const SamplingPolicy& policy) {
  Json j;
  j["n"] = a.dim();
  j["points"] = a.size();
  j["status"] = d.empty_dual() ? kEmptyDual : "Computed";
  if (d.empty_dual())
    j["delta"] = nullptr;
  else
    j["delta"] = d.delta;
  j["rank_witness"] = json_int::encode(d.rank_witness);
  j["samples_used"] = d.samples_used;
  j["seed"] = encode_u64(policy.seed);
  j["bound"] = policy.bound;
  j["trials"] = policy.trials;
  return j;
}

std::string defect_to_text(const DefectResult& d, const PointConfig& a, const SamplingPolicy& policy) {
  std::ostringstream os;
  os << "n: " << a.dim() << "\npoints: " << a.size() << "\nstatus: " << (d.empty_dual() ? kEmptyDual : "Computed")
     << "\ndelta: ";
  if (d.empty_dual())
    os << "null";
  else
    os << d.delta;
  os << "\nrank_witness: " << to_string(d.rank_witness) << "\nsamples_used: " << d.samples_used
     << "\nseed: " << policy.seed << "\nbound: " << policy.bound << "\ntrials: " << policy.trials << '\n';
  return os.str();
}

Json report_to_json(const VerificationReport& rep) {
  Json j;
  j["ok"] = rep.ok();
  j["checks"] = Json::object();
  for (const auto& c : rep.checks) j["checks"][c.name] = c.passed;
  j["structures_examined"] = rep.structures_examined;
  j["notes"] = rep.notes;
  return j;
}

std::string report_to_text(const VerificationReport& rep) {
  std::ostringstream os;
  os << "ok: " << (rep.ok() ? "true" : "false") << '\n';
  for (const auto& c : rep.checks) os << "check " << c.name << ": " << (c.passed ? "pass" : "FAIL") << '\n';
  os << "structures_examined: " << rep.structures_examined << '\n';
  for (const auto& n : rep.notes) os << "note: " << n << '\n';
  return os.str();
}

}  // namespace dualdefect
