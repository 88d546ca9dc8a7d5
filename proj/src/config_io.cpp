#include "dualdefect/config_io.hpp"

#include <fstream>
#include <sstream>

#include "dualdefect/errors.hpp"
#include "dualdefect/json_int.hpp"

namespace dualdefect {

namespace json_int {

namespace {
const Int kMaxExact = Int(1) << 53;
}

Json encode(const Int& v) {
  if (abs(v) < kMaxExact) return Json(v.get_si());
  return Json(v.get_str());
}

Int decode(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<unsigned long long>()));
    return Int(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Int v;
    if (s.empty() || v.set_str(s, 10) != 0) throw InputError("not a decimal integer: \"" + s + "\"");
    return v;
  }
  throw InputError("expected an integer, got " + j.dump());
}

Json encode(const IntVector& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(encode(x));
  return a;
}

IntVector decode_vector(const Json& j) {
  if (!j.is_array()) throw InputError("expected an integer array, got " + j.dump());
  IntVector v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(decode(x));
  return v;
}

Json encode(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(encode(m.row_vector(i)));
  return a;
}

IntMatrix decode_matrix(const Json& j, std::size_t cols) {
  if (!j.is_array()) throw InputError("expected a matrix (array of rows), got " + j.dump());
  IntMatrix m(0, cols);
  for (const auto& r : j) {
    IntVector row = decode_vector(r);
    if (row.size() != cols) throw InputError("matrix row has " + std::to_string(row.size()) + " entries, expected " +
                                             std::to_string(cols));
    m.append_row(row);
  }
  return m;
}

}  // namespace json_int

LoadedConfig parse_config_json(std::string_view text, std::string fallback_name) {
  json_int::Json j;
  try {
    j = json_int::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("points")) throw InputError("configuration JSON needs a \"points\" array");
  const auto& pts = j["points"];
  if (!pts.is_array() || pts.empty()) throw InputError("\"points\" must be a nonempty array");
  std::vector<IntVector> points;
  for (const auto& p : pts) points.push_back(json_int::decode_vector(p));
  const std::size_t dim = points.front().size();
  for (const auto& p : points)
    if (p.size() != dim) throw InputError("points have inconsistent dimensions");
  std::string name = fallback_name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InputError("\"name\" must be a string");
    name = j["name"].get<std::string>();
  }
  LoadedConfig out{PointConfig(dim, std::move(points), std::move(name)), std::nullopt};
  if (j.contains("expected_delta") && !j["expected_delta"].is_null())
    out.expected_delta = json_int::decode(j["expected_delta"]).get_si();
  return out;
}

PointConfig parse_config_text(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<IntVector> points;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    IntVector p;
    while (ls >> tok) {
      Int v;
      if (v.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0)
        throw InputError("line " + std::to_string(lineno) + ": not an integer: \"" + tok + "\"");
      p.push_back(std::move(v));
    }
    if (p.empty()) continue;
    if (!points.empty() && p.size() != points.front().size())
      throw InputError("line " + std::to_string(lineno) + ": point has " + std::to_string(p.size()) +
                       " coordinates, expected " + std::to_string(points.front().size()));
    points.push_back(std::move(p));
  }
  if (points.empty()) throw InputError("no points found");
  const std::size_t dim = points.front().size();
  return PointConfig(dim, std::move(points), std::move(name));
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  const std::string stem = path.stem().string();
  if (path.extension() == ".json") return parse_config_json(buf.str(), stem);
  return {parse_config_text(buf.str(), stem), std::nullopt};
}

std::string config_to_json(const PointConfig& a, std::optional<long> expected_delta) {
  json_int::Json j;
  j["name"] = a.name();
  j["points"] = json_int::Json::array();
  for (const auto& p : a.points()) j["points"].push_back(json_int::encode(p));
  if (expected_delta) j["expected_delta"] = *expected_delta;
  return j.dump() + "\n";
}

std::string config_to_text(const PointConfig& a) {
  std::ostringstream os;
  if (!a.name().empty()) os << "# " << a.name() << '\n';
  for (const auto& p : a.points()) {
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace dualdefect
