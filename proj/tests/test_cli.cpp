#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dualdefect/certificate_io.hpp"
#include "dualdefect/cli.hpp"
#include "dualdefect/structure.hpp"
#include "support.hpp"

using namespace dualdefect;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dualdefect_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

// Reads "key: value" lines from text output.
std::map<std::string, std::string> text_fields(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(": ");
    if (colon != std::string::npos) out[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return out;
}

}  // namespace

TEST_CASE("analyze on fixtures") {
  for (const char* name : {"segre.json", "ex5_7.json", "ex5_8.json", "p1xp2.json", "simplex2.txt", "simplex3.txt"}) {
    CAPTURE(name);
    const Run r = run({"analyze", fixture(name).string()});
    CHECK(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    for (auto& [check, passed] : j["checks"].items()) {
      CAPTURE(check);
      CHECK(passed.get<bool>());
    }
  }
  const Run r8 = run({"analyze", fixture("ex5_8.json").string()});
  CHECK(r8.err.find("repeated point") != std::string::npos);
  const auto j8 = nlohmann::json::parse(r8.out);
  CHECK(j8["delta"] == 1);
  CHECK(j8["r"] == 2);
  CHECK(j8["c"] == 1);
}

TEST_CASE("output is deterministic and formats agree") {
  const std::string f = fixture("ex5_7.json").string();
  const Run a = run({"analyze", f}), b = run({"analyze", f});
  CHECK(a.out == b.out);
  const Run t = run({"analyze", f, "--format", "text"});
  REQUIRE(t.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(a.out);
  const auto fields = text_fields(t.out);
  for (const char* key : {"n", "r", "c", "delta", "seed", "bound", "trials"}) {
    CAPTURE(key);
    CHECK(fields.at(key) == j[key].dump());
  }

  const Run o1 = run({"oracle", f, "--seed", "9"}), o2 = run({"oracle", f, "--seed", "9"});
  CHECK(o1.out == o2.out);
  const auto oj = nlohmann::json::parse(o1.out);
  CHECK(oj["delta"] == 1);
  CHECK(oj["seed"] == 9);
  const auto ot = text_fields(run({"oracle", f, "--seed", "9", "--format", "text"}).out);
  CHECK(ot.at("delta") == "1");

  const Run simplex = run({"oracle", fixture("simplex3.txt").string()});
  CHECK(nlohmann::json::parse(simplex.out)["status"] == "EmptyDual");
}

TEST_CASE("certificate round trip and verify") {
  const fs::path dir = scratch("verify");
  const std::string f = fixture("ex5_8.json").string();
  const fs::path cert = dir / "cert.json";
  REQUIRE(run({"analyze", f, "--out", cert.string()}).code == cli::kExitOk);

  std::ifstream in(cert);
  std::stringstream buf;
  buf << in.rdbuf();
  const StructureCertificate c = parse_certificate(buf.str());
  CHECK(certificate_to_json(c).dump(2) + "\n" == buf.str());

  const Run v = run({"verify", f, cert.string(), "--exhaustive"});
  CHECK(v.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(v.out)["ok"] == true);

  auto j = nlohmann::json::parse(buf.str());
  j["delta"] = 2;
  const fs::path bad = dir / "bad.json";
  write_file(bad, j.dump());
  CHECK(run({"verify", f, bad.string()}).code == cli::kExitFailure);

  write_file(bad, "{\"n\": 6}");
  CHECK(run({"verify", f, bad.string()}).code == cli::kExitInputError);
}

TEST_CASE("input errors exit with 2") {
  const fs::path dir = scratch("errors");
  CHECK(run({"analyze", (dir / "missing.json").string()}).code == cli::kExitInputError);
  write_file(dir / "ragged.txt", "0 0\n1\n");
  CHECK(run({"analyze", (dir / "ragged.txt").string()}).code == cli::kExitInputError);
  write_file(dir / "broken.json", "{\"points\": [");
  CHECK(run({"oracle", (dir / "broken.json").string()}).code == cli::kExitInputError);
  CHECK(run({"analyze"}).code == cli::kExitInputError);
  CHECK(run({"frobnicate"}).code == cli::kExitInputError);
  CHECK(run({"analyze", fixture("segre.json").string(), "--format", "xml"}).code == cli::kExitInputError);
  CHECK(run({"gen", "--kind", "nonsense", "--out", dir.string()}).code == cli::kExitInputError);
}

TEST_CASE("non-spanning input is normalized with a warning") {
  const fs::path dir = scratch("normalize");
  write_file(dir / "even.txt", "0 0\n2 0\n0 2\n2 2\n");
  const Run r = run({"analyze", (dir / "even.txt").string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.err.find("normalized") != std::string::npos);
  CHECK(nlohmann::json::parse(r.out)["delta"] == 0);
}

TEST_CASE("gen and batch") {
  const fs::path dir = scratch("corpus");
  const Run g = run({"gen", "--kind", "cayley_join_type", "--count", "4", "--r", "1", "--seed", "3", "--out",
                     dir.string()});
  REQUIRE(g.code == cli::kExitOk);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".json";
  CHECK(files == 4);

  const Run b1 = run({"batch", dir.string()}), b2 = run({"batch", dir.string()});
  CHECK(b1.code == cli::kExitOk);
  CHECK(b1.out == b2.out);
  const auto arr = nlohmann::json::parse(b1.out);
  REQUIRE(arr.size() == 4);
  for (const auto& rec : arr) {
    CHECK(rec["ok"] == true);
    CHECK(rec["delta"] == rec["expected_delta"]);
  }
  const Run bt = run({"batch", dir.string(), "--format", "text"});
  CHECK(std::count(bt.out.begin(), bt.out.end(), '\n') == 4);

  const fs::path twist = scratch("twist");
  REQUIRE(run({"gen", "--kind", "unimodular_twist", "--base", fixture("p1xp2.json").string(), "--count", "3",
               "--out", twist.string()})
              .code == cli::kExitOk);
  const auto tw = nlohmann::json::parse(run({"batch", twist.string()}).out);
  REQUIRE(tw.size() == 3);
  for (const auto& rec : tw) CHECK(rec["delta"] == 1);

  write_file(dir / "zz_bad.txt", "0 0\n1\n");
  CHECK(run({"batch", dir.string()}).code == cli::kExitFailure);
}
