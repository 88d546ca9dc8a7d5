#include "dualdefect/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dualdefect/certificate_io.hpp"
#include "dualdefect/config_io.hpp"
#include "dualdefect/corpus.hpp"
#include "dualdefect/errors.hpp"
#include "dualdefect/structure.hpp"
#include "dualdefect/tangency.hpp"

namespace dualdefect::cli {

namespace fs = std::filesystem;
using json_int::Json;

namespace {

struct Options {
  std::uint64_t seed = kDefaultSeed;
  long bound = kDefaultBound;
  unsigned trials = kDefaultTrials;
  std::string format = "json";
  bool exhaustive = false;
  std::size_t exhaustive_limit = kDefaultEnumerationLimit;
  std::string out;

  SamplingPolicy policy() const { return {seed, bound, trials}; }
  bool json() const { return format == "json"; }
};

// Load, deduplicate with a warning, and move to normalized coordinates.
PointConfig prepare(const fs::path& path, std::ostream& err, std::optional<long>* expected = nullptr) {
  LoadedConfig lc = load_config(path);
  if (lc.config.duplicates_removed())
    err << "warning: " << path.string() << ": removed " << lc.config.duplicates_removed() << " repeated point(s)\n";
  if (expected) *expected = lc.expected_delta;
  Normalization nz = normalize(lc.config);
  if (!(nz.config == lc.config))
    err << "warning: " << path.string() << ": points do not span Z^" << lc.config.dim()
        << " affinely; working in normalized coordinates of rank " << nz.config.dim() << '\n';
  nz.config.set_name(lc.config.name());
  return nz.config;
}

struct AnalysisRecord {
  std::string file;
  std::optional<StructureCertificate> cert;
  std::optional<long> expected;
  std::string error;
  int code = kExitOk;
};

AnalysisRecord analyze_file(const fs::path& path, const Options& opt, std::ostream& err) {
  AnalysisRecord rec;
  rec.file = path.filename().string();
  try {
    const PointConfig a = prepare(path, err, &rec.expected);
    StructureCertificate cert = structure_certificate(a, opt.policy());
    if (opt.exhaustive) {
      if (a.size() > opt.exhaustive_limit) {
        err << "warning: " << path.string() << ": exhaustive check skipped (" << a.size() << " points exceed limit "
            << opt.exhaustive_limit << ")\n";
      } else {
        for (auto& c : exhaustive_check(a, cert, opt.exhaustive_limit).checks) cert.checks.push_back(std::move(c));
      }
    }
    if (rec.expected) cert.checks.push_back({"expected_delta", *rec.expected == static_cast<long>(cert.delta)});
    rec.code = cert.all_checks_pass() ? kExitOk : kExitFailure;
    rec.cert = std::move(cert);
  } catch (const InputError& e) {
    rec.error = e.what();
    rec.code = kExitInputError;
  } catch (const DimensionError& e) {
    rec.error = e.what();
    rec.code = kExitInputError;
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.code = kExitFailure;
  }
  return rec;
}

void emit(const std::string& text, const Options& opt, std::ostream& out) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + opt.out);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_analyze(const std::string& file, const Options& opt, std::ostream& out, std::ostream& err) {
  AnalysisRecord rec = analyze_file(file, opt, err);
  if (!rec.cert) {
    err << "error: " << rec.error << '\n';
    return rec.code;
  }
  emit(opt.json() ? dump(certificate_to_json(*rec.cert)) : certificate_to_text(*rec.cert), opt, out);
  if (rec.code != kExitOk) err << "error: certificate checks failed\n";
  return rec.code;
}

int cmd_oracle(const std::string& file, const Options& opt, std::ostream& out, std::ostream& err) {
  const PointConfig a = prepare(file, err);
  const DefectResult d = defect_oracle(TangencyProblem::make(a, opt.policy()));
  emit(opt.json() ? dump(defect_to_json(d, a, opt.policy())) : defect_to_text(d, a, opt.policy()), opt, out);
  return kExitOk;
}

int cmd_verify(const std::string& file, const std::string& cert_file, const Options& opt, std::ostream& out,
               std::ostream& err) {
  const PointConfig a = prepare(file, err);
  std::ifstream f(cert_file, std::ios::binary);
  if (!f) throw InputError("cannot read " + cert_file);
  std::ostringstream buf;
  buf << f.rdbuf();
  const StructureCertificate cert = parse_certificate(buf.str());
  const VerificationReport rep = verify_certificate(a, cert, opt.exhaustive, opt.exhaustive_limit);
  emit(opt.json() ? dump(report_to_json(rep)) : report_to_text(rep), opt, out);
  return rep.ok() ? kExitOk : kExitFailure;
}

int cmd_gen(CorpusParams params, const std::string& kind, const std::string& base, const std::string& dir,
            const Options& opt, std::ostream& out) {
  if (kind == "random")
    params.kind = CorpusKind::Random;
  else if (kind == "cayley_join_type")
    params.kind = CorpusKind::CayleyJoinType;
  else if (kind == "unimodular_twist")
    params.kind = CorpusKind::UnimodularTwist;
  else
    throw InputError("unknown corpus kind \"" + kind + "\"");
  if (!base.empty()) params.base = load_config(base).config;
  params.seed = opt.seed;
  const auto corpus = generate_corpus(params);
  const fs::path target = dir.empty() ? fs::path(".") : fs::path(dir);
  std::error_code ec;
  fs::create_directories(target, ec);
  if (ec) throw InputError("cannot create " + target.string());
  for (const auto& g : corpus) {
    const fs::path p = target / (g.config.name() + ".json");
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InputError("cannot write " + p.string());
    f << config_to_json(g.config, g.expected_delta);
    out << p.string() << '\n';
  }
  return kExitOk;
}

int cmd_batch(const std::string& dir, const Options& opt, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".json" || ext == ".txt") files.push_back(entry.path());
  }
  if (ec) throw InputError("cannot list " + dir);
  std::sort(files.begin(), files.end());

  std::vector<AnalysisRecord> records(files.size());
  std::vector<std::string> warnings(files.size());
  const long count = static_cast<long>(files.size());
#ifdef DUALDEFECT_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long i = 0; i < count; ++i) {
    std::ostringstream w;
    records[i] = analyze_file(files[i], opt, w);
    warnings[i] = w.str();
  }

  int code = kExitOk;
  Json arr = Json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < records.size(); ++i) {
    err << warnings[i];
    const auto& rec = records[i];
    if (rec.code != kExitOk) code = kExitFailure;
    Json j;
    j["file"] = rec.file;
    j["ok"] = rec.code == kExitOk;
    text << rec.file << ": " << (rec.code == kExitOk ? "ok" : "FAIL");
    if (rec.cert) {
      j["delta"] = rec.cert->delta;
      j["r"] = rec.cert->r;
      j["c"] = rec.cert->c;
      j["oracle_delta"] = certificate_to_json(*rec.cert)["oracle_delta"];
      text << " delta=" << rec.cert->delta << " r=" << rec.cert->r << " c=" << rec.cert->c;
    }
    if (rec.expected) {
      j["expected_delta"] = *rec.expected;
      text << " expected=" << *rec.expected;
    }
    if (!rec.error.empty()) {
      j["error"] = rec.error;
      text << " error: " << rec.error;
    }
    text << '\n';
    arr.push_back(std::move(j));
  }
  emit(opt.json() ? dump(arr) : text.str(), opt, out);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual defects of toric varieties from lattice point configurations"};
  app.require_subcommand(1);
  Options opt;
  auto common = [&](CLI::App* sub, bool exhaustive) {
    sub->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
    sub->add_option("--bound", opt.bound, "Coefficient bound for sampling")->check(CLI::Range(1L, 1L << 40));
    sub->add_option("--trials", opt.trials, "Number of sampling trials")->check(CLI::Range(1u, 1000u));
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", opt.out, "Write the report to this file");
    if (exhaustive) {
      sub->add_flag("--exhaustive", opt.exhaustive, "Enumerate all simplex projections (small inputs)");
      sub->add_option("--exhaustive-limit", opt.exhaustive_limit, "Largest #A for exhaustive checks");
    }
  };

  std::string config, cert_file, dir, kind = "random", base;
  CorpusParams params;

  auto* analyze = app.add_subcommand("analyze", "Structure certificate for a configuration");
  analyze->add_option("config", config, "Configuration file (.json or text)")->required();
  common(analyze, true);

  auto* oracle = app.add_subcommand("oracle", "Dual defect by the Hessian corank oracle");
  oracle->add_option("config", config, "Configuration file")->required();
  common(oracle, false);

  auto* verify = app.add_subcommand("verify", "Check a certificate against a configuration");
  verify->add_option("config", config, "Configuration file")->required();
  verify->add_option("cert", cert_file, "Certificate JSON")->required();
  common(verify, true);

  auto* gen = app.add_subcommand("gen", "Generate a test corpus");
  gen->add_option("--kind", kind, "random | cayley_join_type | unimodular_twist")
      ->check(CLI::IsMember({"random", "cayley_join_type", "unimodular_twist"}));
  gen->add_option("--count", params.count, "Number of configurations");
  gen->add_option("--dim", params.dim, "Ambient rank (random)");
  gen->add_option("--points", params.points, "Number of points (random)");
  gen->add_option("--range", params.range, "Coordinate range");
  gen->add_option("--r", params.r, "Simplex dimension (cayley_join_type)");
  gen->add_option("--max-fiber-dim", params.max_fiber_dim, "Largest factor dimension (cayley_join_type)");
  gen->add_option("--base", base, "Configuration to twist (unimodular_twist)");
  gen->add_option("--seed", opt.seed, "Random seed");
  gen->add_option("--out", dir, "Output directory");

  auto* batch = app.add_subcommand("batch", "Analyze every .json/.txt file in a directory");
  batch->add_option("dir", dir, "Directory")->required();
  common(batch, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*analyze) return cmd_analyze(config, opt, out, err);
    if (*oracle) return cmd_oracle(config, opt, out, err);
    if (*verify) return cmd_verify(config, cert_file, opt, out, err);
    if (*gen) return cmd_gen(params, kind, base, dir, opt, out);
    if (*batch) return cmd_batch(dir, opt, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitInputError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace dualdefect::cli
