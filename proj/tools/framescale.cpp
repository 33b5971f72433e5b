// framescale: scalability, scaling and dual-frame analysis of finite frames.
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "framescale/duals.hpp"
#include "framescale/error.hpp"
#include "framescale/frame_document.hpp"
#include "framescale/generate.hpp"
#include "framescale/report.hpp"
#include "framescale/scalability.hpp"
#include "framescale/split_scaling.hpp"

namespace fs = std::filesystem;
using namespace framescale;
using nlohmann::ordered_json;

namespace {

enum Exit : int { kOk = 0, kNotScalable = 1, kInputError = 2, kNumericError = 3 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NumericFailure:
    case ErrorKind::IterationLimit:
      return kNumericError;
    default:
      return kInputError;
  }
}

struct Outcome {
  int code = kOk;
  std::string out;
  std::string err;
};

// Runs `body`, converting library errors into an exit code and message.
template <class F>
Outcome guarded(const std::string& label, F&& body) {
  Outcome o;
  try {
    body(o);
  } catch (const Error& e) {
    o.code = exit_code_for(e.kind());
    o.err = fmt::format("framescale: {}: {}\n", label, e.what());
  } catch (const std::exception& e) {
    o.code = kNumericError;
    o.err = fmt::format("framescale: {}: {}\n", label, e.what());
  }
  return o;
}

std::string joined(std::span<const double> v, int digits) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ' ';
    s += format_number(v[k], digits);
  }
  return s;
}

ordered_json tol_json(const Tolerances& t) {
  return {{"rank", t.rank}, {"tight", t.tight}, {"strict", t.strict}};
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string path;
  std::string batch;
  bool no_scalability = false;
  bool no_split = false;
  bool no_dual = false;
};

Outcome analyze_file(const fs::path& path, const ReportOptions& opt, bool json) {
  return guarded(path.string(), [&](Outcome& o) {
    const ordered_json report = analysis_report(read_frame_document(path), opt);
    o.out = json ? dump_json(report) : render_text(report);
  });
}

int run_analyze(const AnalyzeArgs& a, ReportOptions opt, bool json) {
  opt.scalability = !a.no_scalability;
  opt.split = !a.no_split;
  opt.dual = !a.no_dual;

  if (a.batch.empty()) {
    if (a.path.empty()) {
      std::cerr << "framescale: analyze needs a path or --batch DIR\n";
      return kInputError;
    }
    const Outcome o = analyze_file(a.path, opt, json);
    std::cout << o.out;
    std::cerr << o.err;
    return o.code;
  }

  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(a.batch, ec)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  if (ec) {
    std::cerr << fmt::format("framescale: cannot read directory {}: {}\n", a.batch, ec.message());
    return kInputError;
  }
  std::sort(files.begin(), files.end());

  std::vector<std::future<Outcome>> jobs;
  for (const auto& f : files) jobs.push_back(std::async(std::launch::async, analyze_file, f, opt, json));

  int code = kOk;
  ordered_json all = ordered_json::array();
  for (std::size_t k = 0; k < files.size(); ++k) {
    Outcome o = jobs[k].get();
    code = std::max(code, o.code);
    std::cerr << o.err;
    if (json) {
      ordered_json item;
      item["file"] = files[k].filename().string();
      if (o.code == kOk) {
        item["report"] = ordered_json::parse(o.out);
      } else {
        item["error"] = o.err;
      }
      all.push_back(item);
    } else {
      std::cout << fmt::format("== {}\n", files[k].filename().string()) << o.out;
    }
  }
  if (json) std::cout << dump_json(all);
  return code;
}

// --- scale -----------------------------------------------------------------

struct ScaleArgs {
  std::string path;
  std::string method = "auto";
  bool strict = false;
};

int run_scale(const ScaleArgs& a, const Tolerances& tol, bool json) {
  int result = kOk;
  Outcome o = guarded(a.path, [&](Outcome& out) {
    const FrameDocument doc = read_frame_document(a.path);
    const Frame f = to_frame(doc);
    if (f.dimension() < 2) throw Error(ErrorKind::DimensionTooSmall, "scaling needs n >= 2");

    ScalingResult r;
    std::optional<std::size_t> corank;
    std::optional<double> pencil_t;
    if (a.method == "auto" || a.method == "lp") {
      r = decide_scalable(f, a.strict, tol);
    } else if (quick_sign_reject(f, tol).row) {
      // A sign-definite diagram row rules the frame out before any rank hypothesis matters.
      r = decide_scalable(f, a.strict, tol);
    } else if (a.method == "cofactor") {
      CofactorScaling cs = cofactor_scaling(f, tol);
      corank = cs.report.corank;
      r = std::move(cs.result);
    } else if (a.method == "codim2") {
      Codim2Scaling cs = codim2_scaling(f, tol);
      corank = 2;
      pencil_t = cs.t;
      r = std::move(cs.result);
    } else {
      r = intersection_scalability(f, tol);
    }

    ordered_json j;
    j["tool"] = "framescale";
    j["version"] = std::string(kToolVersion);
    j["name"] = doc.name;
    j["requested_method"] = a.method;
    j["strict"] = a.strict;
    j["tolerances"] = tol_json(tol);
    j["verdict"] = std::string(to_string(r.verdict));
    j["method"] = std::string(to_string(r.method));
    if (corank) j["corank"] = *corank;
    if (pencil_t) j["t"] = *pencil_t;

    std::string text = fmt::format("verdict  {} (method {})\n", to_string(r.verdict), to_string(r.method));
    if (r.scalable()) {
      const Vector a_parseval = parseval_scalars(f, *r.weights_c, tol.tight);
      const Tightness t = is_tight(scaled_synthesis(f, a_parseval), tol.tight);
      if (!t.parseval(10 * tol.tight)) throw Error(ErrorKind::NumericFailure, "scaled frame failed the Parseval check");
      j["weights_c"] = *r.weights_c;
      j["scalars_a"] = a_parseval;
      j["tight_bound"] = *t.bound;
      text += fmt::format("a        {}\n", joined(a_parseval, 12));
      text += fmt::format("check    scaled frame is Parseval (tight bound {})\n", format_number(*t.bound, 12));
      if (a.strict && r.verdict != Verdict::StrictlyScalable) {
        text += "note     no strictly positive scaling exists\n";
        result = kNotScalable;
      }
    } else {
      if (!hull_certificate_check(f, *r.certificate_y)) {
        throw Error(ErrorKind::NumericFailure, "certificate failed re-verification");
      }
      j["certificate_y"] = *r.certificate_y;
      if (r.sign_row) j["sign_row"] = *r.sign_row;
      text += fmt::format("y        {}\n", joined(*r.certificate_y, 12));
      text += "check    every reduced diagram vector has a positive inner product with y\n";
      result = kNotScalable;
    }
    out.out = json ? dump_json(j) : text;
  });
  std::cout << o.out;
  std::cerr << o.err;
  return o.code != kOk ? o.code : result;
}

// --- dual ------------------------------------------------------------------

struct DualArgs {
  std::string path;
  bool check_scalable = false;
  bool strict = false;
};

int run_dual(const DualArgs& a, const Tolerances& tol, bool json) {
  const Outcome o = guarded(a.path, [&](Outcome& out) {
    const FrameDocument doc = read_frame_document(a.path);
    const Frame f = to_frame(doc);
    const DualPair pair = canonical_dual(f);
    if (!is_dual(pair.primal, pair.dual, tol.tight)) throw Error(ErrorKind::NumericFailure, "dual reconstruction check failed");
    const FrameDocument dual_doc = to_document(pair.dual, doc.name.empty() ? "" : doc.name + "-dual");

    std::optional<DualScalingReport> rep;
    if (a.check_scalable) {
      if (f.dimension() < 2) throw Error(ErrorKind::DimensionTooSmall, "scalability needs n >= 2");
      rep = canonical_dual_scalable(f, a.strict);
    }

    if (json) {
      ordered_json j;
      j["tool"] = "framescale";
      j["version"] = std::string(kToolVersion);
      j["name"] = dual_doc.name;
      j["n"] = dual_doc.n;
      j["m"] = dual_doc.m;
      j["tolerances"] = tol_json(tol);
      j["vectors"] = dual_doc.vectors;
      if (rep) {
        ordered_json s;
        s["scalable"] = rep->feasible;
        if (rep->feasible) {
          s["weights_c"] = *rep->weights_c;
          s["scalars_a"] = *rep->scalars_a;
          s["residual"] = rep->residual;
        }
        j["dual_scalability"] = s;
      }
      out.out = dump_json(j);
      return;
    }
    out.out = serialize_frame_document(dual_doc);
    if (rep) {
      out.out += fmt::format("# dual scalable: {}\n", rep->feasible ? "yes" : "no");
      if (rep->feasible) {
        out.out += fmt::format("# c: {}\n", joined(*rep->weights_c, 12));
        out.out += fmt::format("# a: {}\n", joined(*rep->scalars_a, 12));
        out.out += fmt::format("# residual: {}\n", format_number(rep->residual, 6));
      }
    }
  });
  std::cout << o.out;
  std::cerr << o.err;
  return o.code;
}

// --- generate --------------------------------------------------------------

struct GenerateArgs {
  std::string kind;
  std::size_t n = 2;
  std::size_t m = 3;
  std::uint64_t seed = 1;
  std::vector<double> degrees;
  std::string output;
};

int run_generate(const GenerateArgs& a) {
  const Outcome o = guarded("generate", [&](Outcome& out) {
    std::optional<Frame> f;
    std::string name;
    if (a.kind == "mb") {
      f = harmonic_frame(3);
      name = "mercedes-benz";
    } else if (a.kind == "harmonic") {
      f = harmonic_frame(a.m);
      name = fmt::format("harmonic-{}", a.m);
    } else if (a.kind == "hadamard-doubled") {
      f = hadamard_doubled(a.n);
      name = fmt::format("hadamard-doubled-{}", a.n);
    } else if (a.kind == "p1") {
      f = p1_counterexample(a.n);
      name = fmt::format("p1-{}", a.n);
    } else if (a.kind == "random-unit") {
      f = random_unit_frame(a.n, a.m, a.seed);
      name = fmt::format("random-unit-{}x{}-seed{}", a.n, a.m, a.seed);
    } else {
      if (a.degrees.empty()) throw Error(ErrorKind::BadParams, "angles needs --deg");
      Vector rad;
      for (double d : a.degrees) rad.push_back(d * std::numbers::pi / 180.0);
      f = angle_frame(rad);
      name = "angles";
    }
    out.out = serialize_frame_document(to_document(*f, name));
  });
  std::cerr << o.err;
  if (o.code != kOk) return o.code;
  if (a.output.empty()) {
    std::cout << o.out;
    return kOk;
  }
  std::ofstream file(a.output, std::ios::binary);
  file << o.out;
  if (!file) {
    std::cerr << fmt::format("framescale: cannot write {}\n", a.output);
    return kInputError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scalability, scaling and dual-frame analysis of finite frames"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));

  bool json = false;
  std::string tol_spec;
  app.add_flag("--json", json, "Machine-readable JSON output");
  app.add_option("--tol", tol_spec, "Tolerance: VALUE (tightness) or rank=..,tight=..,strict=..")
      ->envname("FRAMESCALE_TOL");

  AnalyzeArgs analyze_args;
  bool analyze_strict = false;
  auto* analyze = app.add_subcommand("analyze", "Full report for a frame file");
  analyze->add_option("path", analyze_args.path, "Frame document");
  analyze->add_option("--batch", analyze_args.batch, "Analyze every file in a directory");
  analyze->add_flag("--strict", analyze_strict, "Look for strictly positive scalings");
  analyze->add_flag("--no-scalability", analyze_args.no_scalability);
  analyze->add_flag("--no-split", analyze_args.no_split);
  analyze->add_flag("--no-dual", analyze_args.no_dual);

  ScaleArgs scale_args;
  auto* scale = app.add_subcommand("scale", "Scaling coefficients or a non-scalability certificate");
  scale->add_option("path", scale_args.path, "Frame document")->required();
  scale->add_flag("--strict", scale_args.strict, "Require all coefficients positive");
  scale->add_option("--method", scale_args.method)
      ->check(CLI::IsMember({"auto", "lp", "cofactor", "codim2", "split"}));

  DualArgs dual_args;
  auto* dual = app.add_subcommand("dual", "Canonical dual frame");
  dual->add_option("path", dual_args.path, "Frame document")->required();
  dual->add_flag("--check-scalable", dual_args.check_scalable, "Also decide whether the dual is scalable");
  dual->add_flag("--strict", dual_args.strict, "Prefer strictly positive dual weights");

  GenerateArgs gen_args;
  auto* generate = app.add_subcommand("generate", "Emit a named frame construction");
  generate->add_option("kind", gen_args.kind)
      ->required()
      ->check(CLI::IsMember({"mb", "harmonic", "hadamard-doubled", "p1", "random-unit", "angles"}));
  generate->add_option("--n", gen_args.n, "Dimension");
  generate->add_option("--m", gen_args.m, "Number of vectors");
  generate->add_option("--seed", gen_args.seed, "Seed for random-unit");
  generate->add_option("--deg", gen_args.degrees, "Angles in degrees for the angles kind")->delimiter(',');
  generate->add_option("-o,--output", gen_args.output, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  ReportOptions opt;
  try {
    apply_tolerance_spec(tol_spec, opt.tol);
  } catch (const Error& e) {
    std::cerr << "framescale: " << e.what() << '\n';
    return kInputError;
  }

  if (*analyze) {
    opt.strict = analyze_strict;
    return run_analyze(analyze_args, opt, json);
  }
  if (*scale) return run_scale(scale_args, opt.tol, json);
  if (*dual) return run_dual(dual_args, opt.tol, json);
  return run_generate(gen_args);
}
