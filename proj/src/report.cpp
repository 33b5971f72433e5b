#include "framescale/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "framescale/diagram.hpp"
#include "framescale/duals.hpp"
#include "framescale/error.hpp"
#include "framescale/linalg.hpp"
#include "framescale/split_scaling.hpp"

namespace framescale {

using nlohmann::ordered_json;

namespace {

ordered_json vec_json(std::span<const double> v) {
  ordered_json arr = ordered_json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

ordered_json columns_json(const Matrix& m) {
  ordered_json arr = ordered_json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) arr.push_back(vec_json(m.column(c)));
  return arr;
}

void verify(bool ok, std::string_view what) {
  if (!ok) throw Error(ErrorKind::NumericFailure, fmt::format("report self-check failed: {}", what));
}

ordered_json scalability_block(const Frame& f, const ReportOptions& opt) {
  const Matrix theta = reduced_diagram_matrix(f).data;
  const std::size_t corank = f.size() - rank(theta, opt.tol.rank);
  const ScalingResult r = decide_scalable(f, opt.strict, opt.tol);

  ordered_json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["method"] = std::string(to_string(r.method));
  j["corank"] = corank;
  if (r.sign_row) j["sign_row"] = *r.sign_row;
  if (r.scalable()) {
    const Vector& c = *r.weights_c;
    verify(max_abs(theta * c) <= 1e-8 * std::max(1.0, theta.max_abs()), "scaling weights outside the kernel");
    verify(is_tight(scaled_synthesis(f, *r.scalars_a), opt.tol.tight).tight(), "scaled frame not tight");
    j["weights_c"] = vec_json(c);
    j["scalars_a"] = vec_json(*r.scalars_a);
    j["parseval_scalars"] = vec_json(parseval_scalars(f, c, opt.tol.tight));
    j["near_zero"] = r.near_zero;
  } else {
    verify(hull_certificate_check(f, *r.certificate_y), "separating certificate");
    j["certificate_y"] = vec_json(*r.certificate_y);
  }
  return j;
}

ordered_json membership_json(const ConeMembership& c) {
  ordered_json j;
  j["status"] = c.member() ? "Member" : "NotMember";
  if (c.member()) j["a"] = vec_json(c.a);
  return j;
}

ordered_json split_block(const Frame& f, const ReportOptions& opt) {
  const ConeMembership w = find_W_element(f);
  const ConeMembership v = find_V_element(f);
  const ScalingResult both = intersection_scalability(f, opt.tol);
  if (w.member()) verify(is_in_W(f, w.a).member(), "W element");
  if (v.member()) verify(is_in_V(f, v.a).member(), "V element");

  ordered_json j;
  j["W"] = membership_json(w);
  j["V"] = membership_json(v);
  ordered_json inter;
  inter["verdict"] = std::string(to_string(both.verdict));
  if (both.scalable()) {
    verify(is_in_W(f, *both.weights_c).member() && is_in_V(f, *both.weights_c).member(), "W and V element");
    verify(is_tight(scaled_synthesis(f, *both.scalars_a), opt.tol.tight).parseval(10 * opt.tol.tight),
           "intersection scaling not Parseval");
    inter["a"] = vec_json(*both.weights_c);
  }
  j["intersection"] = inter;
  return j;
}

ordered_json dual_block(const Frame& f, const ReportOptions& opt) {
  const DualPair pair = canonical_dual(f);
  verify(is_dual(pair.primal, pair.dual), "canonical dual reconstruction");
  const DualScalingReport rep = canonical_dual_scalable(f, opt.strict);

  ordered_json j;
  j["canonical"] = columns_json(pair.dual.synthesis());
  j["scalable"] = rep.feasible;
  if (rep.feasible) {
    verify(rep.residual <= 1e-7 * std::max(1.0, std::pow(frame_operator(f).upper_bound, 2)), "S^2 system residual");
    j["weights_c"] = vec_json(*rep.weights_c);
    j["scalars_a"] = vec_json(*rep.scalars_a);
    j["residual"] = rep.residual;
  }
  return j;
}

void dump_value(const ordered_json& j, int indent, int depth, std::string& out) {
  const auto pad = [&](int d) { out.append(static_cast<std::size_t>(indent * d), ' '); };
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        pad(depth + 1);
        out += ordered_json(it.key()).dump();
        out += ": ";
        dump_value(it.value(), indent, depth + 1, out);
        if (k + 1 < j.size()) out += ',';
        out += '\n';
      }
      pad(depth);
      out += '}';
      return;
    }
    case ordered_json::value_t::array: {
      const bool flat = std::all_of(j.begin(), j.end(), [](const ordered_json& e) { return e.is_primitive(); });
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (flat) {
        out += '[';
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          dump_value(j[k], indent, depth, out);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        pad(depth + 1);
        dump_value(j[k], indent, depth + 1, out);
        if (k + 1 < j.size()) out += ',';
        out += '\n';
      }
      pad(depth);
      out += ']';
      return;
    }
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string join_numbers(const ordered_json& arr, int digits = 12) {
  std::string out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    if (k) out += ' ';
    out += format_number(arr[k].get<double>(), digits);
  }
  return out;
}

}  // namespace

void apply_tolerance_spec(std::string_view spec, Tolerances& tol) {
  auto parse = [](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::BadParams, fmt::format("bad tolerance value '{}'", s));
    }
    return v;
  };
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      tol.tight = parse(item);
      continue;
    }
    const std::string_view key = item.substr(0, eq);
    const double v = parse(item.substr(eq + 1));
    if (key == "rank") {
      tol.rank = v;
    } else if (key == "tight") {
      tol.tight = v;
    } else if (key == "strict") {
      tol.strict = v;
    } else {
      throw Error(ErrorKind::BadParams, fmt::format("unknown tolerance '{}'", key));
    }
  }
}

ordered_json analysis_report(const FrameDocument& doc, const ReportOptions& opt) {
  const Frame f = to_frame(doc);
  if (f.dimension() < 2) throw Error(ErrorKind::DimensionTooSmall, "analysis needs n >= 2");

  ordered_json j;
  j["tool"] = "framescale";
  j["version"] = std::string(kToolVersion);
  j["name"] = doc.name;
  j["n"] = f.dimension();
  j["m"] = f.size();
  j["tolerances"] = {{"rank", opt.tol.rank}, {"tight", opt.tol.tight}, {"strict", opt.tol.strict}};

  const FrameOperatorData op = frame_operator(f);
  const Tightness t = is_tight(f, opt.tol.tight);
  ordered_json frame;
  frame["lower_bound"] = op.lower_bound;
  frame["upper_bound"] = op.upper_bound;
  frame["tight"] = t.tight();
  frame["tight_bound"] = t.tight() ? ordered_json(*t.bound) : ordered_json(nullptr);
  frame["potential"] = frame_potential(f);
  j["frame"] = frame;

  if (opt.scalability) j["scalability"] = scalability_block(f, opt);
  if (opt.split) j["split"] = split_block(f, opt);
  if (opt.dual) j["dual"] = dual_block(f, opt);
  return j;
}

std::string dump_json(const ordered_json& j, int indent) {
  std::string out;
  dump_value(j, indent, 0, out);
  out += '\n';
  return out;
}

std::string render_text(const ordered_json& r) {
  std::string out;
  out += fmt::format("frame {} (n = {}, m = {})\n", r["name"].get<std::string>().empty() ? "<unnamed>" : r["name"].get<std::string>(),
                     r["n"].get<std::size_t>(), r["m"].get<std::size_t>());
  const auto& fr = r["frame"];
  out += fmt::format("  bounds        A = {}  B = {}\n", format_number(fr["lower_bound"].get<double>(), 12),
                     format_number(fr["upper_bound"].get<double>(), 12));
  out += fmt::format("  tight         {}\n",
                     fr["tight"].get<bool>() ? fmt::format("yes, bound {}", format_number(fr["tight_bound"].get<double>(), 12)) : "no");
  out += fmt::format("  potential     {}\n", format_number(fr["potential"].get<double>(), 12));
  if (r.contains("scalability")) {
    const auto& s = r["scalability"];
    out += fmt::format("  scalability   {} (method {}, corank {})\n", s["verdict"].get<std::string>(),
                       s["method"].get<std::string>(), s["corank"].get<std::size_t>());
    if (s.contains("weights_c")) out += fmt::format("    c           {}\n", join_numbers(s["weights_c"]));
    if (s.contains("parseval_scalars")) out += fmt::format("    a           {}\n", join_numbers(s["parseval_scalars"]));
    if (s.contains("certificate_y")) out += fmt::format("    certificate {}\n", join_numbers(s["certificate_y"]));
    if (s.contains("sign_row")) out += fmt::format("    sign row    {}\n", s["sign_row"].get<std::size_t>());
  }
  if (r.contains("split")) {
    const auto& s = r["split"];
    out += fmt::format("  W             {}\n", s["W"]["status"].get<std::string>());
    out += fmt::format("  V             {}\n", s["V"]["status"].get<std::string>());
    out += fmt::format("  W and V       {}\n", s["intersection"]["verdict"].get<std::string>());
  }
  if (r.contains("dual")) {
    const auto& d = r["dual"];
    out += "  canonical dual\n";
    for (const auto& col : d["canonical"]) out += fmt::format("    {}\n", join_numbers(col));
    out += fmt::format("  dual scalable {}\n", d["scalable"].get<bool>() ? "yes" : "no");
    if (d.contains("weights_c")) out += fmt::format("    c           {}\n", join_numbers(d["weights_c"]));
  }
  const auto& tol = r["tolerances"];
  out += fmt::format("  tolerances    rank={} tight={} strict={}\n", format_number(tol["rank"].get<double>(), 6),
                     format_number(tol["tight"].get<double>(), 6), format_number(tol["strict"].get<double>(), 6));
  return out;
}

}  // namespace framescale
