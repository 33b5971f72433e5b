#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "framescale/frame_document.hpp"
#include "framescale/scalability.hpp"

namespace framescale {

inline constexpr std::string_view kToolVersion = "1.0.0";

struct ReportOptions {
  Tolerances tol;
  bool strict = false;
  bool scalability = true;
  bool split = true;
  bool dual = true;
};

/// Full analysis of one frame as an insertion-ordered JSON object. Every
/// weight vector is re-verified against its defining equalities before it is
/// added; a failed re-check throws NumericFailure.
nlohmann::ordered_json analysis_report(const FrameDocument& doc, const ReportOptions& options);

/// Deterministic JSON text; floating-point values at 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

/// Human-readable rendering of an analysis report.
std::string render_text(const nlohmann::ordered_json& report);

/// Parses "1e-9" (sets the tightness tolerance) or comma-separated
/// "rank=1e-10,tight=1e-8,strict=1e-9" into `tol`. Throws BadParams.
void apply_tolerance_spec(std::string_view spec, Tolerances& tol);

}  // namespace framescale
