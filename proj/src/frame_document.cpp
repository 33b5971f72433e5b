#include "framescale/frame_document.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "framescale/error.hpp"

namespace framescale {

namespace {

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(ErrorKind::ParseError, fmt::format("line {}, column {}: {}", line, column, what));
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t parse_count(std::string_view value, std::size_t line, std::size_t column) {
  std::size_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) fail(line, column, fmt::format("expected a non-negative integer, got '{}'", value));
  return out;
}

}  // namespace

std::string format_number(double v, int digits) { return fmt::format("{:.{}g}", v, digits); }

FrameDocument parse_frame_document(std::string_view text) {
  FrameDocument doc;
  bool have_n = false, have_m = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;

    if (const auto colon = line.find(':'); colon != std::string_view::npos) {
      if (!doc.vectors.empty()) fail(line_no, 1, "header line after vector data");
      const std::string_view key = trim(line.substr(0, colon));
      const std::string_view value = trim(line.substr(colon + 1));
      const std::size_t vcol = static_cast<std::size_t>(value.data() - raw.data()) + 1;
      if (key == "name") {
        doc.name = std::string(value);
      } else if (key == "n") {
        doc.n = parse_count(value, line_no, vcol);
        have_n = true;
      } else if (key == "m") {
        doc.m = parse_count(value, line_no, vcol);
        have_m = true;
      } else {
        fail(line_no, 1, fmt::format("unknown header key '{}'", key));
      }
      continue;
    }

    if (!have_n || !have_m) fail(line_no, 1, "vector data before the n and m header lines");
    Vector row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      const std::string_view tok = line.substr(i, j - i);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        fail(line_no, i + 1, fmt::format("'{}' is not a finite decimal number", tok));
      }
      row.push_back(v);
      i = j;
    }
    if (row.size() != doc.n) {
      fail(line_no, 1, fmt::format("expected {} entries per vector, found {}", doc.n, row.size()));
    }
    if (doc.vectors.size() == doc.m) fail(line_no, 1, fmt::format("more than m = {} vectors", doc.m));
    doc.vectors.push_back(std::move(row));
  }
  if (!have_n || !have_m) fail(line_no, 1, "missing n or m header");
  if (doc.n == 0) fail(1, 1, "n must be positive");
  if (doc.m < doc.n) fail(1, 1, fmt::format("m = {} is smaller than n = {}; the vectors cannot span", doc.m, doc.n));
  if (doc.vectors.size() != doc.m) {
    fail(line_no, 1, fmt::format("expected m = {} vectors, found {}", doc.m, doc.vectors.size()));
  }
  return doc;
}

FrameDocument read_frame_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_frame_document(ss.str());
}

std::string serialize_frame_document(const FrameDocument& doc) {
  std::string out;
  if (!doc.name.empty()) out += fmt::format("name: {}\n", doc.name);
  out += fmt::format("n: {}\nm: {}\n", doc.n, doc.m);
  for (const auto& v : doc.vectors) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) out += ' ';
      out += format_number(v[k]);
    }
    out += '\n';
  }
  return out;
}

FrameDocument to_document(const Frame& f, std::string name) {
  FrameDocument doc{std::move(name), f.dimension(), f.size(), {}};
  for (std::size_t i = 0; i < f.size(); ++i) doc.vectors.push_back(f.vector(i));
  return doc;
}

Frame to_frame(const FrameDocument& doc) { return make_frame(doc.vectors); }

}  // namespace framescale
