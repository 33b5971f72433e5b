#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "framescale/frame.hpp"

namespace framescale {

/// Text frame file:
///
///     # comments and blank lines are ignored
///     name: mercedes-benz
///     n: 2
///     m: 3
///     1 0
///     -0.5 0.8660254037844386
///     -0.5 -0.8660254037844386
///
/// Header lines are `key: value` (n and m required, name optional), followed
/// by m rows of n whitespace-separated decimals, one frame vector per row.
struct FrameDocument {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Vector> vectors;
};

/// Throws ParseError with "line L, column C" locations.
FrameDocument parse_frame_document(std::string_view text);
FrameDocument read_frame_document(const std::filesystem::path& path);

/// Numbers at 17 significant digits so that parsing reproduces every bit.
std::string serialize_frame_document(const FrameDocument& doc);

FrameDocument to_document(const Frame& f, std::string name = {});
Frame to_frame(const FrameDocument& doc);

/// printf-style %.{digits}g.
std::string format_number(double v, int digits = 17);

}  // namespace framescale
