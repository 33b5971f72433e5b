#pragma once

#include <vector>

#include "framescale/frame.hpp"
#include "framescale/generate.hpp"
#include "oracles.hpp"

namespace testing_support {

inline framescale::Frame frame_of(const std::vector<oracle::Vec>& vectors) {
  return framescale::make_frame(vectors);
}

inline std::vector<oracle::Vec> vectors_of(const framescale::Frame& f) {
  std::vector<oracle::Vec> out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(f.vector(i));
  return out;
}

inline oracle::Mat to_nested(const framescale::Matrix& m) {
  oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

// x1 = e1, x2 at angle theta, x3 at angle psi.
inline framescale::Frame three_vector_frame(double theta, double psi) {
  return frame_of({{1.0, 0.0}, oracle::unit_from_angle(theta), oracle::unit_from_angle(psi)});
}

inline framescale::Frame worked_example() { return frame_of({{2, 1}, {1, 2}, {1, 1}}); }

inline framescale::Frame first_quadrant() { return frame_of({{1, 0}, {0.8, 0.6}, {0.6, 0.8}}); }

inline framescale::Frame random_frame(oracle::Rng& rng, std::size_t n, std::size_t m) {
  for (;;) {
    std::vector<oracle::Vec> v;
    for (std::size_t i = 0; i < m; ++i) v.push_back(rng.normal_vector(n));
    try {
      return frame_of(v);
    } catch (const std::exception&) {
    }
  }
}

inline double deg(double d) { return d * std::numbers::pi / 180.0; }

}  // namespace testing_support
