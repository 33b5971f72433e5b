#include "framescale/generate.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "framescale/duals.hpp"
#include "framescale/error.hpp"

namespace framescale {

Frame harmonic_frame(std::size_t m) {
  if (m < 2) throw Error(ErrorKind::BadParams, "harmonic frame needs m >= 2");
  std::vector<Vector> v;
  for (std::size_t k = 0; k < m; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    v.push_back({std::cos(t), std::sin(t)});
  }
  return make_frame(v);
}

Frame angle_frame(std::span<const double> radians) {
  std::vector<Vector> v;
  for (double t : radians) v.push_back({std::cos(t), std::sin(t)});
  return make_frame(v);
}

Frame hadamard_doubled(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::BadParams, "hadamard-doubled needs n >= 2");
  Matrix h = sylvester_hadamard(n);
  for (std::size_t j = 0; j < n; ++j) h(n - 1, j) *= 2.0;
  return Frame(std::move(h));
}

namespace {

// Raw engine output mapped by hand so the stream does not depend on the
// standard library's distribution implementations.
class PortableGaussian {
 public:
  explicit PortableGaussian(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

Frame random_unit_frame(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 1 || m < n) throw Error(ErrorKind::BadParams, "random-unit needs 1 <= n <= m");
  PortableGaussian rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Vector> v;
    for (std::size_t i = 0; i < m; ++i) {
      Vector x(n);
      double len = 0.0;
      while (len < 1e-8) {
        for (double& c : x) c = rng.next();
        len = norm(x);
      }
      for (double& c : x) c /= len;
      v.push_back(std::move(x));
    }
    try {
      return make_frame(v);
    } catch (const Error&) {
    }
  }
  throw Error(ErrorKind::NumericFailure, "could not draw a spanning frame");
}

}  // namespace framescale
