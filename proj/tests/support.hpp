#pragma once

// Small helpers shared by the unit tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "muskat/shape.hpp"

namespace testing_support {

using muskat::cplx;

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Uniform draws from the top 53 bits so that sequences are identical on every
// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

inline const muskat::Shape& reference_shape(muskat::Family f) {
  static const muskat::Shape circle = muskat::Circle{1.0};
  static const muskat::Shape ellipse = muskat::Ellipse{2.0, 1.0};
  static const muskat::Shape neumann = muskat::NeumannOval{2.5, std::sqrt(5.0) / 2.0};
  static const muskat::Shape cassini = muskat::CassiniOval{2.0, 1.0};
  switch (f) {
    case muskat::Family::circle: return circle;
    case muskat::Family::ellipse: return ellipse;
    case muskat::Family::neumann: return neumann;
    case muskat::Family::cassini: return cassini;
  }
  return circle;
}

// Admissible growth rates with a_dot = 1 (scaled by `sign`).
inline muskat::ShapeRates growth_rates(const muskat::Shape& shape, double sign = 1.0) {
  const double a = muskat::param_a(shape), b = muskat::param_b(shape);
  switch (muskat::family_of(shape)) {
    case muskat::Family::circle: return {sign, 0.0};
    case muskat::Family::ellipse: return {sign, sign * b / a};
    case muskat::Family::neumann: return {sign, sign * a / b};
    case muskat::Family::cassini: return {sign, 0.0};
  }
  return {};
}

inline constexpr muskat::Family kFamilies[] = {muskat::Family::circle, muskat::Family::ellipse,
                                               muskat::Family::neumann, muskat::Family::cassini};

}  // namespace testing_support
