#include "muskat/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "muskat/errors.hpp"
#include "muskat/shape.hpp"

namespace muskat::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Duplication stops once the spread of the arguments is below this fraction
// of their mean; the neglected series terms are then O(tol^6) ~ 1e-17.
const double kTolRF = std::pow(3.0 * kEps * 0.01, 1.0 / 6.0);

bool on_negative_axis(cplx w) { return w.imag() == 0.0 && w.real() < 0.0; }

}  // namespace

cplx sqrt_cut(cplx w, double direction) {
  // Rotate the cut onto the negative real axis, take the principal root and rotate back.
  double phi = std::fmod(direction, 2.0 * kPi);
  if (phi <= 0.0) phi += 2.0 * kPi;
  const double shift = phi - kPi;
  return std::polar(1.0, 0.5 * shift) * std::sqrt(w * std::polar(1.0, -shift));
}

double agm(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("agm requires positive arguments");
  for (int i = 0; i < 64; ++i) {
    const double m = 0.5 * (x + y);
    const double g = std::sqrt(x * y);
    if (std::abs(m - g) <= 4.0 * kEps * m) return m;
    x = m;
    y = g;
  }
  return 0.5 * (x + y);
}

double ellip_k(double k) {
  if (!(k >= 0.0) || !(k < 1.0)) throw ModulusError("ellip_k requires 0 <= k < 1");
  return kPi / (2.0 * agm(1.0, std::sqrt((1.0 - k) * (1.0 + k))));
}

cplx carlson_rf(cplx x, cplx y, cplx z) {
  if (on_negative_axis(x) || on_negative_axis(y) || on_negative_axis(z)) {
    throw DomainError("carlson_rf argument on the negative real axis");
  }
  const int zeros = (x == 0.0) + (y == 0.0) + (z == 0.0);
  if (zeros > 1) throw DomainError("carlson_rf with more than one zero argument");
  if (!std::isfinite(std::abs(x)) || !std::isfinite(std::abs(y)) || !std::isfinite(std::abs(z))) {
    throw DomainError("carlson_rf argument not finite");
  }

  const cplx a0 = (x + y + z) / 3.0;
  cplx an = a0;
  const double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) / kTolRF;
  cplx x0 = x, y0 = y, z0 = z;
  double mul = 1.0;
  while (q >= mul * std::abs(an)) {
    const cplx sx = std::sqrt(x0), sy = std::sqrt(y0), sz = std::sqrt(z0);
    const cplx lam = sx * sy + sy * sz + sz * sx;
    an = (an + lam) / 4.0;
    x0 = (x0 + lam) / 4.0;
    y0 = (y0 + lam) / 4.0;
    z0 = (z0 + lam) / 4.0;
    mul *= 4.0;
  }
  const cplx xx = (a0 - x) / (mul * an);
  const cplx yy = (a0 - y) / (mul * an);
  const cplx zz = -xx - yy;
  const cplx e2 = xx * yy - zz * zz;
  const cplx e3 = xx * yy * zz;
  return (e3 * (1.0 / 14.0) + 1.0 - e2 * (1.0 / 10.0) + e2 * e2 * (1.0 / 24.0) -
          e2 * e3 * (3.0 / 44.0)) /
         std::sqrt(an);
}

cplx ellip_f(cplx phi, double k) {
  if (!(k >= 0.0) || !(k < 1.0)) throw ModulusError("ellip_f requires 0 <= k < 1");
  if (phi == 0.0) return 0.0;

  // Re(phi) - m pi in (-pi/2, pi/2]
  const double m = std::ceil(phi.real() / kPi - 0.5);
  const cplx p = phi - m * kPi;
  if (std::abs(std::abs(p.real()) - 0.5 * kPi) <= 4.0 * kEps * (1.0 + std::abs(phi.real())) &&
      p.imag() != 0.0 && k * std::cosh(p.imag()) >= 1.0) {
    throw ReductionError("amplitude on a branch cut of the elliptic integral");
  }

  const cplx s = std::sin(p);
  const cplx c = std::cos(p);
  cplx f;
  try {
    f = s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0);
  } catch (const DomainError&) {
    throw ReductionError("amplitude on a branch cut of the elliptic integral");
  }
  if (m != 0.0) f += 2.0 * m * ellip_k(k);
  return f;
}

double ellip_f_sum_amplitude(cplx z, double a, double b) {
  const double a2 = a * a, b2 = b * b;
  const double a4 = a2 * a2, b4 = b2 * b2;
  const double c2 = a4 - b4;
  const double e = std::sqrt(c2) / b;

  const double x = z.real(), y = z.imag();
  const double r2 = x * x + y * y;
  const cplx z2 = z * z;

  const cplx p = b * sqrt_cut(z - cplx(0.0, e), 0.5 * kPi) * sqrt_cut(z + cplx(0.0, e), 1.5 * kPi);
  const cplx q = std::sqrt(z - b) * std::sqrt(z + b);
  const cplx p_sq = b2 * z2 + c2;
  const cplx q_sq = z2 - b2;

  const double num = 2.0 * a2 * std::real(z * q * std::conj(p));
  const double den = b2 * r2 * r2 + c2 * (2.0 * z2.real() - b2);
  if (den == 0.0) throw BranchError("degenerate addition-theorem denominator");
  const double sin_alpha = num / den;

  const double g = r2 * r2 - 2.0 * b2 * (x * x - y * y) - c2;
  const double h = den * den - 2.0 * a4 * std::real(z2 * q_sq * std::conj(p_sq)) +
                   2.0 * a4 * r2 * std::abs(q_sq) * std::abs(p_sq);
  if (!(h > 0.0)) throw BranchError("addition theorem left its principal strip");
  const double cos_alpha = -b2 * g / std::sqrt(h);

  if (sin_alpha < -1e-9) {
    throw BranchError("amplitude outside the principal strip [0, pi]");
  }
  return std::atan2(std::max(sin_alpha, 0.0), cos_alpha);
}

double ellip_f_complement(double alpha, double k) {
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  const double psi = std::atan2(std::cos(alpha), kp * std::sin(alpha));
  return ellip_f(psi, k).real();
}

double hyp2f1_half_series(double x) {
  if (!(x >= 0.0) || !(x < 1.0)) throw DomainError("hyp2f1_half requires 0 <= x < 1");
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 100000; ++n) {
    const double r = (n + 0.5) / (n + 1.0);
    term *= r * r * x;
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double hyp2f1_half_agm(double x) {
  if (!(x >= 0.0) || !(x < 1.0)) throw DomainError("hyp2f1_half requires 0 <= x < 1");
  return 1.0 / agm(1.0, std::sqrt(1.0 - x));
}

double hyp2f1_half(double x) {
  if (!(x >= 0.0) || !(x < 1.0)) throw DomainError("hyp2f1_half requires 0 <= x < 1");
  return x <= 0.5 ? hyp2f1_half_series(x) : hyp2f1_half_agm(x);
}

}  // namespace muskat::specfun
