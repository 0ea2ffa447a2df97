#include "muskat/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "muskat/errors.hpp"
#include "muskat/shape.hpp"

namespace muskat::quad {

namespace {

constexpr unsigned kPoints = 20;

// Gauss-Legendre nodes/weights on [-1, 1], ascending.
struct Rule {
  std::array<double, kPoints> x;
  std::array<double, kPoints> w;
};

const Rule& legendre_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, kPoints>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    Rule r{};
    // Boost stores the non-negative half of the symmetric rule.
    std::size_t k = 0;
    for (std::size_t i = ab.size(); i-- > 0;) {
      if (ab[i] == 0.0) continue;
      r.x[k] = -ab[i];
      r.w[k] = wt[i];
      ++k;
    }
    for (std::size_t i = 0; i < ab.size(); ++i) {
      r.x[k] = ab[i];
      r.w[k] = wt[i];
      ++k;
    }
    return r;
  }();
  return rule;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
  // Errors are measured against the L1 norm so that cancelling signed
  // integrands are accepted.
  const auto acceptable = [&](double val, double err, double l1) {
    return std::isfinite(val) && err <= 1e4 * rel_tol * std::max(l1, 1e-300);
  };
  double err = 0.0;
  double l1 = 0.0;
  const double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, lo, hi, 15, rel_tol, &err, &l1);
  if (acceptable(val, err, l1)) return val;

  // Gauss-Kronrod error estimates degrade on narrow peaks at the ends of the
  // interval; the double-exponential rule clusters its nodes there.
  thread_local boost::math::quadrature::tanh_sinh<double> de;
  double de_err = 0.0;
  double de_l1 = 0.0;
  const double de_val = de.integrate(f, lo, hi, rel_tol, &de_err, &de_l1);
  if (acceptable(de_val, de_err, de_l1)) return de_val;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "quadrature did not converge (estimates %.6g and %.6g, errors %.3g and %.3g)", val,
                de_val, err, de_err);
  throw QuadratureError(buf);
}

double integrate_segment(const std::function<double(double, double)>& f, double len) {
  const double h = 0.5 * len;
  const auto mapped = [&](double t) {
    const double sn = std::sin(0.5 * t);
    const double cs = std::cos(0.5 * t);
    const double s = 2.0 * h * sn * sn;
    const double rest = 2.0 * h * cs * cs;
    if (s <= 0.0 || rest <= 0.0) return 0.0;
    return f(s, rest) * h * std::sin(t);
  };
  // Split at the midpoint, where some densities develop a narrow peak.
  return integrate(mapped, 0.0, 0.5 * kPi) + integrate(mapped, 0.5 * kPi, kPi);
}

double integrate_ray(const std::function<double(double)>& f, double length) {
  // s = length tan^2 t absorbs the inverse square root at the origin and maps
  // the O(s^-2) tail onto a neighbourhood of t = pi/2 where the integrand vanishes.
  return integrate(
      [&](double t) {
        const double c = std::cos(t);
        if (c <= 0.0) return 0.0;
        const double tn = std::tan(t);
        return f(length * tn * tn) * 2.0 * length * tn / (c * c);
      },
      0.0, 0.5 * kPi);
}

cplx integrate_ordered(const std::function<cplx(double)>& f, double lo, double hi, int panels) {
  const Rule& rule = legendre_rule();
  const double width = (hi - lo) / panels;
  cplx sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    for (unsigned i = 0; i < kPoints; ++i) {
      sum += rule.w[i] * f(mid + 0.5 * width * rule.x[i]);
    }
  }
  return 0.5 * width * sum;
}

RootTracker::RootTracker(std::vector<cplx> centers, std::vector<cplx> initial_roots)
    : centers_(std::move(centers)), roots_(std::move(initial_roots)) {
  if (centers_.size() != roots_.size()) {
    throw DomainError("RootTracker: centers and roots differ in size");
  }
}

std::span<const cplx> RootTracker::advance(cplx z) {
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const cplx r = std::sqrt(z - centers_[i]);
    roots_[i] = std::abs(r - roots_[i]) <= std::abs(r + roots_[i]) ? r : -r;
  }
  return roots_;
}

}  // namespace muskat::quad
