#include "muskat/curves.hpp"

#include <array>
#include <cmath>
#include <string>

#include "muskat/errors.hpp"
#include "muskat/specfun.hpp"

namespace muskat {

namespace {

using specfun::sqrt_cut;

constexpr double kCutTol = 1e-14;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void expect_roots(std::span<const cplx> roots, std::size_t n) {
  if (roots.size() != n) {
    throw DomainError("expected " + std::to_string(n) + " branch roots, got " +
                      std::to_string(roots.size()));
  }
}

// Cassini r^2(theta), rationalised where b^2 cos 2theta < 0 to avoid cancellation.
double cassini_r2(double a, double b, double theta) {
  const double b2 = b * b;
  const double c2 = a * a * a * a - b2 * b2;
  const double c = std::cos(2.0 * theta);
  const double root = std::sqrt(b2 * b2 * c * c + c2);
  if (c >= 0.0) return b2 * c + root;
  return c2 / (root - b2 * c);
}

}  // namespace

double implicit_eval(const Shape& shape, double x, double y) {
  const double x2 = x * x, y2 = y * y, r2 = x2 + y2;
  return std::visit(
      overloaded{
          [&](const Circle& s) { return r2 - s.a * s.a; },
          [&](const Ellipse& s) { return x2 / (s.a * s.a) + y2 / (s.b * s.b) - 1.0; },
          [&](const NeumannOval& s) { return r2 * r2 - s.a * s.a * x2 - s.b * s.b * y2; },
          [&](const CassiniOval& s) {
            const double b2 = s.b * s.b;
            return r2 * r2 - 2.0 * b2 * (x2 - y2) - (s.a * s.a * s.a * s.a - b2 * b2);
          },
      },
      shape);
}

cplx implicit_gradient(const Shape& shape, double x, double y) {
  const double r2 = x * x + y * y;
  return std::visit(
      overloaded{
          [&](const Circle&) { return cplx(2.0 * x, 2.0 * y); },
          [&](const Ellipse& s) { return cplx(2.0 * x / (s.a * s.a), 2.0 * y / (s.b * s.b)); },
          [&](const NeumannOval& s) {
            return cplx(4.0 * x * r2 - 2.0 * s.a * s.a * x, 4.0 * y * r2 - 2.0 * s.b * s.b * y);
          },
          [&](const CassiniOval& s) {
            const double b2 = s.b * s.b;
            return cplx(4.0 * x * (r2 - b2), 4.0 * y * (r2 + b2));
          },
      },
      shape);
}

double boundary_radius(const Shape& shape, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return std::visit(
      overloaded{
          [&](const Circle& e) { return e.a; },
          [&](const Ellipse& e) {
            return e.a * e.b / std::sqrt(e.b * e.b * c * c + e.a * e.a * s * s);
          },
          [&](const NeumannOval& e) { return std::sqrt(e.a * e.a * c * c + e.b * e.b * s * s); },
          [&](const CassiniOval& e) { return std::sqrt(cassini_r2(e.a, e.b, theta)); },
      },
      shape);
}

double radial_offset(const Shape& shape, cplx z) {
  return std::abs(z) - boundary_radius(shape, std::arg(z));
}

double boundary_tolerance(const Shape& shape) { return 1e-9 * scale(shape); }

bool on_boundary(const Shape& shape, cplx z) {
  return std::abs(radial_offset(shape, z)) <= boundary_tolerance(shape);
}

int fluid_at(const Shape& shape, cplx z) {
  return radial_offset(shape, z) > boundary_tolerance(shape) ? 1 : 2;
}

cplx outward_normal(const Shape& shape, cplx z) {
  const cplx grad = implicit_gradient(shape, z.real(), z.imag());
  return grad / std::abs(grad);
}

std::vector<cplx> branch_points(const Shape& shape) {
  return std::visit(
      overloaded{
          [](const Circle&) { return std::vector<cplx>{}; },
          [](const Ellipse& s) { return std::vector<cplx>{s.d(), -s.d()}; },
          [](const NeumannOval& s) {
            const double c = s.branch_height();
            return std::vector<cplx>{cplx(0.0, c), cplx(0.0, -c)};
          },
          [](const CassiniOval& s) {
            const double e = s.branch_height();
            return std::vector<cplx>{cplx(0.0, e), cplx(0.0, -e), s.b, -s.b};
          },
      },
      shape);
}

std::vector<cplx> conventional_roots(const Shape& shape, cplx z) {
  return std::visit(
      overloaded{
          [](const Circle&) { return std::vector<cplx>{}; },
          [&](const Ellipse& s) {
            return std::vector<cplx>{std::sqrt(z - s.d()), std::sqrt(z + s.d())};
          },
          [&](const NeumannOval& s) {
            const double c = s.branch_height();
            return std::vector<cplx>{sqrt_cut(z - cplx(0.0, c), 0.5 * kPi),
                                     sqrt_cut(z + cplx(0.0, c), 1.5 * kPi)};
          },
          [&](const CassiniOval& s) {
            const double e = s.branch_height();
            return std::vector<cplx>{sqrt_cut(z - cplx(0.0, e), 0.5 * kPi),
                                     sqrt_cut(z + cplx(0.0, e), 1.5 * kPi), std::sqrt(z - s.b),
                                     std::sqrt(z + s.b)};
          },
      },
      shape);
}

void require_regular(const Shape& shape, cplx z) {
  const double tol = kCutTol * scale(shape);
  const double x = z.real(), y = z.imag();
  std::visit(
      overloaded{
          [&](const Circle&) {
            if (std::abs(z) <= tol) throw PoleError("Schwarz function pole at z = 0");
          },
          [&](const Ellipse& s) {
            if (std::abs(y) <= tol && std::abs(x) <= s.d() + tol) {
              throw BranchCutError("z on the interfocal cut [-d, d]");
            }
          },
          [&](const NeumannOval& s) {
            const double h = 0.5 * s.d();
            if (std::abs(z - h) <= tol || std::abs(z + h) <= tol) {
              throw PoleError("Schwarz function pole at z = +-d/2");
            }
            if (std::abs(x) <= tol && std::abs(y) >= s.branch_height() - tol) {
              throw BranchCutError("z on a vertical cut beyond +-i ab/d");
            }
          },
          [&](const CassiniOval& s) {
            if (std::abs(y) <= tol && std::abs(x) <= s.b + tol) {
              throw BranchCutError("z on the cut [-b, b]");
            }
            if (std::abs(x) <= tol && std::abs(y) >= s.branch_height() - tol) {
              throw BranchCutError("z on a vertical cut beyond +-i sqrt(a^4-b^4)/b");
            }
          },
      },
      shape);
}

cplx schwarz_on_sheet(const Shape& shape, cplx z, std::span<const cplx> roots) {
  return std::visit(
      overloaded{
          [&](const Circle& s) -> cplx {
            expect_roots(roots, 0);
            return s.a * s.a / z;
          },
          [&](const Ellipse& s) -> cplx {
            expect_roots(roots, 2);
            const double d2 = s.a * s.a - s.b * s.b;
            const cplx q = roots[0] * roots[1];
            return ((s.a * s.a + s.b * s.b) * z - 2.0 * s.a * s.b * q) / d2;
          },
          [&](const NeumannOval& s) -> cplx {
            expect_roots(roots, 2);
            const double d = s.d();
            const cplx r = d * roots[0] * roots[1];
            return z * (s.a * s.a + s.b * s.b + 2.0 * r) / (4.0 * z * z - d * d);
          },
          [&](const CassiniOval& s) -> cplx {
            expect_roots(roots, 4);
            return s.b * roots[0] * roots[1] / (roots[2] * roots[3]);
          },
      },
      shape);
}

cplx schwarz_dz_on_sheet(const Shape& shape, cplx z, std::span<const cplx> roots) {
  return std::visit(
      overloaded{
          [&](const Circle& s) -> cplx {
            expect_roots(roots, 0);
            return -s.a * s.a / (z * z);
          },
          [&](const Ellipse& s) -> cplx {
            expect_roots(roots, 2);
            const double d2 = s.a * s.a - s.b * s.b;
            const cplx q = roots[0] * roots[1];
            return ((s.a * s.a + s.b * s.b) - 2.0 * s.a * s.b * z / q) / d2;
          },
          [&](const NeumannOval& s) -> cplx {
            expect_roots(roots, 2);
            const double d = s.d(), d2 = d * d;
            const double sum = s.a * s.a + s.b * s.b;
            const cplx r = d * roots[0] * roots[1];
            const cplx num = z * (sum + 2.0 * r);
            const cplx den = 4.0 * z * z - d2;
            const cplx dnum = sum + 2.0 * r + 2.0 * z * (d2 * z / r);
            return (dnum * den - num * 8.0 * z) / (den * den);
          },
          [&](const CassiniOval& s) -> cplx {
            expect_roots(roots, 4);
            const cplx p = s.b * roots[0] * roots[1];
            const cplx q = roots[2] * roots[3];
            const cplx dp = s.b * s.b * z / p;
            const cplx dq = z / q;
            return dp / q - p * dq / (q * q);
          },
      },
      shape);
}

cplx schwarz_dot_on_sheet(const Shape& shape, const ShapeRates& rt, cplx z,
                          std::span<const cplx> roots) {
  const double ad = rt.a_dot, bd = rt.b_dot;
  return std::visit(
      overloaded{
          [&](const Circle& s) -> cplx {
            expect_roots(roots, 0);
            return 2.0 * s.a * ad / z;
          },
          [&](const Ellipse& s) -> cplx {
            expect_roots(roots, 2);
            const double a = s.a, b = s.b;
            const double d2 = a * a - b * b;
            const double d2_dot = 2.0 * a * ad - 2.0 * b * bd;
            const double big_a_dot = (2.0 * a * ad + 2.0 * b * bd) / d2 -
                                     (a * a + b * b) * d2_dot / (d2 * d2);
            const double big_b = 2.0 * a * b / d2;
            const double big_b_dot = 2.0 * (ad * b + a * bd) / d2 - 2.0 * a * b * d2_dot / (d2 * d2);
            const cplx q = roots[0] * roots[1];
            return big_a_dot * z - big_b_dot * q + big_b * d2_dot / (2.0 * q);
          },
          [&](const NeumannOval& s) -> cplx {
            expect_roots(roots, 2);
            const double a = s.a, b = s.b;
            const double d = s.d(), d2 = d * d;
            const double sum = a * a + b * b;
            const double sum_dot = 2.0 * a * ad + 2.0 * b * bd;
            const double d2_dot = 2.0 * a * ad - 2.0 * b * bd;
            const double ab2_dot = 2.0 * a * b * (ad * b + a * bd);
            const cplx r = d * roots[0] * roots[1];
            const cplx r_dot = (d2_dot * z * z + ab2_dot) / (2.0 * r);
            const cplx num = z * (sum + 2.0 * r);
            const cplx num_dot = z * (sum_dot + 2.0 * r_dot);
            const cplx den = 4.0 * z * z - d2;
            return num_dot / den + num * d2_dot / (den * den);
          },
          [&](const CassiniOval& s) -> cplx {
            expect_roots(roots, 4);
            const double a = s.a, b = s.b;
            const cplx p = b * roots[0] * roots[1];
            const cplx q = roots[2] * roots[3];
            const cplx p_dot =
                (2.0 * b * bd * z * z + 4.0 * a * a * a * ad - 4.0 * b * b * b * bd) / (2.0 * p);
            const cplx q_dot = -b * bd / q;
            return p_dot / q - p * q_dot / (q * q);
          },
      },
      shape);
}

cplx schwarz(const Shape& shape, cplx z) {
  require_regular(shape, z);
  return schwarz_on_sheet(shape, z, conventional_roots(shape, z));
}

cplx schwarz_dz(const Shape& shape, cplx z) {
  require_regular(shape, z);
  return schwarz_dz_on_sheet(shape, z, conventional_roots(shape, z));
}

cplx schwarz_dot_general(const Shape& shape, const ShapeRates& rates, cplx z) {
  require_regular(shape, z);
  return schwarz_dot_on_sheet(shape, rates, z, conventional_roots(shape, z));
}

cplx schwarz_dot(const Shape& shape, const ShapeRates& rates, cplx z) {
  require_admissible(shape, rates);
  return schwarz_dot_general(shape, rates, z);
}

double normal_velocity(const Shape& shape, const ShapeRates& rates, cplx z) {
  if (!on_boundary(shape, z)) {
    throw NotOnBoundaryError("point is not on the interface (radial offset " +
                             std::to_string(radial_offset(shape, z)) + ")");
  }
  const cplx s_dot = schwarz_dot_general(shape, rates, z);
  cplx root = std::sqrt(4.0 * schwarz_dz(shape, z));
  // 2/root is the unit tangent; pick the root giving the counterclockwise one.
  const cplx tangent = cplx(0.0, 1.0) * outward_normal(shape, z);
  if (std::real(2.0 / root * std::conj(tangent)) < 0.0) root = -root;
  return std::real(cplx(0.0, -1.0) * s_dot / root);
}

std::vector<cplx> boundary_points(const Shape& shape, int n) {
  if (n < 3) throw InvalidCount("boundary_points requires n >= 3, got " + std::to_string(n));
  std::vector<cplx> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    if (const auto* e = std::get_if<Ellipse>(&shape)) {
      pts[i] = cplx(e->a * std::cos(t), e->b * std::sin(t));
    } else {
      pts[i] = std::polar(boundary_radius(shape, t), t);
    }
  }
  return pts;
}

double area_by_quadrature(const Shape& shape, int n) {
  if (n < 3) throw InvalidCount("area_by_quadrature requires n >= 3");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = boundary_radius(shape, 2.0 * kPi * i / n);
    sum += r * r;
  }
  return 0.5 * sum * (2.0 * kPi / n);
}

double area(const Shape& shape) {
  return std::visit(
      overloaded{
          [](const Circle& s) { return kPi * s.a * s.a; },
          [](const Ellipse& s) { return kPi * s.a * s.b; },
          [](const NeumannOval& s) { return 0.5 * kPi * (s.a * s.a + s.b * s.b); },
          [&](const CassiniOval&) {
            double prev = area_by_quadrature(shape, 64);
            for (int n = 128; n <= (1 << 20); n *= 2) {
              const double cur = area_by_quadrature(shape, n);
              if (std::abs(cur - prev) <= 1e-15 * cur) return cur;
              prev = cur;
            }
            return prev;
          },
      },
      shape);
}

double area_rate(const Shape& shape, const ShapeRates& r) {
  return std::visit(
      overloaded{
          [&](const Circle& s) { return 2.0 * kPi * s.a * r.a_dot; },
          [&](const Ellipse& s) { return kPi * (r.a_dot * s.b + s.a * r.b_dot); },
          [&](const NeumannOval& s) { return kPi * (s.a * r.a_dot + s.b * r.b_dot); },
          [&](const CassiniOval& s) {
            const double q = s.b / s.a;
            return 2.0 * kPi * s.a * r.a_dot * specfun::hyp2f1_half(q * q * q * q);
          },
      },
      shape);
}

}  // namespace muskat
