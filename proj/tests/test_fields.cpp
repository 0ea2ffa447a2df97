#include <doctest.h>

#include <cmath>
#include <functional>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "muskat/curves.hpp"
#include "muskat/errors.hpp"
#include "muskat/fields.hpp"
#include "support.hpp"

using namespace muskat;
using testing_support::growth_rates;
using testing_support::kFamilies;
using testing_support::reference_shape;
using testing_support::rel_err;
using testing_support::Rng;

namespace {

// Interior pressure from Green's second identity with the free-space kernel:
//   p(z0) = -(1/2pi) int G-weighted sources + (1/(2pi k2)) oint ln|z - z0| v_n ds,
// using p = 0 on the interface and -k2 dp/dn = v_n there.  The boundary
// integral uses the polar parametrisation with the periodic trapezoidal rule.
double green_interior(const Shape& shape, const ShapeRates& rates, double k2, cplx z0,
                      const std::function<double(cplx)>& source_term) {
  const int n = 4096;
  const double h = 2.0 * kPi / n;
  const double dh = 1e-3;
  auto point = [&](double th) { return std::polar(boundary_radius(shape, th), th); };
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = h * i;
    const cplx z = point(th);
    const cplx dz = (8.0 * (point(th + dh) - point(th - dh)) - (point(th + 2 * dh) - point(th - 2 * dh))) /
                    (12.0 * dh);
    sum += std::log(std::abs(z - z0)) * normal_velocity(shape, rates, z) * std::abs(dz);
  }
  return sum * h / (2.0 * kPi * k2) + source_term(z0);
}

double quad(const std::function<double(double)>& f, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, lo, hi, 1e-14);
}

Vec2 fd_velocity(const std::function<double(cplx)>& p, double k, cplx z, double h) {
  const double px = (p(z + h) - p(z - h)) / (2 * h);
  const double py = (p(z + cplx(0, h)) - p(z - cplx(0, h))) / (2 * h);
  return {-k * px, -k * py};
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("pressure vanishes on the interface for every family") {
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    const ShapeRates r = growth_rates(s);
    for (const cplx& z : boundary_points(s, 200)) {
      CHECK(std::abs(pressure(s, r, Mobility{}, 1, z)) < 1e-12);
      CHECK(std::abs(pressure(s, r, Mobility{}, 2, z)) < 1e-12);
    }
  }
}

TEST_CASE("circle pressure and velocity examples") {
  const Shape s = Circle{1.0};
  const ShapeRates r{1.0, 0.0};
  CHECK(rel_err(pressure(s, r, Mobility{}, 1, 2.0), -0.5 * std::log(4.0)) < 1e-15);
  const Vec2 v = velocity(s, r, Mobility{}, 1, 2.0);
  CHECK(std::abs(v.x - 0.5) < 1e-15);
  CHECK(std::abs(v.y) < 1e-15);
  // Rotational symmetry.
  const cplx z(1.3, 0.4);
  for (double th : {0.3, 1.7, -2.4}) {
    const Vec2 u = velocity(s, r, Mobility{}, 1, z);
    const Vec2 w = velocity(s, r, Mobility{}, 1, z * std::polar(1.0, th));
    CHECK(std::hypot(u.x, u.y) == doctest::Approx(std::hypot(w.x, w.y)).epsilon(1e-14));
  }
}

TEST_CASE("ellipse pressure against the elliptic-coordinate closed form") {
  const Ellipse e{2.0, 1.0};
  const ShapeRates r{0.5, 0.25};  // d/dt(ab) = 1
  const double d = std::sqrt(3.0);
  CHECK(rel_err(pressure(e, r, Mobility{}, 2, d), 0.5 * std::log(3.0 / d)) < 1e-14);
  CHECK(std::abs(pressure(e, r, Mobility{}, 2, d) - 0.2747) < 1e-4);
  // |z + sqrt(z^2 - d^2)| is the larger of the two root choices.
  auto oracle = [&](cplx z, double k) {
    const cplx q = std::sqrt(z * z - d * d);
    const double m = std::max(std::abs(z + q), std::abs(z - q));
    return -(1.0 / (2 * k)) * (std::log(m) - std::log(3.0));
  };
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const cplx z(rng.uniform(-6, 6), rng.uniform(-6, 6));
    if (std::abs(z.imag()) < 1e-6 || on_boundary(e, z)) continue;
    const int j = fluid_at(e, z);
    const Mobility mob{0.7, 1.9};
    CHECK(rel_err(pressure(e, r, mob, j, z), oracle(z, mob.of(j))) < 1e-12);
  }
}

TEST_CASE("elliptic coordinate is the squared real part of sqrt(z^2 - d^2)") {
  const double d = std::sqrt(3.0);
  CHECK(elliptic_coordinate(d, 2.0).alpha_sq == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(elliptic_coordinate(d, cplx(0, 1)).alpha_sq == 0.0);
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const cplx z(rng.uniform(-4, 4), rng.uniform(-4, 4));
    const double re = std::sqrt(z * z - d * d).real();
    CHECK(elliptic_coordinate(d, z).alpha_sq == doctest::Approx(re * re).epsilon(1e-12));
  }
}

TEST_CASE("Neumann pressure on the real axis against the principal closed form") {
  const NeumannOval s{2.5, std::sqrt(5.0) / 2};
  const ShapeRates r{0.4, 2.5 * 0.4 / s.b};
  const double a = s.a, b = s.b, d2 = 5.0;
  auto oracle = [&](double x, double k) {
    const double num = a * a + b * b + 2.0 * std::sqrt(a * a * b * b + d2 * x * x);
    return a * r.a_dot / (2 * k) * std::log(std::abs(num / (4 * x * x - d2)));
  };
  for (double x : {0.1, 0.5, 1.5, 2.4, 2.6, 3.0, 10.0, 100.0}) {
    const int j = x < a ? 2 : 1;
    CHECK(rel_err(pressure(s, r, Mobility{}, j, x), oracle(x, 1.0)) < 1e-12);
  }
  CHECK_THROWS_AS(pressure(s, r, Mobility{}, 2, std::sqrt(5.0) / 2), OnSupportError);
}

TEST_CASE("interior pressure matches a Green's-identity oracle") {
  const double k2 = 1.7;
  const Mobility mob{1.0, k2};
  const cplx probes[] = {cplx(0.3, 0.4), cplx(-0.2, 0.25), cplx(0.45, -0.35)};

  SUBCASE("circle") {
    const Shape s = Circle{1.0};
    const ShapeRates r{1.0, 0.0};
    const double adot = area_rate(s, r);
    for (cplx z0 : probes) {
      const double want = green_interior(s, r, k2, z0, [&](cplx z) {
        return -adot / (2 * kPi * k2) * std::log(std::abs(z));
      });
      CHECK(std::abs(pressure(s, r, mob, 2, z0) - want) < 1e-9);
    }
  }
  SUBCASE("ellipse") {
    const Ellipse e{2.0, 1.0};
    const ShapeRates r{0.5, 0.25};
    const double d = std::sqrt(3.0), d_dot = (e.a * r.a_dot - e.b * r.b_dot) / d;
    for (cplx z0 : probes) {
      const double want = green_interior(e, r, k2, z0, [&](cplx z) {
        // x = d sin(th) absorbs the inverse square root of the density.
        const double seg = quad(
            [&](double th) {
              return std::log(std::abs(d * std::sin(th) - z)) * 2 * e.a * e.b * d_dot / (d * k2);
            },
            -kPi / 2, kPi / 2);
        return -seg / (2 * kPi);
      });
      CHECK(std::abs(pressure(e, r, mob, 2, z0) - want) < 1e-9);
    }
  }
  SUBCASE("Neumann") {
    const NeumannOval s{2.5, std::sqrt(5.0) / 2};
    const ShapeRates r{0.4, 2.5 * 0.4 / s.b};
    const double half = area_rate(s, r) / 2, h = std::sqrt(5.0) / 2;
    for (cplx z0 : probes) {
      const double want = green_interior(s, r, k2, z0, [&](cplx z) {
        return -half / (2 * kPi * k2) * (std::log(std::abs(z - h)) + std::log(std::abs(z + h)));
      });
      CHECK(std::abs(pressure(s, r, mob, 2, z0) - want) < 1e-9);
    }
  }
  SUBCASE("Cassini") {
    const CassiniOval c{2.0, 1.0};
    const ShapeRates r{0.25, 0.0};
    const double a = c.a, b = c.b;
    for (cplx z0 : probes) {
      const double want = green_interior(c, r, k2, z0, [&](cplx z) {
        const double seg = quad(
            [&](double th) {
              const double x = b * std::sin(th);
              const double w = 2 * a * a * a * r.a_dot /
                               (k2 * std::sqrt(b * b * x * x + std::pow(a, 4) - std::pow(b, 4)));
              return std::log(std::abs(x - z)) * w;
            },
            -kPi / 2, kPi / 2);
        return -seg / (2 * kPi);
      });
      CHECK(std::abs(pressure(c, r, mob, 2, z0) - want) < 1e-9);
    }
  }
}

TEST_CASE("velocity is -k grad p for every family and both fluids") {
  Rng rng(41);
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    const ShapeRates r = growth_rates(s);
    const Mobility mob{0.6, 2.2};
    int tested = 0;
    while (tested < 40) {
      const cplx z(rng.uniform(-4, 4), rng.uniform(-4, 4));
      if (std::abs(radial_offset(s, z)) < 0.05 || std::abs(z.real()) < 0.05 ||
          std::abs(z.imag()) < 0.05 || std::abs(std::abs(z.real()) - std::sqrt(5.0) / 2) < 0.05) {
        continue;
      }
      const int j = fluid_at(s, z);
      const Vec2 v = velocity(s, r, mob, j, z);
      const Vec2 w = fd_velocity([&](cplx u) { return pressure(s, r, mob, j, u); }, mob.of(j), z, 1e-5);
      const double scale = std::max(1.0, std::hypot(v.x, v.y));
      CHECK(std::abs(v.x - w.x) < 1e-7 * scale);
      CHECK(std::abs(v.y - w.y) < 1e-7 * scale);
      ++tested;
    }
  }
}

TEST_CASE("velocity meets the interface normal velocity from both sides") {
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    const ShapeRates r = growth_rates(s);
    const Mobility mob{0.5, 3.0};
    for (const cplx& z : boundary_points(s, 64)) {
      const cplx n = outward_normal(s, z);
      const double vn = normal_velocity(s, r, z);
      for (int j : {1, 2}) {
        const Vec2 v = velocity(s, r, mob, j, z);
        CHECK(std::abs(v.x * n.real() + v.y * n.imag() - vn) < 1e-9 * std::max(1.0, std::abs(vn)));
      }
    }
  }
}

TEST_CASE("sample_field picks the fluid by position") {
  const Shape s = Ellipse{2.0, 1.0};
  const ShapeRates r = growth_rates(s);
  const FieldSample in = sample_field(s, r, Mobility{}, cplx(0.5, 0.5));
  CHECK(in.fluid == 2);
  CHECK(in.pressure == doctest::Approx(pressure(s, r, Mobility{}, 2, cplx(0.5, 0.5))));
  const FieldSample out = sample_field(s, r, Mobility{}, cplx(3.0, 0.5));
  CHECK(out.fluid == 1);
}

TEST_CASE("field evaluation errors") {
  const Shape c = Circle{1.0};
  const ShapeRates r{1.0, 0.0};
  CHECK_THROWS_AS(pressure(c, r, Mobility{}, 1, 0.5), WrongSideError);
  CHECK_THROWS_AS(pressure(c, r, Mobility{}, 2, 2.0), WrongSideError);
  CHECK_THROWS_AS(pressure(c, r, Mobility{}, 2, 0.0), OnSupportError);
  CHECK_THROWS_AS(pressure(c, {1.0, 1.0}, Mobility{}, 2, 0.5), AdmissibilityError);
  const Shape e = Ellipse{2.0, 1.0};
  // Pressure is continuous across the segment; the velocity is not.
  CHECK_NOTHROW(pressure(e, growth_rates(e), Mobility{}, 2, 0.3));
  CHECK_THROWS_AS(velocity(e, growth_rates(e), Mobility{}, 2, 0.3), OnSupportError);
  CHECK_THROWS_AS(pressure_circle_surface_tension(e, 1.0, 1.0, Mobility{}, 1, 3.0), FamilyError);
  CHECK_THROWS_AS(pressure_ellipse_constant_area(c, 1.0, Mobility{}, 1, 3.0), FamilyError);
}

TEST_CASE("circle with surface tension") {
  const Shape c = Circle{2.0};
  const Mobility mob{1.3, 0.8};
  const cplx z(3.0, 1.0), w(0.5, -0.7);
  // gamma = 0 reduces to the plain pressure.
  CHECK(pressure_circle_surface_tension(c, 0.7, 0.0, mob, 1, z) ==
        doctest::Approx(pressure(c, {0.7, 0.0}, mob, 1, z)));
  CHECK(pressure_circle_surface_tension(c, 0.7, 3.0, mob, 2, w) ==
        doctest::Approx(pressure(c, {0.7, 0.0}, mob, 2, w)));
  for (const cplx& b : boundary_points(c, 20)) {
    const double jump = pressure_circle_surface_tension(c, 0.7, 3.0, mob, 1, b) -
                        pressure_circle_surface_tension(c, 0.7, 3.0, mob, 2, b);
    CHECK(jump == doctest::Approx(1.5).epsilon(1e-14));
  }
  // Far field: p1 + (a a_dot / k1) ln|z| is the constant gamma/a + (a a_dot / 2k1) ln a^2.
  const double far = 1e6;
  const double lim = pressure_circle_surface_tension(c, 0.7, 3.0, mob, 1, far) +
                     2.0 * 0.7 / mob.k1 * std::log(far);
  CHECK(lim == doctest::Approx(1.5 + 2.0 * 0.7 / (2 * mob.k1) * std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("constant-area ellipse variant") {
  const Ellipse e{2.0, 1.0};
  const Mobility mob{0.8, 1.6};
  const double a_dot = 0.3;
  const ShapeRates r = constant_area_rates(e, a_dot);
  CHECK(r.b_dot == doctest::Approx(-0.15));

  for (const cplx& z : boundary_points(e, 500)) {
    const double p1 = pressure_ellipse_constant_area(e, a_dot, mob, 1, z);
    const double p2 = pressure_ellipse_constant_area(e, a_dot, mob, 2, z);
    CHECK(std::abs(p1 - p2) < 1e-9);
  }

  // Static shape: no flow at all.
  for (cplx z : {cplx(0.3, 0.2), cplx(4.0, 1.0)}) {
    CHECK(std::abs(pressure_ellipse_constant_area(e, 0.0, mob, fluid_at(e, z), z)) < 1e-15);
  }

  // Normal velocity from the level-set oracle g = x^2/a^2 + y^2/b^2 - 1.
  for (const cplx& z : boundary_points(e, 64)) {
    const double x = z.real(), y = z.imag();
    const double gt = -2 * x * x * r.a_dot / std::pow(e.a, 3) - 2 * y * y * r.b_dot / std::pow(e.b, 3);
    const cplx grad(2 * x / (e.a * e.a), 2 * y / (e.b * e.b));
    const double vn = -gt / std::abs(grad);
    const cplx n = grad / std::abs(grad);
    for (int j : {1, 2}) {
      const Vec2 v = velocity_ellipse_constant_area(e, a_dot, mob, j, z);
      CHECK(std::abs(v.x * n.real() + v.y * n.imag() - vn) < 1e-9);
    }
  }

  // Velocity against finite differences of the pressure, and linear growth at infinity.
  for (cplx z : {cplx(0.4, 0.3), cplx(3.0, 2.0), cplx(-5.0, 0.7)}) {
    const int j = fluid_at(e, z);
    const Vec2 v = velocity_ellipse_constant_area(e, a_dot, mob, j, z);
    const Vec2 w = fd_velocity(
        [&](cplx u) { return pressure_ellipse_constant_area(e, a_dot, mob, j, u); }, mob.of(j), z, 1e-5);
    CHECK(std::abs(v.x - w.x) < 1e-7);
    CHECK(std::abs(v.y - w.y) < 1e-7);
  }
  const Vec2 v1 = velocity_ellipse_constant_area(e, a_dot, mob, 1, 1e3);
  const Vec2 v2 = velocity_ellipse_constant_area(e, a_dot, mob, 1, 2e3);
  CHECK(v2.x / v1.x == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("pressures are harmonic away from supports") {
  const double h = 1e-3;
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    const ShapeRates r = growth_rates(s);
    for (cplx z : {cplx(0.3, 0.2), cplx(3.5, 1.5), cplx(-0.7, -0.3), cplx(-4.0, 0.8)}) {
      if (std::abs(radial_offset(s, z)) < 0.1) continue;
      const int j = fluid_at(s, z);
      auto p = [&](cplx u) { return pressure(s, r, Mobility{}, j, u); };
      const double lap = (p(z + h) + p(z - h) + p(z + cplx(0, h)) + p(z - cplx(0, h)) - 4 * p(z)) / (h * h);
      CHECK(std::abs(lap) < 1e-4);
    }
  }
}

}  // TEST_SUITE
