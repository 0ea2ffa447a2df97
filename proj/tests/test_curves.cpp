#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/ellint_1.hpp>

#include "muskat/curves.hpp"
#include "muskat/errors.hpp"
#include "muskat/motherbody.hpp"
#include "support.hpp"

using namespace muskat;
using testing_support::growth_rates;
using testing_support::kFamilies;
using testing_support::reference_shape;
using testing_support::rel_err;
using testing_support::Rng;

namespace {

// A random point at least `margin` away from every cut, pole and the origin.
cplx regular_point(const Shape& shape, Rng& rng, double margin = 0.05) {
  const double s = scale(shape);
  for (;;) {
    const cplx z(rng.uniform(-3 * s, 3 * s), rng.uniform(-3 * s, 3 * s));
    bool ok = std::abs(z) > margin * s;
    for (const auto& [support, fluid] : support_geometry(shape)) {
      ok = ok && distance_to_support(support, z) > margin * s;
    }
    if (ok) return z;
  }
}

// Level-set normal velocity -g_t / |grad g| with g_t by central differences in time.
double level_set_velocity(const Shape& shape, const ShapeRates& rates, cplx z) {
  const double h = 1e-6;
  const double gp = implicit_eval(advance(shape, rates, h), z.real(), z.imag());
  const double gm = implicit_eval(advance(shape, rates, -h), z.real(), z.imag());
  return -(gp - gm) / (2 * h) / std::abs(implicit_gradient(shape, z.real(), z.imag()));
}

cplx boundary_at(const Shape& shape, double theta) {
  return std::polar(boundary_radius(shape, theta), theta);
}

}  // namespace

TEST_SUITE("curves") {

TEST_CASE("implicit_eval examples") {
  CHECK(std::abs(implicit_eval(Circle{2.0}, 2.0, 0.0)) < 1e-15);
  CHECK(implicit_eval(NeumannOval{2.5, std::sqrt(5.0) / 2}, 0.0, 0.0) == 0.0);
  CHECK(std::abs(implicit_eval(CassiniOval{2.0, 1.0}, std::sqrt(5.0), 0.0)) < 1e-13);
  // Sign convention: negative inside, positive outside.
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    CHECK(implicit_eval(s, 0.5 * param_a(s), 0.0) < 0.0);
    CHECK(implicit_eval(s, 3.0 * param_a(s), 0.0) > 0.0);
  }
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(validate(Circle{0.0}), InvalidShapeError);
  CHECK_THROWS_AS(validate(Ellipse{1.0, 2.0}), InvalidShapeError);
  CHECK_THROWS_AS(validate(NeumannOval{1.0, 1.0}), InvalidShapeError);
  CHECK_THROWS_AS(validate(CassiniOval{1.0, 1.0}), InvalidShapeError);
  CHECK_THROWS_AS(validate(CassiniOval{0.9, 1.0}), InvalidShapeError);
  CHECK_NOTHROW(validate(CassiniOval{1.1, 1.0}));
  CHECK_THROWS_AS(parse_family("square"), InvalidShapeError);
  CHECK(parse_family("neumann") == Family::neumann);
}

TEST_CASE("admissibility constraints") {
  CHECK(admissible(Circle{1.0}, {0.3, 0.0}));
  CHECK_FALSE(admissible(Circle{1.0}, {0.3, 0.3}));
  CHECK(admissible(Ellipse{2.0, 1.0}, {0.5, 0.25}));
  CHECK_FALSE(admissible(Ellipse{2.0, 1.0}, {0.5, 0.5}));
  CHECK(admissible(NeumannOval{2.5, std::sqrt(5.0) / 2}, {0.4, 2.5 * 0.4 / (std::sqrt(5.0) / 2)}));
  CHECK_FALSE(admissible(NeumannOval{2.5, std::sqrt(5.0) / 2}, {0.4, 0.4}));
  CHECK(admissible(CassiniOval{2.0, 1.0}, {0.25, 0.0}));
  CHECK_FALSE(admissible(CassiniOval{2.0, 1.0}, {0.25, 0.1}));
  CHECK_THROWS_AS(require_admissible(CassiniOval{2.0, 1.0}, {0.25, 0.1}), AdmissibilityError);
}

TEST_CASE("schwarz examples") {
  CHECK(std::abs(schwarz(Circle{2.0}, 2.0) - 2.0) < 1e-15);
  CHECK(std::abs(schwarz(Ellipse{2.0, 1.0}, cplx(0.0, 1.0)) - cplx(0.0, -1.0)) < 1e-15);
  // Cassini: real x approaching the crossing at sqrt 5 from outside.
  const Shape c = CassiniOval{2.0, 1.0};
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const double x = std::sqrt(5.0) + eps;
    const cplx s = schwarz(c, x);
    CHECK(std::abs(s.imag()) < 1e-15);
    CHECK(std::abs(s.real() - x) < 2 * eps);
  }
}

TEST_CASE("schwarz singular points") {
  CHECK_THROWS_AS(schwarz(Circle{1.0}, 0.0), PoleError);
  const double d = std::sqrt(5.0);
  CHECK_THROWS_AS(schwarz(NeumannOval{2.5, d / 2}, d / 2), PoleError);
  CHECK_THROWS_AS(schwarz(NeumannOval{2.5, d / 2}, -d / 2), PoleError);
  CHECK_THROWS_AS(schwarz(Ellipse{2.0, 1.0}, 0.5), BranchCutError);
  CHECK_THROWS_AS(schwarz(NeumannOval{2.5, d / 2}, cplx(0.0, 2.0)), BranchCutError);
  CHECK_THROWS_AS(schwarz(CassiniOval{2.0, 1.0}, 0.5), BranchCutError);
  CHECK_THROWS_AS(schwarz(CassiniOval{2.0, 1.0}, cplx(0.0, -5.0)), BranchCutError);
  CHECK_NOTHROW(schwarz(CassiniOval{2.0, 1.0}, cplx(0.0, 2.0)));
}

TEST_CASE("boundary identity on 1000 random boundary points per family") {
  Rng rng(1);
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const cplx z = boundary_at(s, rng.uniform(-kPi, kPi));
      worst = std::max(worst, std::abs(schwarz(s, z) - std::conj(z)));
    }
    CAPTURE(family_name(f));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("schwarz_dz examples and finite-difference oracle") {
  CHECK(std::abs(schwarz_dz(Circle{2.0}, 2.0) + 1.0) < 1e-15);
  CHECK(std::abs(schwarz_dz(Circle{1.0}, 0.5) + 4.0) < 1e-15);
  Rng rng(2);
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    for (int i = 0; i < 100; ++i) {
      const cplx z = regular_point(s, rng);
      const double h = 1e-6;
      const cplx fd = (schwarz(s, z + h) - schwarz(s, z - h)) / (2 * h);
      CAPTURE(z);
      CHECK(rel_err(schwarz_dz(s, z), fd) < 1e-6);
    }
  }
}

TEST_CASE("schwarz_dot examples and time-difference oracle") {
  CHECK(std::abs(schwarz_dot(Circle{1.0}, {1.0, 0.0}, 2.0) - 1.0) < 1e-15);
  CHECK(std::abs(schwarz_dot(CassiniOval{2.0, 1.0}, {0.0, 0.0}, cplx(3.0, 1.0))) == 0.0);
  CHECK_THROWS_AS(schwarz_dot(Ellipse{2.0, 1.0}, {1.0, 1.0}, 3.0), AdmissibilityError);
  Rng rng(3);
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    const ShapeRates r = growth_rates(s);
    for (int i = 0; i < 100; ++i) {
      const cplx z = regular_point(s, rng);
      const double h = 1e-6;
      const cplx fd = (schwarz(advance(s, r, h), z) - schwarz(advance(s, r, -h), z)) / (2 * h);
      CAPTURE(z);
      CHECK(rel_err(schwarz_dot(s, r, z), fd) < 1e-5);
    }
  }
}

TEST_CASE("sheet-explicit evaluation reproduces the conventional branch") {
  Rng rng(4);
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    const ShapeRates r = growth_rates(s);
    for (int i = 0; i < 50; ++i) {
      const cplx z = regular_point(s, rng);
      const auto roots = conventional_roots(s, z);
      CHECK(roots.size() == branch_points(s).size());
      CHECK(std::abs(schwarz_on_sheet(s, z, roots) - schwarz(s, z)) < 1e-14 * (1 + std::abs(z)));
      CHECK(std::abs(schwarz_dot_on_sheet(s, r, z, roots) - schwarz_dot(s, r, z)) <
            1e-13 * (1 + std::abs(schwarz_dot(s, r, z))));
    }
  }
}

TEST_CASE("normal velocity examples") {
  CHECK(std::abs(normal_velocity(Circle{1.0}, {0.1, 0.0}, 1.0) - 0.1) < 1e-15);
  CHECK(std::abs(normal_velocity(Circle{1.0}, {0.1, 0.0}, cplx(0.0, 1.0)) - 0.1) < 1e-15);
  const Shape e = Ellipse{2.0, 1.0};
  const ShapeRates er{0.5, 0.25};
  CHECK(std::abs(normal_velocity(e, er, 2.0) - level_set_velocity(e, er, 2.0)) < 1e-8);
  CHECK(std::abs(normal_velocity(e, er, 2.0) - 0.5) < 1e-12);
  CHECK_THROWS_AS(normal_velocity(Circle{1.0}, {0.1, 0.0}, 1.5), NotOnBoundaryError);
}

TEST_CASE("normal velocity equals the level-set velocity, both signs") {
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    for (double sign : {1.0, -1.0}) {
      const ShapeRates r = growth_rates(s, sign);
      double worst = 0.0;
      for (const cplx& z : boundary_points(s, 200)) {
        const double vn = normal_velocity(s, r, z);
        worst = std::max(worst, std::abs(vn - level_set_velocity(s, r, z)));
        if (sign > 0) CHECK(vn > 0.0);
      }
      CAPTURE(family_name(f));
      CHECK(worst < 1e-7);
    }
  }
}

TEST_CASE("boundary_points examples") {
  const auto pts = boundary_points(Circle{1.0}, 4);
  REQUIRE(pts.size() == 4);
  const cplx want[] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(pts[i] - want[i]) < 1e-15);
  for (const cplx& z : boundary_points(NeumannOval{2.5, std::sqrt(5.0) / 2}, 300)) {
    CHECK(std::abs(implicit_eval(NeumannOval{2.5, std::sqrt(5.0) / 2}, z.real(), z.imag())) < 1e-12);
  }
  CHECK(std::abs(boundary_points(CassiniOval{2.0, 1.0}, 8)[0] - std::sqrt(5.0)) < 1e-15);
  CHECK_THROWS_AS(boundary_points(Circle{1.0}, 2), InvalidCount);
}

TEST_CASE("boundary_points are counterclockwise and on the curve for every family") {
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    const auto pts = boundary_points(s, 64);
    double turning = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(on_boundary(s, pts[i]));
      turning += std::arg(pts[(i + 1) % pts.size()] / pts[i]);
    }
    CHECK(std::abs(turning - 2 * kPi) < 1e-12);
  }
}

TEST_CASE("fluid_at, on_boundary and the outward normal") {
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    CHECK(fluid_at(s, 0.3 * param_a(s)) == 2);
    CHECK(fluid_at(s, cplx(0.0, 4.0 * param_a(s))) == 1);
    for (const cplx& z : boundary_points(s, 50)) {
      CHECK(fluid_at(s, z) == 2);
      CHECK_FALSE(on_boundary(s, z * (1.0 + 1e-6)));
      const cplx grad = implicit_gradient(s, z.real(), z.imag());
      CHECK(std::abs(outward_normal(s, z) - grad / std::abs(grad)) < 1e-12);
    }
  }
}

TEST_CASE("area examples") {
  CHECK(rel_err(area(Circle{2.0}), 4 * kPi) < 1e-15);
  CHECK(rel_err(area(Ellipse{2.0, 1.0}), 2 * kPi) < 1e-15);
  CHECK(rel_err(area(NeumannOval{2.5, std::sqrt(5.0) / 2}), 3.75 * kPi) < 1e-15);
  CHECK(std::abs(area(NeumannOval{2.5, std::sqrt(5.0) / 2}) - 11.7810) < 1e-4);
  // Cassini: d(area)/da = 2 pi a 2F1(1/2,1/2;1;b^4/a^4) = 4 a K(b^2/a^2).
  const double a = 2.0, b = 1.0, h = 1e-4;
  const double fd = (area(CassiniOval{a + h, b}) - area(CassiniOval{a - h, b})) / (2 * h);
  CHECK(rel_err(fd, 4.0 * a * boost::math::ellint_1(b * b / (a * a))) < 1e-6);
}

TEST_CASE("Green's-theorem area matches the closed forms") {
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    CHECK(rel_err(area_by_quadrature(s, 512), area(s)) < 1e-10);
  }
}

TEST_CASE("area-rate identities") {
  for (auto f : kFamilies) {
    const Shape& s = reference_shape(f);
    for (double sign : {1.0, -1.0}) {
      const ShapeRates r = growth_rates(s, sign);
      const double h = 1e-5;
      const double fd = (area(advance(s, r, h)) - area(advance(s, r, -h))) / (2 * h);
      CAPTURE(family_name(f));
      CHECK(rel_err(area_rate(s, r), fd) < 1e-6);
    }
  }
  // Closed forms written out.
  const double a = 2.5, b = std::sqrt(5.0) / 2;
  CHECK(rel_err(area_rate(NeumannOval{a, b}, {0.4, a * 0.4 / b}), kPi * 2 * a * 0.4) < 1e-14);
  CHECK(rel_err(area_rate(Ellipse{2.0, 1.0}, {0.5, 0.25}), kPi * (0.5 * 1.0 + 2.0 * 0.25)) < 1e-14);
  CHECK(rel_err(area_rate(CassiniOval{2.0, 1.0}, {0.25, 0.0}),
                kPi * 2 * 2.0 * 0.25 * 2 / kPi * boost::math::ellint_1(0.25)) < 1e-13);
}

}  // TEST_SUITE
