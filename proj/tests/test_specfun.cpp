#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_rf.hpp>

#include "muskat/curves.hpp"
#include "muskat/errors.hpp"
#include "muskat/specfun.hpp"
#include "support.hpp"

using namespace muskat;
using namespace muskat::specfun;
using testing_support::rel_err;
using testing_support::Rng;

namespace {
// K(1/sqrt 2) = Gamma(1/4)^2 / (4 sqrt(pi)).
const double kLemniscateK = std::pow(std::tgamma(0.25), 2) / (4.0 * std::sqrt(kPi));
}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("sqrt_cut places the cut on the requested ray") {
  CHECK(std::abs(sqrt_cut(4.0, kPi / 2) - 2.0) < 1e-15);
  CHECK(std::abs(sqrt_cut(4.0, 3 * kPi / 2) - 2.0) < 1e-15);
  // Principal cut for direction pi.
  CHECK(std::abs(sqrt_cut(cplx(-1.0, 1e-3), kPi) - std::sqrt(cplx(-1.0, 1e-3))) < 1e-15);
  // Continuous across the negative real axis when the cut points up.
  const cplx above = sqrt_cut(cplx(-1.0, 1e-12), kPi / 2);
  const cplx below = sqrt_cut(cplx(-1.0, -1e-12), kPi / 2);
  CHECK(std::abs(above - below) < 1e-9);
  // Jumps across the upward ray.
  const cplx left = sqrt_cut(cplx(-1e-12, 1.0), kPi / 2);
  const cplx right = sqrt_cut(cplx(1e-12, 1.0), kPi / 2);
  CHECK(std::abs(left + right) < 1e-9);
  // Always a square root.
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const cplx w(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const double dir = rng.uniform(-4, 4);
    CHECK(std::abs(sqrt_cut(w, dir) * sqrt_cut(w, dir) - w) < 1e-14 * (1 + std::abs(w)));
  }
}

TEST_CASE("agm and complete K against an independent integral") {
  CHECK(std::abs(agm(1.0, 1.0) - 1.0) < 1e-16);
  CHECK(rel_err(ellip_k(1.0 / std::sqrt(2.0)), kLemniscateK) < 1e-14);
  for (int i = 1; i <= 50; ++i) {
    const double k = 0.98 * i / 50.0;
    CHECK(rel_err(ellip_k(k), boost::math::ellint_1(k)) < 1e-13);
  }
}

TEST_CASE("carlson_rf examples") {
  CHECK(std::abs(carlson_rf(1.0, 1.0, 1.0) - 1.0) < 1e-15);
  CHECK(rel_err(carlson_rf(0.0, 0.5, 1.0).real(), kLemniscateK) < 1e-12);
  // R_F(0, 1 - k^2, 1) = K(k).
  CHECK(rel_err(carlson_rf(0.0, 0.5, 1.0), 1.8540746773013719) < 1e-12);
  // R_F(x, x, x) = x^-1/2 for complex x.
  const cplx x(2.0, 1.0);
  CHECK(rel_err(carlson_rf(x, x, x), 1.0 / std::sqrt(x)) < 1e-14);
}

TEST_CASE("carlson_rf symmetry and real-argument oracle") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const cplx x(rng.uniform(0.01, 3), rng.uniform(-2, 2));
    const cplx y(rng.uniform(0.01, 3), rng.uniform(-2, 2));
    const cplx z(rng.uniform(0.01, 3), rng.uniform(-2, 2));
    const cplx v = carlson_rf(x, y, z);
    CHECK(std::abs(v - carlson_rf(z, x, y)) <= 1e-14 * std::abs(v) * 10);
    CHECK(std::abs(v - carlson_rf(y, z, x)) <= 1e-14 * std::abs(v) * 10);
    const double xr = rng.uniform(0, 4), yr = rng.uniform(0.1, 4), zr = rng.uniform(0.1, 4);
    CHECK(rel_err(carlson_rf(xr, yr, zr).real(), boost::math::ellint_rf(xr, yr, zr)) < 1e-13);
  }
}

TEST_CASE("carlson_rf domain errors") {
  CHECK_THROWS_AS(carlson_rf(0.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(carlson_rf(-1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("ellip_f examples") {
  CHECK(std::abs(ellip_f(0.0, 0.7)) == 0.0);
  CHECK(std::abs(ellip_f(0.3, 0.0) - 0.3) < 1e-15);
  CHECK(std::abs(ellip_f(cplx(0.3, 0.2), 0.0) - cplx(0.3, 0.2)) < 1e-15);
  CHECK(rel_err(ellip_f(kPi / 2, 1.0 / std::sqrt(2.0)).real(), 1.8540746773013719) < 1e-12);
}

TEST_CASE("ellip_f matches the real Legendre form and its quasi-periodicity") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const double k = rng.uniform(0, 0.99);
    const double phi = rng.uniform(-1.5, 1.5);
    CHECK(rel_err(ellip_f(phi, k).real(), boost::math::ellint_1(k, phi)) < 1e-12);
    const cplx shifted = ellip_f(phi + kPi, k);
    CHECK(std::abs(shifted - ellip_f(phi, k) - 2.0 * ellip_k(k)) < 1e-12);
  }
}

TEST_CASE("ellip_f agrees with the complete integral for 50 moduli") {
  for (int i = 0; i < 50; ++i) {
    const double k = 0.01 + 0.97 * i / 49.0;
    CHECK(rel_err(ellip_f(kPi / 2, k).real(), ellip_k(k)) < 1e-12);
  }
}

TEST_CASE("ellip_f conjugation symmetry") {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const cplx phi(rng.uniform(-1.4, 1.4), rng.uniform(-1.5, 1.5));
    const double k = rng.uniform(0, 0.95);
    CHECK(std::abs(std::conj(ellip_f(phi, k)) - ellip_f(std::conj(phi), k)) < 1e-13);
  }
}

TEST_CASE("ellip_f errors") {
  CHECK_THROWS_AS(ellip_f(0.5, 1.0), ModulusError);
  CHECK_THROWS_AS(ellip_f(0.5, -0.1), ModulusError);
}

TEST_CASE("ellip_f_sum_amplitude is pi/2 on the Cassini interface") {
  const CassiniOval c{2.0, 1.0};
  for (const cplx& z : boundary_points(Shape{c}, 200)) {
    const double alpha = ellip_f_sum_amplitude(z, c.a, c.b);
    CHECK(std::abs(std::sin(alpha) - 1.0) < 1e-9);
  }
}

TEST_CASE("ellip_f_sum_amplitude satisfies the addition theorem") {
  // alpha is compared against F(xi) + F(conj xi) with xi = arccos(b / z),
  // evaluated on the principal strip through ellip_f.
  const CassiniOval c{2.0, 1.0};
  const double k = c.modulus();
  Rng rng(29);
  int checked = 0;
  while (checked < 200) {
    const cplx z(rng.uniform(0.2, 4.0), rng.uniform(-1.5, 1.5));
    if (std::abs(z.imag()) < 1e-3) continue;
    const cplx xi = std::acos(c.b / z);
    const double alpha = ellip_f_sum_amplitude(z, c.a, c.b);
    const cplx sum = ellip_f(xi, k) + ellip_f(std::conj(xi), k);
    CHECK(std::abs(ellip_f(alpha, k) - sum) < 1e-9);
    ++checked;
  }
}

TEST_CASE("ellip_f_sum_amplitude is inside the strip on both sides of the interface") {
  const CassiniOval c{2.0, 1.0};
  // On the real axis beyond the crossing at sqrt(5), alpha exceeds pi/2.
  const double outside = ellip_f_sum_amplitude(cplx(3.0, 0.0), c.a, c.b);
  CHECK(outside > kPi / 2);
  CHECK(outside <= kPi);
  const double inside = ellip_f_sum_amplitude(cplx(1.5, 0.0), c.a, c.b);
  CHECK(inside < kPi / 2);
  CHECK(inside >= 0.0);
}

TEST_CASE("ellip_f_complement keeps accuracy near pi/2") {
  const double k = 0.8;
  for (double alpha : {0.1, 1.0, kPi / 2 - 1e-7, kPi / 2 + 1e-7, 2.5}) {
    const double want = ellip_k(k) - ellip_f(alpha, k).real();
    CHECK(std::abs(ellip_f_complement(alpha, k) - want) < 1e-13);
  }
  CHECK(std::abs(ellip_f_complement(kPi / 2, k)) < 1e-15);
  // Antisymmetric about pi/2.
  CHECK(std::abs(ellip_f_complement(kPi / 2 + 0.3, k) + ellip_f_complement(kPi / 2 - 0.3, k)) <
        1e-14);
}

TEST_CASE("hyp2f1_half examples") {
  CHECK(hyp2f1_half(0.0) == 1.0);
  const double want = 2.0 / kPi * kLemniscateK;  // 1.18034...
  CHECK(rel_err(hyp2f1_half(0.5), want) < 1e-12);
  CHECK(std::abs(hyp2f1_half(0.5) - 1.18034) < 1e-5);
  CHECK(rel_err(hyp2f1_half_series(0.0625), hyp2f1_half_agm(0.0625)) < 1e-12);
}

TEST_CASE("hyp2f1_half dual paths agree on the overlap") {
  for (int i = 0; i <= 40; ++i) {
    const double x = 0.3 + 0.4 * i / 40.0;
    CHECK(rel_err(hyp2f1_half_series(x), hyp2f1_half_agm(x)) < 1e-12);
  }
}

TEST_CASE("hyp2f1_half is strictly increasing") {
  double prev = hyp2f1_half(0.0);
  for (int i = 1; i <= 99; ++i) {
    const double v = hyp2f1_half(0.01 * i);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("hyp2f1_half domain") {
  CHECK_THROWS_AS(hyp2f1_half(-0.1), DomainError);
  CHECK_THROWS_AS(hyp2f1_half(1.0), DomainError);
}

}  // TEST_SUITE
