#include "muskat/fields.hpp"

#include <cmath>
#include <string>

#include "muskat/curves.hpp"
#include "muskat/errors.hpp"
#include "muskat/motherbody.hpp"
#include "muskat/specfun.hpp"

namespace muskat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_fluid_index(int fluid) {
  if (fluid != 1 && fluid != 2) {
    throw WrongSideError("fluid index must be 1 or 2, got " + std::to_string(fluid));
  }
}

// The complex pressure gradient is conj(Sdot) / (-2 k); the velocity is
// therefore conj(Sdot) / 2 in both fluids.
Vec2 velocity_from_sdot(cplx sdot) {
  const cplx v = std::conj(sdot) / 2.0;
  return {v.real(), v.imag()};
}

double zero_gauge_pressure(const Shape& shape, const ShapeRates& r, double k, cplx z) {
  return std::visit(
      overloaded{
          [&](const Circle& s) {
            return s.a * r.a_dot / (2.0 * k) * (2.0 * std::log(s.a) - 2.0 * std::log(std::abs(z)));
          },
          [&](const Ellipse& s) {
            const double d = s.d();
            const cplx q = std::sqrt(z - d) * std::sqrt(z + d);
            const double ab_dot = r.a_dot * s.b + s.a * r.b_dot;
            return -ab_dot / (2.0 * k) * (std::log(std::abs(z + q)) - std::log(s.a + s.b));
          },
          [&](const NeumannOval& s) {
            const double d = s.d();
            const double c = s.branch_height();
            const cplx root = d * specfun::sqrt_cut(z - cplx(0.0, c), 0.5 * kPi) *
                              specfun::sqrt_cut(z + cplx(0.0, c), 1.5 * kPi);
            const double sum = s.a * s.a + s.b * s.b;
            return s.a * r.a_dot / (2.0 * k) *
                   (std::log(std::abs(sum + 2.0 * root)) - std::log(std::abs(4.0 * z * z - d * d)));
          },
          [&](const CassiniOval& s) {
            if (r.a_dot == 0.0) return 0.0;
            const double alpha = specfun::ellip_f_sum_amplitude(z, s.a, s.b);
            return s.a * r.a_dot / (2.0 * k) * specfun::ellip_f_complement(alpha, s.modulus());
          },
      },
      shape);
}

}  // namespace

EllipticCoordinate elliptic_coordinate(double d, cplx z) {
  const double x = z.real(), y = z.imag();
  const double u = x * x - y * y - d * d;
  const double root = std::hypot(u, 2.0 * x * y);
  // Cancellation-free form of (u + root) / 2 when u < 0.
  const double alpha_sq = u >= 0.0 ? 0.5 * (u + root) : (root == 0.0 ? 0.0 : 2.0 * x * x * y * y / (root - u));
  return {alpha_sq};
}

double support_tolerance(const Shape& shape) { return 1e-12 * scale(shape); }

void require_field_point(const Shape& shape, int fluid, cplx z, bool allow_lines) {
  require_fluid_index(fluid);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw WrongSideError("evaluation point is not finite");
  }
  const double off = radial_offset(shape, z);
  const double tol = boundary_tolerance(shape);
  if ((fluid == 2 && off > tol) || (fluid == 1 && off < -tol)) {
    throw WrongSideError("point (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                         ") is not in the domain of fluid " + std::to_string(fluid));
  }
  for (const auto& [support, owner] : support_geometry(shape)) {
    if (allow_lines && (std::holds_alternative<Ray>(support) || std::holds_alternative<Segment>(support))) {
      continue;
    }
    if (distance_to_support(support, z) <= support_tolerance(shape)) {
      throw OnSupportError("point (" + std::to_string(z.real()) + ", " +
                           std::to_string(z.imag()) + ") lies on a " +
                           std::string(support_kind(support)) + " support");
    }
  }
}

double pressure(const Shape& shape, const ShapeRates& rates, const Mobility& mob, int fluid,
                cplx z) {
  validate(shape);
  validate(mob);
  require_admissible(shape, rates);
  require_field_point(shape, fluid, z, true);
  return zero_gauge_pressure(shape, rates, mob.of(fluid), z);
}

Vec2 velocity(const Shape& shape, const ShapeRates& rates, const Mobility& mob, int fluid,
              cplx z) {
  validate(shape);
  validate(mob);
  require_admissible(shape, rates);
  require_field_point(shape, fluid, z, false);
  return velocity_from_sdot(schwarz_dot_general(shape, rates, z));
}

FieldSample sample_field(const Shape& shape, const ShapeRates& rates, const Mobility& mob,
                         cplx z) {
  FieldSample out;
  out.z = z;
  out.fluid = fluid_at(shape, z);
  out.pressure = pressure(shape, rates, mob, out.fluid, z);
  out.velocity = velocity(shape, rates, mob, out.fluid, z);
  return out;
}

double pressure_circle_surface_tension(const Shape& shape, double a_dot, double gamma,
                                       const Mobility& mob, int fluid, cplx z) {
  const auto* circle = std::get_if<Circle>(&shape);
  if (circle == nullptr) {
    throw FamilyError("surface tension is only modelled for the circle, not the " +
                      std::string(family_name(family_of(shape))));
  }
  if (!(gamma >= 0.0)) throw FamilyError("surface tension must be non-negative");
  const double p = pressure(shape, ShapeRates{a_dot, 0.0}, mob, fluid, z);
  return fluid == 1 ? p + gamma / circle->a : p;
}

ShapeRates constant_area_rates(const Ellipse& shape, double a_dot) {
  return {a_dot, -shape.b * a_dot / shape.a};
}

double pressure_ellipse_constant_area(const Shape& shape, double a_dot, const Mobility& mob,
                                      int fluid, cplx z) {
  const auto* e = std::get_if<Ellipse>(&shape);
  if (e == nullptr) {
    throw FamilyError("the constant-area variant requires an ellipse, not a " +
                      std::string(family_name(family_of(shape))));
  }
  validate(shape);
  validate(mob);
  require_field_point(shape, fluid, z, true);
  const ShapeRates r = constant_area_rates(*e, a_dot);
  const double a = e->a, b = e->b;
  const double d2 = a * a - b * b;
  const double d2_dot = 2.0 * (a * r.a_dot - b * r.b_dot);
  const double inv_d2_dot = -d2_dot / (d2 * d2);
  const double sum_ratio_dot = 2.0 * (a * r.a_dot + b * r.b_dot) / d2 - (a * a + b * b) * d2_dot / (d2 * d2);
  const double d = std::sqrt(d2);
  const cplx q = std::sqrt(z - d) * std::sqrt(z + d);
  const cplx w = -0.25 * z * z * sum_ratio_dot + 0.5 * a * b * z * q * inv_d2_dot;
  return (w.real() - b * b * a * r.a_dot / d2) / mob.of(fluid);
}

Vec2 velocity_ellipse_constant_area(const Shape& shape, double a_dot, const Mobility& mob,
                                    int fluid, cplx z) {
  const auto* e = std::get_if<Ellipse>(&shape);
  if (e == nullptr) {
    throw FamilyError("the constant-area variant requires an ellipse, not a " +
                      std::string(family_name(family_of(shape))));
  }
  validate(shape);
  validate(mob);
  require_field_point(shape, fluid, z, false);
  return velocity_from_sdot(schwarz_dot_general(shape, constant_area_rates(*e, a_dot), z));
}

}  // namespace muskat
