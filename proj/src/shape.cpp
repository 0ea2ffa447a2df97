#include "muskat/shape.hpp"

#include <cmath>
#include <string>

#include "muskat/errors.hpp"

namespace muskat {

double Ellipse::d() const { return std::sqrt(a * a - b * b); }

double NeumannOval::d() const { return std::sqrt(a * a - b * b); }

double NeumannOval::branch_height() const { return a * b / d(); }

double CassiniOval::branch_height() const {
  return std::sqrt(a * a * a * a - b * b * b * b) / b;
}

double CassiniOval::modulus() const {
  return std::sqrt(a * a * a * a - b * b * b * b) / (a * a);
}

Family family_of(const Shape& shape) { return static_cast<Family>(shape.index()); }

std::string_view family_name(Family f) {
  switch (f) {
    case Family::circle: return "circle";
    case Family::ellipse: return "ellipse";
    case Family::neumann: return "neumann";
    case Family::cassini: return "cassini";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "circle") return Family::circle;
  if (name == "ellipse") return Family::ellipse;
  if (name == "neumann") return Family::neumann;
  if (name == "cassini") return Family::cassini;
  throw InvalidShapeError("unknown family '" + std::string(name) + "'");
}

Shape make_shape(Family f, double a, double b) {
  switch (f) {
    case Family::circle: return Circle{a};
    case Family::ellipse: return Ellipse{a, b};
    case Family::neumann: return NeumannOval{a, b};
    case Family::cassini: return CassiniOval{a, b};
  }
  throw InvalidShapeError("unknown family");
}

double param_a(const Shape& shape) {
  return std::visit([](const auto& s) { return s.a; }, shape);
}

double param_b(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> double {
        if constexpr (requires { s.b; }) return s.b;
        return s.a;
      },
      shape);
}

double scale(const Shape& shape) { return param_a(shape); }

void validate(const Shape& shape) {
  const double a = param_a(shape);
  if (!std::isfinite(a) || !(a > 0.0)) {
    throw InvalidShapeError("parameter a must be positive, got " + std::to_string(a));
  }
  if (std::holds_alternative<Circle>(shape)) return;
  const double b = param_b(shape);
  if (!std::isfinite(b) || !(b > 0.0)) {
    throw InvalidShapeError("parameter b must be positive, got " + std::to_string(b));
  }
  if (!(a > b)) {
    throw InvalidShapeError(std::string(family_name(family_of(shape))) +
                            " requires a > b, got a=" + std::to_string(a) +
                            " b=" + std::to_string(b));
  }
}

double Mobility::of(int fluid) const {
  if (fluid == 1) return k1;
  if (fluid == 2) return k2;
  throw DomainError("fluid index must be 1 or 2");
}

void validate(const Mobility& mob) {
  if (!(mob.k1 > 0.0) || !(mob.k2 > 0.0) || !std::isfinite(mob.k1) || !std::isfinite(mob.k2)) {
    throw DomainError("mobilities must be positive and finite");
  }
}

namespace {

// Residual of the admissibility constraint and the magnitude it is measured against.
std::pair<double, double> constraint_residual(const Shape& shape, const ShapeRates& r) {
  const double a = param_a(shape);
  const double b = param_b(shape);
  switch (family_of(shape)) {
    case Family::circle:
      return {r.b_dot, std::abs(r.a_dot)};
    case Family::ellipse:  // a/b constant
      return {r.b_dot * a - r.a_dot * b, std::abs(r.b_dot * a) + std::abs(r.a_dot * b)};
    case Family::neumann:  // d constant
      return {a * r.a_dot - b * r.b_dot, std::abs(a * r.a_dot) + std::abs(b * r.b_dot)};
    case Family::cassini:  // b constant
      return {r.b_dot, std::abs(r.a_dot)};
  }
  return {0.0, 0.0};
}

}  // namespace

bool admissible(const Shape& shape, const ShapeRates& rates) {
  const auto [res, mag] = constraint_residual(shape, rates);
  return std::abs(res) <= 1e-9 * mag;
}

void require_admissible(const Shape& shape, const ShapeRates& rates) {
  if (!admissible(shape, rates)) {
    throw AdmissibilityError("rates (a_dot=" + std::to_string(rates.a_dot) +
                             ", b_dot=" + std::to_string(rates.b_dot) +
                             ") violate the " +
                             std::string(family_name(family_of(shape))) + " constraint");
  }
}

Shape advance(const Shape& shape, const ShapeRates& rates, double h) {
  return make_shape(family_of(shape), param_a(shape) + h * rates.a_dot,
                    param_b(shape) + h * rates.b_dot);
}

}  // namespace muskat
