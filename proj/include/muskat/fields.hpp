#pragma once

// Pressures and velocities of both fluids, gauged so that p_j = 0 on the
// interface.  The velocity is -k_j grad p_j, taken from the complex
// derivative of the pressure potential.

#include "muskat/shape.hpp"

namespace muskat {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct FieldSample {
  cplx z;
  int fluid = 2;
  double pressure = 0.0;
  Vec2 velocity;
};

/// Squared elliptic coordinate of z about foci +-d:
/// alpha^2 = (x^2 - y^2 - d^2 + sqrt((x^2 - y^2 - d^2)^2 + 4x^2y^2)) / 2.
struct EllipticCoordinate {
  double alpha_sq = 0.0;
};
EllipticCoordinate elliptic_coordinate(double d, cplx z);

/// Pressure p_j(z).  z must lie in the closure of fluid j's domain (within
/// the interface tolerance).  The pressure is continuous across segments and
/// rays, so only point supports (logarithmic singularities) are rejected.
/// Throws WrongSideError, OnSupportError, AdmissibilityError.
double pressure(const Shape& shape, const ShapeRates& rates, const Mobility& mob, int fluid,
                cplx z);

/// -k_j grad p_j at z.  The gradient jumps across line supports, so every
/// support point is rejected with OnSupportError.
Vec2 velocity(const Shape& shape, const ShapeRates& rates, const Mobility& mob, int fluid,
              cplx z);

/// Pressure and velocity of the fluid occupying z.
FieldSample sample_field(const Shape& shape, const ShapeRates& rates, const Mobility& mob,
                         cplx z);

/// Circle with surface tension gamma: p_2 unchanged, p_1 raised by gamma / a so
/// that p_1 - p_2 = gamma * curvature on the interface.  Throws FamilyError for
/// non-circular shapes.
double pressure_circle_surface_tension(const Shape& shape, double a_dot, double gamma,
                                       const Mobility& mob, int fluid, cplx z);

/// Rates of the constant-area ellipse motion: b_dot = -b a_dot / a.
ShapeRates constant_area_rates(const Ellipse& shape, double a_dot);

/// Ellipse whose area ab is held fixed while a changes at a_dot, driven by a
/// linear far-field flow.  Both pressures vanish on the interface.  Throws
/// FamilyError for non-elliptic shapes.
double pressure_ellipse_constant_area(const Shape& shape, double a_dot, const Mobility& mob,
                                      int fluid, cplx z);
Vec2 velocity_ellipse_constant_area(const Shape& shape, double a_dot, const Mobility& mob,
                                    int fluid, cplx z);

/// Distance below which a point counts as lying on a support (1e-12 * scale).
double support_tolerance(const Shape& shape);

/// Throws WrongSideError / OnSupportError when z is not a valid evaluation
/// point for fluid j.  Line supports are accepted when allow_lines is set.
void require_field_point(const Shape& shape, int fluid, cplx z, bool allow_lines);

}  // namespace muskat
