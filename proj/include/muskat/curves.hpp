#pragma once

// The four interface families: implicit equations, Schwarz functions and
// their derivatives, boundary sampling, areas and the normal velocity.
//
// Branch conventions (cuts coincide with the mother-body supports):
//   ellipse   sqrt(z^2 - d^2)      = sqrt(z - d) sqrt(z + d), cut [-d, d]
//   Neumann   sqrt(d^2 z^2 + a^2b^2) = d sqrt(z - ic) sqrt(z + ic), c = ab/d,
//             cuts {iy : |y| >= c}, positive on the real axis
//   Cassini   sqrt(b^2 z^2 + a^4 - b^4) = b sqrt(z - ie) sqrt(z + ie),
//             e = sqrt(a^4 - b^4)/b, cuts {iy : |y| >= e};
//             sqrt(z^2 - b^2) = sqrt(z - b) sqrt(z + b), cut [-b, b]

#include <span>
#include <vector>

#include "muskat/shape.hpp"

namespace muskat {

/// g(x, y): zero on the interface, negative in Omega_2 (except the isolated
/// zero of the Neumann quartic at the origin), positive outside.
double implicit_eval(const Shape& shape, double x, double y);

/// Gradient of implicit_eval packed as g_x + i g_y.
cplx implicit_gradient(const Shape& shape, double x, double y);

/// Polar radius of the interface in direction theta (all families are star-shaped about 0).
double boundary_radius(const Shape& shape, double theta);

/// |z| - r(arg z): negative inside Omega_2, positive outside, zero on the interface.
double radial_offset(const Shape& shape, cplx z);

/// Interface tolerance 1e-9 * a applied to radial_offset.
double boundary_tolerance(const Shape& shape);
bool on_boundary(const Shape& shape, cplx z);

/// 2 inside Omega_2, 1 outside; points on the interface report 2.
int fluid_at(const Shape& shape, cplx z);

/// Outward unit normal at a point of the interface.
cplx outward_normal(const Shape& shape, cplx z);

// Schwarz function and derivatives on the conventional branch.  Throw
// PoleError at poles and BranchCutError on (or within 1e-14 a of) a cut.
cplx schwarz(const Shape& shape, cplx z);
cplx schwarz_dz(const Shape& shape, cplx z);
/// dS/dt at fixed z; requires admissible rates.
cplx schwarz_dot(const Shape& shape, const ShapeRates& rates, cplx z);
/// dS/dt for arbitrary parameter motion (no admissibility check).
cplx schwarz_dot_general(const Shape& shape, const ShapeRates& rates, cplx z);

/// Throws BranchCutError / PoleError if z is a singular point of S.
void require_regular(const Shape& shape, cplx z);

// --- Sheet-explicit evaluation -------------------------------------------
//
// Every Schwarz function here is rational in z and in square roots of the
// linear factors (z - z_i).  branch_points() lists the z_i; the functions
// below take one chosen root per factor so that callers can follow a branch
// by analytic continuation instead of using the conventional cuts.

std::vector<cplx> branch_points(const Shape& shape);
/// The conventional roots sqrt(z - z_i) matching the cuts above.
std::vector<cplx> conventional_roots(const Shape& shape, cplx z);

cplx schwarz_on_sheet(const Shape& shape, cplx z, std::span<const cplx> roots);
cplx schwarz_dz_on_sheet(const Shape& shape, cplx z, std::span<const cplx> roots);
cplx schwarz_dot_on_sheet(const Shape& shape, const ShapeRates& rates, cplx z,
                          std::span<const cplx> roots);

/// Normal velocity -i Sdot / sqrt(4 S_z) of the interface at z, positive when
/// Omega_2 expands.  Throws NotOnBoundaryError if z is not on the interface.
double normal_velocity(const Shape& shape, const ShapeRates& rates, cplx z);

/// n >= 3 interface points, counterclockwise, starting at theta = 0.
std::vector<cplx> boundary_points(const Shape& shape, int n);

/// Area of Omega_2.  Cassini by spectrally convergent Green's-theorem
/// quadrature of r(theta)^2 / 2.
double area(const Shape& shape);

/// Green's-theorem area (1/2) \oint (x dy - y dx) by the periodic trapezoidal
/// rule on n uniformly spaced polar samples, for every family.
double area_by_quadrature(const Shape& shape, int n);

/// Closed-form dA/dt under admissible rates.
double area_rate(const Shape& shape, const ShapeRates& rates);

}  // namespace muskat
