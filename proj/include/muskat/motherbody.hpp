#pragma once

// Two-phase mother body: the sink/source distributions with disjoint supports
// in the two fluids that keep the interface inside its family.

#include <array>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "muskat/shape.hpp"

namespace muskat {

struct PointSink {
  cplx z;
};
struct Ray {
  cplx origin;
  double direction;  // radians, (-pi, pi]
};
struct Segment {
  cplx z1;
  cplx z2;
};
struct PointAtInfinity {};

using CutSupport = std::variant<PointSink, Ray, Segment, PointAtInfinity>;

std::string_view support_kind(const CutSupport& support);

/// Closed-form density laws along the supports.
enum class DensityLaw {
  point,                  // concentrated strength, no line density
  far_field,              // sink/source at infinity
  ellipse_segment,        // (2ab / d^2 k2) d/dt sqrt(d^2 - x^2)
  neumann_ray,            // |d/dt(a^2 b^2) y| / (k1 (4y^2 + d^2) sqrt(y^2 d^2 - a^2 b^2))
  cassini_segment,        // 2a^3 a_dot / (k2 sqrt(b^2x^2 + a^4 - b^4) sqrt(b^2 - x^2))
  cassini_ray,            // 2a^3 a_dot / (k1 sqrt(b^2y^2 - a^4 + b^4) sqrt(y^2 + b^2))
  constant_area_segment,  // (ab d/dt(d^2) / k2 d^4) (2x^2 - d^2) / sqrt(d^2 - x^2), signed
};

/// Everything needed to evaluate a density along its support.
struct DensityDescriptor {
  DensityLaw law = DensityLaw::point;
  Shape shape = Circle{1.0};
  ShapeRates rates;
  double mobility = 1.0;
  /// Multiplier applied to the closed-form law (1 except in sensitivity tests).
  double scale = 1.0;
};

struct WeightedSupport {
  CutSupport support;
  int fluid = 2;
  DensityDescriptor density;
  /// Positive for a source (fluid injected into its domain), negative for a sink.
  double signed_flux = 0.0;
};

struct MotherBody {
  std::vector<WeightedSupport> parts;
  /// True when Omega_2 grows (interior sources, exterior sinks).
  bool growing = true;
};

/// Normalises an angle into (-pi, pi].
double normalize_angle(double phi);

/// Cut direction at a moving square-root singularity z_a of
/// S = Phi(z) sqrt(z - z_a) + Psi(z):  pi - 2 (arg Phi(z_a) + arg z_a_dot).
/// Throws StationaryPointError if za_dot == 0.
double cut_direction_moving(cplx phi_at_za, cplx za_dot);

/// The three admissible directions at a stationary square-root singularity
/// whose coefficient Phi(z_a) = R0 e^{i theta0} moves with rates R0_dot, theta0_dot:
/// (2/3)(pi k - theta0 + nu0), k = 0, 1, 2.  Throws DegenerateError if both rates vanish.
std::array<double, 3> cut_directions_stationary_sqrt(double r0, double theta0, double r0_dot,
                                                     double theta0_dot);

/// Cut direction at a stationary inverse-square-root singularity
/// S = Phi(z) / sqrt(z - z0):  pi - 2 arg(d/dt Phi(z0)).
double cut_direction_stationary_inverse_sqrt(cplx c0_dot);

/// A singular point of the complex potentials with the data the direction
/// formulas need.
struct Singularity {
  enum class Kind { moving_sqrt, stationary_inverse_sqrt, pole };
  Kind kind;
  cplx z;
  int fluid;
  cplx z_dot = 0.0;   // moving_sqrt
  cplx phi = 0.0;     // moving_sqrt: Phi(z_a); stationary: c0 = Phi(z0)
  cplx phi_dot = 0.0; // stationary_inverse_sqrt: d/dt Phi(z0)
};

/// Finite singular points of W_1, W_2 for the family.
std::vector<Singularity> singularity_inventory(const Shape& shape, const ShapeRates& rates);

/// Predicted cut direction at a singularity (moving or stationary inverse-sqrt).
double predicted_cut_direction(const Singularity& s);

/// Supports of the family's mother body with their fluid index, from the
/// geometry alone (no densities or fluxes).  Rays point along the imaginary axis.
std::vector<std::pair<CutSupport, int>> support_geometry(const Shape& shape);

/// Complete mother body for admissible rates.
MotherBody build_mother_body(const Shape& shape, const ShapeRates& rates, const Mobility& mob);

/// Interior distribution of the constant-area ellipse solution (linear far
/// field); a_dot drives b_dot = -b a_dot / a.  Not a mother body in the
/// logarithmic-growth sense: there is no part at infinity.
MotherBody build_constant_area_body(const Ellipse& shape, double a_dot, const Mobility& mob);

/// Length of a Segment, infinity for a Ray, zero for points.
double support_length(const CutSupport& support);
/// Point at arclength s from the start of a Ray or Segment.
cplx support_point(const CutSupport& support, double s);

/// Nonnegative density magnitude at arclength s (strictly interior).
/// Throws EndpointError at or beyond the ends.
double density_at(const WeightedSupport& part, double s);

/// Signed density of the constant-area law (magnitude for the other laws).
double signed_density_at(const WeightedSupport& part, double s);

/// Flux k_j int mu_j over the support (signed integral for the
/// constant-area law); strengths of point parts from the residue of Sdot,
/// the part at infinity from the far-field coefficient.
double flux(const WeightedSupport& part);

/// Max over the two fluids of |sum of signed fluxes -/+ dA/dt|.
double flux_balance(const MotherBody& mb, const Shape& shape, const ShapeRates& rates);

/// Distance from z to the support (0 for PointAtInfinity is never reached).
double distance_to_support(const CutSupport& support, cplx z);

/// Supports pairwise disjoint and each strictly inside its fluid domain,
/// sampled at `samples` points per line support.
bool supports_well_placed(const MotherBody& mb, const Shape& shape, int samples = 200);

/// Directions in which each line support leaves its singular endpoint(s):
/// (endpoint, angle) pairs.
std::vector<std::pair<cplx, double>> emanation_angles(const CutSupport& support);

}  // namespace muskat
