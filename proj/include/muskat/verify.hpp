#pragma once

// Independent numerical checks of the closed-form solutions.  Every oracle
// here works from a different representation than the formula under test:
// finite differences of the pressures, analytic continuation of the complex
// potential along paths, angular scans and quadrature.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "muskat/motherbody.hpp"
#include "muskat/shape.hpp"

namespace muskat {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  int samples = 0;
  std::string detail;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Pressure scale |dA/dt| / (2 pi k_j) used to make tolerances relative.
double pressure_scale(const Shape& shape, const ShapeRates& rates, const Mobility& mob, int fluid);

// --- harmonicity ---------------------------------------------------------

struct HarmonicityResult {
  std::vector<double> steps;
  std::vector<double> residuals;  // max |five-point Laplacian| per step
  double order = 0.0;             // smallest observed order between successive steps
  int centers = 0;
};

/// Five-point Laplacian of an arbitrary field at the given centres, for each
/// step in `steps` (decreasing), with the observed convergence order.
HarmonicityResult check_harmonicity(const std::function<double(cplx)>& field,
                                    const std::vector<cplx>& centers,
                                    const std::vector<double>& steps);

/// Same for the pressure of fluid j.  Throws RegionError if a stencil centre
/// lies within 0.1 scale of a support or of the interface, or in the other fluid.
HarmonicityResult check_harmonicity(const Shape& shape, const ShapeRates& rates,
                                    const Mobility& mob, int fluid,
                                    const std::vector<cplx>& centers,
                                    const std::vector<double>& steps);

/// nx * ny rectangular grid of centres (corners included).
std::vector<cplx> rect_region(double x0, double x1, double y0, double y1, int nx, int ny);
/// nr * nt polar grid of centres on r0 <= |z| <= r1.
std::vector<cplx> annulus_region(double r0, double r1, int nr, int nt);
/// Points of a square grid over [-3 scale, 3 scale]^2 that lie in fluid j at
/// least `tube` away from the interface and from every support.
std::vector<cplx> default_region(const Shape& shape, int fluid, int n, double tube);

// --- interface conditions -------------------------------------------------

struct InterfaceResult {
  double continuity = 0.0;  // max |p1 - p2|
  double kinematic = 0.0;   // max over fluids of |-k_j dp_j/dn - v_n|
  double vn_max = 0.0;
  int samples = 0;
};

/// At n interface points: continuity of the pressure and the kinematic
/// condition, with normal derivatives from one-sided fourth-order differences
/// (step 1e-3 scale) along the outward normal.
InterfaceResult check_interface_conditions(const Shape& shape, const ShapeRates& rates,
                                           const Mobility& mob, int n = 500);

/// The same for the constant-area ellipse variant.
InterfaceResult check_interface_conditions_constant_area(const Ellipse& shape, double a_dot,
                                                         const Mobility& mob, int n = 500);

/// One-sided fourth-order derivative (-25 f0 + 48 f1 - 36 f2 + 16 f3 - 3 f4) / (12 h)
/// of f(z + t u) at t = 0+ along the unit direction u.
double one_sided_derivative(const std::function<double(cplx)>& f, cplx z, cplx u, double h);

// --- cut variation and directions -------------------------------------------

/// var_l p_j at z: real part of the difference between the two continuations
/// of W_j (dW_j/dz = -Sdot / 2k_j) from the branch point z_a to z along the
/// straight segment.  The two sheets differ in the sign of the root that
/// vanishes at z_a; the other roots are followed by continuity.
double cut_variation_at(const Shape& shape, const ShapeRates& rates, double mobility, cplx z_a,
                        cplx z, int panels = 8);

/// max |var_l p_j| at `stations` points along a ray or segment support,
/// continued from the support's branch-point end.  Zero for point parts.
double check_cut_variation(const Shape& shape, const ShapeRates& rates, const Mobility& mob,
                           const WeightedSupport& part, int stations = 50);

struct DirectionResult {
  cplx z;
  double predicted = 0.0;
  double scanned = 0.0;
  double error = 0.0;  // |normalize(scanned - predicted)|
};

/// For every moving square-root and stationary inverse-square-root singular
/// point: minimiser of |var_l p| over a 128-direction scan on the circle of
/// radius 1e-3 scale (refined by golden section) against the predicted cut
/// direction.  Empty for static shapes and for circles.
std::vector<DirectionResult> check_direction_formula(const Shape& shape, const ShapeRates& rates,
                                                     const Mobility& mob, int directions = 128);

// --- densities, loops, far field ---------------------------------------------

/// max relative difference between density_at and the jump of the normal
/// derivative of p_j across the support, at `stations` interior points.
double check_density_jump(const Shape& shape, const ShapeRates& rates, const Mobility& mob,
                          const WeightedSupport& part, int stations = 20);

/// Same for the signed constant-area density.
double check_density_jump_constant_area(const Ellipse& shape, double a_dot, const Mobility& mob,
                                        int stations = 20);

/// |Re \oint dW_j| over closed loops in fluid j that avoid the supports,
/// continued numerically; loops are drawn from the seed.
struct LoopResult {
  double residual = 0.0;
  int loops = 0;
};
LoopResult check_single_valuedness(const Shape& shape, const ShapeRates& rates,
                                   const Mobility& mob, std::uint64_t seed, int loops = 8);

/// Asymptotic fit of p_1(z) + (Q_inf / 2 pi k_1) ln|z| as c + e / |z| along
/// several directions avoiding the rays, |z| from 1e4 to 1e6 scale: the larger
/// of the worst fit residual and the spread of the fitted limits c.
double check_far_field(const Shape& shape, const ShapeRates& rates, const Mobility& mob);

// --- full suite ---------------------------------------------------------------

struct VerifyOptions {
  std::vector<std::string> checks;  // empty means all
  std::uint64_t seed = 0;
  /// Multiplier applied to the mother-body densities before the density
  /// check (1 except in sensitivity tests).
  double density_scale = 1.0;
  bool constant_area = false;  // ellipse constant-area variant
};

/// Names accepted in VerifyOptions::checks.
const std::vector<std::string>& verification_check_names();

/// Runs the selected checks.  Throws DomainError for unknown check names.
VerificationReport run_verification(const Shape& shape, const ShapeRates& rates,
                                    const Mobility& mob, const VerifyOptions& options);

}  // namespace muskat
