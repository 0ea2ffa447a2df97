#pragma once

// Numerical integration and analytic-continuation helpers shared by the
// mother-body fluxes and the verification oracles.

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace muskat::quad {

using cplx = std::complex<double>;

/// Adaptive Gauss-Kronrod integral of a smooth real integrand on [lo, hi].
/// Throws QuadratureError if the error estimate exceeds 1e4 * rel_tol times
/// the L1 norm of the integrand (rel_tol is the target, the factor is slack).
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-13);

/// int_0^len f(s, len - s) ds for f with an inverse-square-root singularity
/// at both ends: s = len (1 - cos t) / 2.  Both distances to the ends are
/// passed so that f can keep relative accuracy near either end.
double integrate_segment(const std::function<double(double, double)>& f, double len);

/// int_0^inf f(s) ds for f with an inverse-square-root singularity at s = 0
/// and O(s^-2) decay, through s = length tan^2 t on [0, pi/2).  `length` is
/// the scale on which f varies.
double integrate_ray(const std::function<double(double)>& f, double length);

/// Composite Gauss-Legendre integral of a complex integrand over [lo, hi]
/// with nodes visited in increasing order, so f may carry state that follows
/// a branch by continuity.
cplx integrate_ordered(const std::function<cplx(double)>& f, double lo, double hi, int panels);

/// Follows the square roots sqrt(z - z_i) along a path by continuity.
class RootTracker {
 public:
  /// Starts from the given root values at the first path point.
  RootTracker(std::vector<cplx> centers, std::vector<cplx> initial_roots);

  /// Roots at z, each chosen as the sign of sqrt(z - z_i) nearest to the
  /// previous value.  Consecutive points must be close compared to their
  /// distance from the centers.
  std::span<const cplx> advance(cplx z);

  std::span<const cplx> current() const { return roots_; }

 private:
  std::vector<cplx> centers_;
  std::vector<cplx> roots_;
};

}  // namespace muskat::quad
