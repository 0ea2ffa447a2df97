#pragma once

// Special functions used by the ellipse and Cassini solutions.

#include <complex>

namespace muskat::specfun {

using cplx = std::complex<double>;

/// Square root whose branch cut is the ray {t e^{i direction} : t >= 0}.
/// `direction` is taken modulo 2 pi; for directions other than 0 the
/// result is positive on the positive real axis.
cplx sqrt_cut(cplx w, double direction);

/// Arithmetic-geometric mean of two positive numbers.
double agm(double x, double y);

/// Complete elliptic integral of the first kind K(k) via the AGM, 0 <= k < 1.
double ellip_k(double k);

/// Carlson's symmetric integral
///   R_F(x,y,z) = 1/2 int_0^inf dt / sqrt((t+x)(t+y)(t+z))
/// by the duplication algorithm, for arguments off the closed negative real
/// axis with at most one of them zero.  Throws DomainError otherwise.
cplx carlson_rf(cplx x, cplx y, cplx z);

/// Incomplete elliptic integral of the first kind
///   F(phi, k) = int_0^phi dt / sqrt(1 - k^2 sin^2 t)
/// continued to complex amplitude.  Re(phi) is reduced into (-pi/2, pi/2]
/// with F(phi + pi) = F(phi) + 2K(k).  Throws ModulusError unless
/// 0 <= k < 1 and ReductionError when phi lies on a branch cut of the
/// reduced strip.
cplx ellip_f(cplx phi, double k);

/// Combined amplitude for the Cassini pressure: the real alpha in [0, pi]
/// with F(alpha, k) = F(xi, k) + F(conj(xi), k), xi = arccos(b/z),
/// k = sqrt(a^4 - b^4)/a^2, evaluated from z and conj(z) directly.
///
/// sin(alpha) is the rational z, conj(z) expression of the addition theorem;
/// cos(alpha) is obtained from the exact factorisation
///   1 - sin^2(alpha) = b^4 g^2 / H,   g = Cassini implicit function,
/// with sign -sign(g), so alpha < pi/2 inside the oval and alpha > pi/2
/// outside.  This is the continuation of alpha from the interface where
/// alpha = pi/2.  Throws BranchError when sin(alpha) < 0, which would require
/// leaving the strip [0, pi].
double ellip_f_sum_amplitude(cplx z, double a, double b);

/// K(k) - F(alpha, k) for real alpha in [0, pi], evaluated through the
/// complementary amplitude so that it keeps full accuracy near alpha = pi/2.
double ellip_f_complement(double alpha, double k);

/// Gauss hypergeometric 2F1(1/2, 1/2; 1; x) for 0 <= x < 1.
/// Power series for x <= 0.5, (2/pi) K(sqrt(x)) through the AGM otherwise.
double hyp2f1_half(double x);

/// The two evaluation paths of hyp2f1_half, exposed for cross-checking.
double hyp2f1_half_series(double x);
double hyp2f1_half_agm(double x);

}  // namespace muskat::specfun
