#pragma once

#include <complex>
#include <string_view>
#include <variant>

namespace muskat {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// x^2 + y^2 = a^2
struct Circle {
  double a;
};

/// x^2/a^2 + y^2/b^2 = 1 with a > b > 0 (foci at +-d, d = sqrt(a^2 - b^2)).
struct Ellipse {
  double a;
  double b;
  double d() const;
};

/// (x^2 + y^2)^2 = a^2 x^2 + b^2 y^2 with a > b > 0.
struct NeumannOval {
  double a;
  double b;
  double d() const;
  /// Ordinate ab/d of the exterior branch points +-i ab/d.
  double branch_height() const;
};

/// (x^2 + y^2)^2 - 2 b^2 (x^2 - y^2) = a^4 - b^4 with a > b > 0.
struct CassiniOval {
  double a;
  double b;
  /// Ordinate sqrt(a^4 - b^4)/b of the exterior branch points.
  double branch_height() const;
  /// Elliptic modulus sqrt(a^4 - b^4)/a^2 of the pressure solution.
  double modulus() const;
};

using Shape = std::variant<Circle, Ellipse, NeumannOval, CassiniOval>;

enum class Family { circle, ellipse, neumann, cassini };

Family family_of(const Shape& shape);
std::string_view family_name(Family f);
/// Inverse of family_name; throws InvalidShapeError on unknown names.
Family parse_family(std::string_view name);

/// Builds a shape of the given family; b is ignored for circles.
Shape make_shape(Family f, double a, double b);

double param_a(const Shape& shape);
/// Second parameter; equals a for circles.
double param_b(const Shape& shape);

/// Characteristic length (the parameter a).
double scale(const Shape& shape);

/// Throws InvalidShapeError unless the family invariants hold.
void validate(const Shape& shape);

/// Time derivatives of the shape parameters.
struct ShapeRates {
  double a_dot = 0.0;
  double b_dot = 0.0;
};

/// Darcy mobilities k_j = h^2 / (12 nu_j) of the exterior (1) and interior (2) fluids.
struct Mobility {
  double k1 = 1.0;
  double k2 = 1.0;
  double of(int fluid) const;
};

void validate(const Mobility& mob);

/// True when the rates satisfy the family's admissibility constraint to relative 1e-9.
bool admissible(const Shape& shape, const ShapeRates& rates);
/// Throws AdmissibilityError when admissible() is false.
void require_admissible(const Shape& shape, const ShapeRates& rates);

/// Shape advanced along straight-line parameter motion: params + h * rates.
Shape advance(const Shape& shape, const ShapeRates& rates, double h);

}  // namespace muskat
