#include "muskat/motherbody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "muskat/curves.hpp"
#include "muskat/errors.hpp"
#include "muskat/quadrature.hpp"

namespace muskat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

WeightedSupport make_part(CutSupport support, int fluid, DensityLaw law, const Shape& shape,
                          const ShapeRates& rates, const Mobility& mob) {
  WeightedSupport part;
  part.support = support;
  part.fluid = fluid;
  part.density = DensityDescriptor{law, shape, rates, mob.of(fluid), 1.0};
  return part;
}

// Ray direction from the moving-singularity formula, checked against the
// family's symmetry axis.
double ray_direction(const Singularity& s, double expected) {
  if (s.z_dot == 0.0) return expected;
  const double phi = predicted_cut_direction(s);
  if (std::abs(normalize_angle(phi - expected)) > 1e-9) {
    throw DegenerateError("cut direction " + std::to_string(phi) +
                          " departs from the symmetry axis " + std::to_string(expected));
  }
  return expected;
}

// Strength of a point source: (1/2i) \oint Sdot dz on a small circle.
double residue_strength(const Shape& shape, const ShapeRates& rates, cplx center, double radius) {
  constexpr int n = 128;
  cplx sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const cplx w = std::polar(radius, 2.0 * kPi * i / n);
    sum += schwarz_dot_general(shape, rates, center + w) * cplx(0.0, 1.0) * w;
  }
  sum *= 2.0 * kPi / n;
  return (sum / cplx(0.0, 2.0)).real();
}

// Far-field sink strength: pi lim_{z->inf} z Sdot(z), taken from the leading
// asymptotic coefficient of each family.
double far_field_strength(const Shape& shape, const ShapeRates& r) {
  return std::visit(
      overloaded{
          [&](const Circle& s) { return 2.0 * kPi * s.a * r.a_dot; },
          [&](const Ellipse& s) {
            const double d2 = s.a * s.a - s.b * s.b;
            const double d2_dot = 2.0 * (s.a * r.a_dot - s.b * r.b_dot);
            return kPi * s.a * s.b * d2_dot / d2;
          },
          [&](const NeumannOval& s) { return 0.5 * kPi * (s.a * r.a_dot + s.b * r.b_dot); },
          [&](const CassiniOval&) { return 0.0; },
      },
      shape);
}

// Densities are evaluated from the arclength s so that the factor vanishing at
// the branch-point end, h^2 - x^2 or y^2 - y0^2, keeps full relative accuracy.
double law_density(const DensityDescriptor& dd, const CutSupport& support, double s,
                   double rest) {
  const double a = param_a(dd.shape), b = param_b(dd.shape);
  const double ad = dd.rates.a_dot, bd = dd.rates.b_dot;
  const double k = dd.mobility;
  const double a2 = a * a, b2 = b * b;
  const cplx z = support_point(support, s);
  double edge = 0.0;  // h^2 - x^2 on a centred segment, y^2 - y0^2 on a ray
  if (const auto* g = std::get_if<Segment>(&support)) {
    edge = s * (rest >= 0.0 ? rest : std::abs(g->z2 - g->z1) - s);
  } else if (const auto* r = std::get_if<Ray>(&support)) {
    edge = s * (2.0 * std::abs(r->origin) + s);
  }
  double mu = 0.0;
  switch (dd.law) {
    case DensityLaw::point:
    case DensityLaw::far_field:
      throw DomainError("point supports have no line density");
    case DensityLaw::ellipse_segment: {
      const double d2 = a2 - b2;
      const double d2_dot = 2.0 * (a * ad - b * bd);
      mu = std::abs(a * b * d2_dot / (d2 * k * std::sqrt(edge)));
      break;
    }
    case DensityLaw::neumann_ray: {
      const double y = std::abs(z.imag());
      const double d2 = a2 - b2;
      const double ab2_dot = 2.0 * a * b * (ad * b + a * bd);
      mu = std::abs(ab2_dot * y / ((4.0 * y * y + d2) * std::sqrt(d2 * edge))) / k;
      break;
    }
    case DensityLaw::cassini_segment: {
      const double x = z.real();
      mu = std::abs(2.0 * a2 * a * ad /
                    (k * std::sqrt(b2 * x * x + a2 * a2 - b2 * b2) * std::sqrt(edge)));
      break;
    }
    case DensityLaw::cassini_ray: {
      const double y = std::abs(z.imag());
      mu = std::abs(2.0 * a2 * a * ad / (k * std::sqrt(b2 * edge) * std::sqrt(y * y + b2)));
      break;
    }
    case DensityLaw::constant_area_segment: {
      const double x = z.real();
      const double d2 = a2 - b2;
      const double d2_dot = 2.0 * (a * ad - b * bd);
      mu = a * b * d2_dot / (k * d2 * d2) * (2.0 * x * x - d2) / std::sqrt(edge);
      break;
    }
  }
  return dd.scale * mu;
}

}  // namespace

std::string_view support_kind(const CutSupport& support) {
  return std::visit(overloaded{
                        [](const PointSink&) { return std::string_view("point"); },
                        [](const Ray&) { return std::string_view("ray"); },
                        [](const Segment&) { return std::string_view("segment"); },
                        [](const PointAtInfinity&) { return std::string_view("infinity"); },
                    },
                    support);
}

double normalize_angle(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double cut_direction_moving(cplx phi_at_za, cplx za_dot) {
  if (za_dot == 0.0) {
    throw StationaryPointError("singularity is stationary; use a stationary variant");
  }
  if (phi_at_za == 0.0) throw DegenerateError("Phi vanishes at the singular point");
  return normalize_angle(kPi - 2.0 * (std::arg(phi_at_za) + std::arg(za_dot)));
}

std::array<double, 3> cut_directions_stationary_sqrt(double r0, double theta0, double r0_dot,
                                                     double theta0_dot) {
  if (r0_dot == 0.0 && theta0_dot == 0.0) {
    throw DegenerateError("both coefficient rates vanish");
  }
  if (!(r0 > 0.0)) throw DegenerateError("coefficient modulus must be positive");
  // nu0 = pi/2 - arg(R0_dot + i R0 theta0_dot); equals arcsin(R0_dot / |.|) for theta0_dot >= 0.
  const double nu0 = std::atan2(r0_dot, r0 * theta0_dot);
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) {
    out[k] = normalize_angle(2.0 / 3.0 * (kPi * k - theta0 + nu0));
  }
  return out;
}

double cut_direction_stationary_inverse_sqrt(cplx c0_dot) {
  if (c0_dot == 0.0) throw DegenerateError("coefficient rate vanishes");
  return normalize_angle(kPi - 2.0 * std::arg(c0_dot));
}

std::vector<Singularity> singularity_inventory(const Shape& shape, const ShapeRates& rates) {
  using K = Singularity::Kind;
  const double ad = rates.a_dot, bd = rates.b_dot;
  return std::visit(
      overloaded{
          [&](const Circle&) { return std::vector<Singularity>{{K::pole, 0.0, 2}}; },
          [&](const Ellipse& s) {
            const double d = s.d();
            const double d_dot = (s.a * ad - s.b * bd) / d;
            const double big_b = 2.0 * s.a * s.b / (d * d);
            std::vector<Singularity> out;
            out.push_back({K::moving_sqrt, d, 2, d_dot, -big_b * std::sqrt(cplx(2.0 * d))});
            out.push_back({K::moving_sqrt, -d, 2, -d_dot, -big_b * std::sqrt(cplx(-2.0 * d))});
            return out;
          },
          [&](const NeumannOval& s) {
            const double d = s.d();
            const double c = s.branch_height();
            const double d_dot = (s.a * ad - s.b * bd) / d;
            const double c_dot = (ad * s.b + s.a * bd) / d - s.a * s.b * d_dot / (d * d);
            const cplx up(0.0, c);
            auto phi = [&](cplx z, cplx other_root) {
              return 2.0 * z * d * other_root / (4.0 * z * z - d * d);
            };
            std::vector<Singularity> out;
            out.push_back({K::moving_sqrt, up, 1, cplx(0.0, c_dot), phi(up, std::sqrt(2.0 * up))});
            out.push_back(
                {K::moving_sqrt, -up, 1, cplx(0.0, -c_dot), phi(-up, std::sqrt(-2.0 * up))});
            out.push_back({K::pole, 0.5 * d, 2});
            out.push_back({K::pole, -0.5 * d, 2});
            return out;
          },
          [&](const CassiniOval& s) {
            require_admissible(shape, rates);
            const double a = s.a, b = s.b;
            const double e = s.branch_height();
            const double c4 = a * a * a * a - b * b * b * b;
            const double e_dot = (4.0 * a * a * a * ad - 4.0 * b * b * b * bd) /
                                     (2.0 * b * std::sqrt(c4)) -
                                 std::sqrt(c4) * bd / (b * b);
            auto q = [&](cplx z) { return std::sqrt(z - b) * std::sqrt(z + b); };
            const cplx up(0.0, e);
            std::vector<Singularity> out;
            out.push_back(
                {K::moving_sqrt, up, 1, cplx(0.0, e_dot), b * std::sqrt(2.0 * up) / q(up)});
            out.push_back(
                {K::moving_sqrt, -up, 1, cplx(0.0, -e_dot), b * std::sqrt(-2.0 * up) / q(-up)});
            const cplx root_p = std::sqrt(cplx(2.0 * b));
            const cplx root_m = std::sqrt(cplx(-2.0 * b));
            out.push_back({K::stationary_inverse_sqrt, b, 2, 0.0, a * a / root_p,
                           2.0 * a * ad / root_p});
            out.push_back({K::stationary_inverse_sqrt, -b, 2, 0.0, a * a / root_m,
                           2.0 * a * ad / root_m});
            return out;
          },
      },
      shape);
}

double predicted_cut_direction(const Singularity& s) {
  switch (s.kind) {
    case Singularity::Kind::moving_sqrt: return cut_direction_moving(s.phi, s.z_dot);
    case Singularity::Kind::stationary_inverse_sqrt:
      return cut_direction_stationary_inverse_sqrt(s.phi_dot);
    case Singularity::Kind::pole: break;
  }
  throw DegenerateError("poles carry point sources, not cuts");
}

double support_length(const CutSupport& support) {
  return std::visit(overloaded{
                        [](const PointSink&) { return 0.0; },
                        [](const Ray&) { return std::numeric_limits<double>::infinity(); },
                        [](const Segment& s) { return std::abs(s.z2 - s.z1); },
                        [](const PointAtInfinity&) { return 0.0; },
                    },
                    support);
}

cplx support_point(const CutSupport& support, double s) {
  return std::visit(overloaded{
                        [](const PointSink& p) { return p.z; },
                        [&](const Ray& r) { return r.origin + std::polar(s, r.direction); },
                        [&](const Segment& g) {
                          return g.z1 + (g.z2 - g.z1) * (s / std::abs(g.z2 - g.z1));
                        },
                        [](const PointAtInfinity&) -> cplx {
                          throw DomainError("the point at infinity has no coordinates");
                        },
                    },
                    support);
}

std::vector<std::pair<CutSupport, int>> support_geometry(const Shape& shape) {
  using Parts = std::vector<std::pair<CutSupport, int>>;
  return std::visit(
      overloaded{
          [](const Circle&) { return Parts{{PointSink{0.0}, 2}, {PointAtInfinity{}, 1}}; },
          [](const Ellipse& s) {
            return Parts{{Segment{-s.d(), s.d()}, 2}, {PointAtInfinity{}, 1}};
          },
          [](const NeumannOval& s) {
            const double c = s.branch_height();
            return Parts{{PointSink{0.5 * s.d()}, 2},
                         {PointSink{-0.5 * s.d()}, 2},
                         {Ray{cplx(0.0, c), 0.5 * kPi}, 1},
                         {Ray{cplx(0.0, -c), -0.5 * kPi}, 1},
                         {PointAtInfinity{}, 1}};
          },
          [](const CassiniOval& s) {
            const double e = s.branch_height();
            return Parts{{Segment{-s.b, s.b}, 2},
                         {Ray{cplx(0.0, e), 0.5 * kPi}, 1},
                         {Ray{cplx(0.0, -e), -0.5 * kPi}, 1}};
          },
      },
      shape);
}

MotherBody build_mother_body(const Shape& shape, const ShapeRates& rates, const Mobility& mob) {
  validate(shape);
  validate(mob);
  require_admissible(shape, rates);

  MotherBody mb;
  mb.growing = area_rate(shape, rates) >= 0.0;

  const Family fam = family_of(shape);
  const auto sing = singularity_inventory(shape, rates);
  std::size_t ray_index = 0;
  for (const auto& [support, fluid] : support_geometry(shape)) {
    DensityLaw law = DensityLaw::point;
    CutSupport placed = support;
    if (std::holds_alternative<PointAtInfinity>(support)) {
      law = DensityLaw::far_field;
    } else if (std::holds_alternative<Segment>(support)) {
      law = fam == Family::ellipse ? DensityLaw::ellipse_segment : DensityLaw::cassini_segment;
    } else if (const auto* ray = std::get_if<Ray>(&support)) {
      law = fam == Family::neumann ? DensityLaw::neumann_ray : DensityLaw::cassini_ray;
      // The inventory lists the two exterior branch points first, in ray order.
      placed = Ray{ray->origin, ray_direction(sing.at(ray_index++), ray->direction)};
    }
    mb.parts.push_back(make_part(placed, fluid, law, shape, rates, mob));
  }

  const double orientation = mb.growing ? 1.0 : -1.0;
  for (auto& part : mb.parts) {
    const double side = part.fluid == 2 ? 1.0 : -1.0;
    part.signed_flux = side * orientation * flux(part);
  }
  return mb;
}

MotherBody build_constant_area_body(const Ellipse& shape, double a_dot, const Mobility& mob) {
  validate(Shape{shape});
  validate(mob);
  const ShapeRates rates{a_dot, -shape.b * a_dot / shape.a};
  const double d = shape.d();
  MotherBody mb;
  mb.growing = true;
  mb.parts.push_back(make_part(Segment{-d, d}, 2, DensityLaw::constant_area_segment,
                               Shape{shape}, rates, mob));
  mb.parts.back().signed_flux = flux(mb.parts.back());
  return mb;
}

double signed_density_at(const WeightedSupport& part, double s) {
  const double len = support_length(part.support);
  if (len == 0.0) throw EndpointError("point supports have no interior");
  if (!(s > 0.0) || !(s < len)) {
    throw EndpointError("arclength " + std::to_string(s) + " is not interior to the support");
  }
  return law_density(part.density, part.support, s, -1.0);
}

double density_at(const WeightedSupport& part, double s) {
  return std::abs(signed_density_at(part, s));
}

double flux(const WeightedSupport& part) {
  const DensityDescriptor& dd = part.density;
  const double k = dd.mobility;
  return std::visit(
      overloaded{
          [&](const PointSink& p) {
            double radius = 0.5 * scale(dd.shape);
            for (const cplx& other : branch_points(dd.shape)) {
              radius = std::min(radius, 0.25 * std::abs(other - p.z));
            }
            if (std::holds_alternative<NeumannOval>(dd.shape)) {
              radius = std::min(radius, 0.25 * std::get<NeumannOval>(dd.shape).d());
            }
            return dd.scale * std::abs(residue_strength(dd.shape, dd.rates, p.z, radius));
          },
          [&](const PointAtInfinity&) {
            return dd.scale * std::abs(far_field_strength(dd.shape, dd.rates));
          },
          [&](const Segment& g) {
            const double len = std::abs(g.z2 - g.z1);
            return k * quad::integrate_segment(
                           [&](double s, double rest) {
                             return law_density(dd, part.support, s, rest);
                           },
                           len);
          },
          [&](const Ray&) {
            return k * quad::integrate_ray(
                           [&](double s) { return s <= 0.0 ? 0.0 : density_at(part, s); },
                           scale(dd.shape));
          },
      },
      part.support);
}

double flux_balance(const MotherBody& mb, const Shape& shape, const ShapeRates& rates) {
  const double a_dot = area_rate(shape, rates);
  double interior = 0.0, exterior = 0.0;
  for (const auto& part : mb.parts) {
    (part.fluid == 2 ? interior : exterior) += part.signed_flux;
  }
  return std::max(std::abs(interior - a_dot), std::abs(exterior + a_dot));
}

double distance_to_support(const CutSupport& support, cplx z) {
  return std::visit(overloaded{
                        [&](const PointSink& p) { return std::abs(z - p.z); },
                        [&](const Ray& r) {
                          const cplx u = std::polar(1.0, r.direction);
                          const double t = std::max(0.0, std::real((z - r.origin) * std::conj(u)));
                          return std::abs(z - (r.origin + t * u));
                        },
                        [&](const Segment& g) {
                          const double len = std::abs(g.z2 - g.z1);
                          const cplx u = (g.z2 - g.z1) / len;
                          const double t =
                              std::clamp(std::real((z - g.z1) * std::conj(u)), 0.0, len);
                          return std::abs(z - (g.z1 + t * u));
                        },
                        [](const PointAtInfinity&) {
                          return std::numeric_limits<double>::infinity();
                        },
                    },
                    support);
}

namespace {

std::vector<cplx> sample_support(const CutSupport& support, double reach, int samples) {
  std::vector<cplx> pts;
  std::visit(overloaded{
                 [&](const PointSink& p) { pts.push_back(p.z); },
                 [&](const Ray& r) {
                   for (int i = 0; i <= samples; ++i) {
                     pts.push_back(support_point(r, reach * i / samples));
                   }
                 },
                 [&](const Segment& g) {
                   const double len = std::abs(g.z2 - g.z1);
                   for (int i = 0; i <= samples; ++i) pts.push_back(support_point(g, len * i / samples));
                 },
                 [](const PointAtInfinity&) {},
             },
             support);
  return pts;
}

}  // namespace

bool supports_well_placed(const MotherBody& mb, const Shape& shape, int samples) {
  const double reach = 10.0 * scale(shape);
  const double tol = boundary_tolerance(shape);
  std::vector<std::vector<cplx>> sampled;
  for (const auto& part : mb.parts) {
    auto pts = sample_support(part.support, reach, samples);
    for (const cplx& z : pts) {
      const double off = radial_offset(shape, z);
      if (part.fluid == 2 && !(off < -tol)) return false;
      if (part.fluid == 1 && !(off > tol)) return false;
    }
    sampled.push_back(std::move(pts));
  }
  for (std::size_t i = 0; i < mb.parts.size(); ++i) {
    for (std::size_t j = i + 1; j < mb.parts.size(); ++j) {
      for (const cplx& z : sampled[i]) {
        if (distance_to_support(mb.parts[j].support, z) <= tol) return false;
      }
    }
  }
  return true;
}

std::vector<std::pair<cplx, double>> emanation_angles(const CutSupport& support) {
  return std::visit(overloaded{
                        [](const Ray& r) {
                          return std::vector<std::pair<cplx, double>>{{r.origin, r.direction}};
                        },
                        [](const Segment& g) {
                          return std::vector<std::pair<cplx, double>>{
                              {g.z1, normalize_angle(std::arg(g.z2 - g.z1))},
                              {g.z2, normalize_angle(std::arg(g.z1 - g.z2))}};
                        },
                        [](const auto&) { return std::vector<std::pair<cplx, double>>{}; },
                    },
                    support);
}

}  // namespace muskat
