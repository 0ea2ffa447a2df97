#include "muskat/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "muskat/curves.hpp"
#include "muskat/errors.hpp"
#include "muskat/fields.hpp"
#include "muskat/quadrature.hpp"

namespace muskat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t branch_index(const Shape& shape, cplx z_a) {
  const auto pts = branch_points(shape);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(pts[i] - z_a) <= 1e-9 * scale(shape)) return i;
  }
  throw DomainError("point is not a branch point of the Schwarz function");
}

double distance_to_interface(const std::vector<cplx>& outline, cplx z) {
  double best = kInf;
  for (std::size_t i = 0; i < outline.size(); ++i) {
    const cplx p = outline[i];
    const cplx q = outline[(i + 1) % outline.size()];
    const cplx e = q - p;
    const double t = std::clamp(std::real((z - p) * std::conj(e)) / std::norm(e), 0.0, 1.0);
    best = std::min(best, std::abs(z - (p + t * e)));
  }
  return best;
}

double distance_to_supports(const Shape& shape, cplx z) {
  double best = kInf;
  for (const auto& [support, fluid] : support_geometry(shape)) {
    best = std::min(best, distance_to_support(support, z));
  }
  return best;
}

// Re of the integral of dW_j/dz along a path given by gamma(u), gamma'(u) for
// u in [lo, hi], with the square roots followed by continuity from the
// conventional sheet at the first node.
cplx continue_along(const Shape& shape, const ShapeRates& rates, double mobility,
                    const std::function<cplx(double)>& gamma,
                    const std::function<cplx(double)>& dgamma, double lo, double hi,
                    int panels) {
  std::optional<quad::RootTracker> tracker;
  const auto centers = branch_points(shape);
  return quad::integrate_ordered(
      [&](double u) {
        const cplx z = gamma(u);
        if (!tracker) tracker.emplace(centers, conventional_roots(shape, z));
        const auto roots = tracker->advance(z);
        const cplx w = -schwarz_dot_on_sheet(shape, rates, z, roots) / (2.0 * mobility);
        return w * dgamma(u);
      },
      lo, hi, panels);
}

double pressure_of(const Shape& shape, const ShapeRates& rates, const Mobility& mob, int fluid,
                   cplx z, const std::optional<double>& constant_area_rate) {
  if (constant_area_rate) {
    return pressure_ellipse_constant_area(shape, *constant_area_rate, mob, fluid, z);
  }
  return pressure(shape, rates, mob, fluid, z);
}

// Jump of the normal derivative of p across a line support, by one-sided
// differences on both sides.
double normal_jump(const std::function<double(cplx)>& p, cplx z, cplx normal, double h) {
  const double plus = one_sided_derivative(p, z, normal, h);
  const double minus = -one_sided_derivative(p, z, -normal, h);
  return plus - minus;
}

std::vector<double> line_stations(const CutSupport& support, double length_scale, int n) {
  std::vector<double> s(static_cast<std::size_t>(n));
  const double len = support_length(support);
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.5 : static_cast<double>(i) / (n - 1);
    s[i] = std::isinf(len) ? length_scale * (0.1 + 4.9 * f) : len * (0.05 + 0.9 * f);
  }
  return s;
}

cplx line_direction(const CutSupport& support) {
  if (const auto* r = std::get_if<Ray>(&support)) return std::polar(1.0, r->direction);
  const auto& g = std::get<Segment>(support);
  return (g.z2 - g.z1) / std::abs(g.z2 - g.z1);
}

cplx line_origin(const CutSupport& support) {
  if (const auto* r = std::get_if<Ray>(&support)) return r->origin;
  return std::get<Segment>(support).z1;
}

bool is_line(const CutSupport& support) {
  return std::holds_alternative<Ray>(support) || std::holds_alternative<Segment>(support);
}

CheckResult make_check(std::string name, double residual, double tolerance, int samples,
                       std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.residual = residual;
  c.tolerance = tolerance;
  c.passed = std::isfinite(residual) && residual <= tolerance;
  c.samples = samples;
  c.detail = std::move(detail);
  return c;
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

double pressure_scale(const Shape& shape, const ShapeRates& rates, const Mobility& mob, int fluid) {
  return std::abs(area_rate(shape, rates)) / (2.0 * kPi * mob.of(fluid));
}

// --- harmonicity -------------------------------------------------------------

HarmonicityResult check_harmonicity(const std::function<double(cplx)>& field,
                                    const std::vector<cplx>& centers,
                                    const std::vector<double>& steps) {
  if (steps.empty()) throw DomainError("harmonicity check needs at least one step");
  HarmonicityResult out;
  out.steps = steps;
  out.centers = static_cast<int>(centers.size());
  for (double h : steps) {
    double worst = 0.0;
    for (const cplx& z : centers) {
      const double lap = (field(z + h) + field(z - h) + field(z + cplx(0.0, h)) +
                          field(z - cplx(0.0, h)) - 4.0 * field(z)) /
                         (h * h);
      worst = std::max(worst, std::abs(lap));
    }
    out.residuals.push_back(worst);
  }
  out.order = kInf;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const double ratio = out.residuals[i - 1] / out.residuals[i];
    out.order = std::min(out.order, std::log(ratio) / std::log(steps[i - 1] / steps[i]));
  }
  if (steps.size() == 1) out.order = 0.0;
  return out;
}

HarmonicityResult check_harmonicity(const Shape& shape, const ShapeRates& rates,
                                    const Mobility& mob, int fluid,
                                    const std::vector<cplx>& centers,
                                    const std::vector<double>& steps) {
  const double tube = 0.1 * scale(shape);
  const auto outline = boundary_points(shape, 720);
  for (const cplx& z : centers) {
    if (fluid_at(shape, z) != fluid || distance_to_interface(outline, z) < tube ||
        distance_to_supports(shape, z) < tube) {
      std::ostringstream msg;
      msg << "harmonicity centre (" << z.real() << ", " << z.imag()
          << ") is outside fluid " << fluid << " or within 0.1 scale of a support or the interface";
      throw RegionError(msg.str());
    }
  }
  return check_harmonicity([&](cplx z) { return pressure(shape, rates, mob, fluid, z); },
                           centers, steps);
}

std::vector<cplx> rect_region(double x0, double x1, double y0, double y1, int nx, int ny) {
  if (nx < 2 || ny < 2) throw InvalidCount("region grids need at least 2 x 2 points");
  std::vector<cplx> out;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      out.emplace_back(x0 + (x1 - x0) * i / (nx - 1), y0 + (y1 - y0) * j / (ny - 1));
    }
  }
  return out;
}

std::vector<cplx> annulus_region(double r0, double r1, int nr, int nt) {
  if (nr < 2 || nt < 1) throw InvalidCount("annulus grids need nr >= 2 and nt >= 1");
  std::vector<cplx> out;
  for (int j = 0; j < nr; ++j) {
    for (int i = 0; i < nt; ++i) {
      out.push_back(std::polar(r0 + (r1 - r0) * j / (nr - 1), 2.0 * kPi * i / nt));
    }
  }
  return out;
}

std::vector<cplx> default_region(const Shape& shape, int fluid, int n, double tube) {
  const double s = scale(shape);
  const auto outline = boundary_points(shape, 720);
  std::vector<cplx> out;
  for (const cplx& z : rect_region(-3.0 * s, 3.0 * s, -3.0 * s, 3.0 * s, n, n)) {
    if (fluid_at(shape, z) == fluid && distance_to_interface(outline, z) >= tube &&
        distance_to_supports(shape, z) >= tube) {
      out.push_back(z);
    }
  }
  return out;
}

// --- interface conditions ----------------------------------------------------

double one_sided_derivative(const std::function<double(cplx)>& f, cplx z, cplx u, double h) {
  const double f0 = f(z), f1 = f(z + h * u), f2 = f(z + 2.0 * h * u), f3 = f(z + 3.0 * h * u),
               f4 = f(z + 4.0 * h * u);
  return (-25.0 * f0 + 48.0 * f1 - 36.0 * f2 + 16.0 * f3 - 3.0 * f4) / (12.0 * h);
}

namespace {

InterfaceResult interface_residuals(const Shape& shape, const ShapeRates& rates,
                                    const Mobility& mob, int n,
                                    const std::optional<double>& constant_area_rate) {
  InterfaceResult out;
  const double h = 1e-3 * scale(shape);
  const auto pts = boundary_points(shape, n);
  out.samples = n;
  for (const cplx& z : pts) {
    const cplx normal = outward_normal(shape, z);
    const double vn = normal_velocity(shape, rates, z);
    out.vn_max = std::max(out.vn_max, std::abs(vn));
    auto p1 = [&](cplx w) { return pressure_of(shape, rates, mob, 1, w, constant_area_rate); };
    auto p2 = [&](cplx w) { return pressure_of(shape, rates, mob, 2, w, constant_area_rate); };
    out.continuity = std::max(out.continuity, std::abs(p1(z) - p2(z)));
    const double dn1 = one_sided_derivative(p1, z, normal, h);
    const double dn2 = -one_sided_derivative(p2, z, -normal, h);
    out.kinematic = std::max(out.kinematic, std::abs(-mob.k1 * dn1 - vn));
    out.kinematic = std::max(out.kinematic, std::abs(-mob.k2 * dn2 - vn));
  }
  return out;
}

}  // namespace

InterfaceResult check_interface_conditions(const Shape& shape, const ShapeRates& rates,
                                           const Mobility& mob, int n) {
  require_admissible(shape, rates);
  return interface_residuals(shape, rates, mob, n, std::nullopt);
}

InterfaceResult check_interface_conditions_constant_area(const Ellipse& shape, double a_dot,
                                                         const Mobility& mob, int n) {
  return interface_residuals(Shape{shape}, constant_area_rates(shape, a_dot), mob, n, a_dot);
}

// --- cut variation -----------------------------------------------------------

double cut_variation_at(const Shape& shape, const ShapeRates& rates, double mobility, cplx z_a,
                        cplx z, int panels) {
  const std::size_t idx = branch_index(shape, z_a);
  const cplx span = z - z_a;
  const auto centers = branch_points(shape);
  std::optional<quad::RootTracker> tracker;
  // zeta = z_a + u^2 (z - z_a) removes the inverse square root at z_a.
  const cplx total = quad::integrate_ordered(
      [&](double u) {
        const cplx zeta = z_a + u * u * span;
        if (!tracker) tracker.emplace(centers, conventional_roots(shape, zeta));
        const auto roots = tracker->advance(zeta);
        std::vector<cplx> flipped(roots.begin(), roots.end());
        flipped[idx] = -flipped[idx];
        const cplx diff = schwarz_dot_on_sheet(shape, rates, zeta, roots) -
                          schwarz_dot_on_sheet(shape, rates, zeta, flipped);
        return -diff / (2.0 * mobility) * (2.0 * u * span);
      },
      0.0, 1.0, panels);
  return total.real();
}

double check_cut_variation(const Shape& shape, const ShapeRates& rates, const Mobility& mob,
                           const WeightedSupport& part, int stations) {
  if (!is_line(part.support)) return 0.0;
  const double k = mob.of(part.fluid);
  const cplx origin = line_origin(part.support);
  const cplx dir = line_direction(part.support);
  double worst = 0.0;
  for (double s : line_stations(part.support, scale(shape), stations)) {
    worst = std::max(worst, std::abs(cut_variation_at(shape, rates, k, origin, origin + s * dir, 32)));
  }
  return worst;
}

std::vector<DirectionResult> check_direction_formula(const Shape& shape, const ShapeRates& rates,
                                                     const Mobility& mob, int directions) {
  std::vector<DirectionResult> out;
  const double rho = 1e-3 * scale(shape);
  for (const auto& sing : singularity_inventory(shape, rates)) {
    if (sing.kind == Singularity::Kind::pole) continue;
    double predicted = 0.0;
    try {
      predicted = predicted_cut_direction(sing);
    } catch (const StationaryPointError&) {
      continue;  // static shape: no cut is selected
    } catch (const DegenerateError&) {
      continue;
    }
    const double k = mob.of(sing.fluid);
    auto objective = [&](double theta) {
      return std::abs(cut_variation_at(shape, rates, k, sing.z, sing.z + std::polar(rho, theta), 4));
    };
    int best = 0;
    double best_val = kInf;
    const double step = 2.0 * kPi / directions;
    for (int i = 0; i < directions; ++i) {
      const double v = objective(step * i);
      if (v < best_val) {
        best_val = v;
        best = i;
      }
    }
    // Golden-section refinement on the bracketing cells.
    double lo = step * (best - 1), hi = step * (best + 1);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = objective(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = objective(x2);
      }
    }
    DirectionResult r;
    r.z = sing.z;
    r.predicted = predicted;
    r.scanned = normalize_angle(0.5 * (lo + hi));
    r.error = std::abs(normalize_angle(r.scanned - r.predicted));
    out.push_back(r);
  }
  return out;
}

// --- densities ---------------------------------------------------------------

double check_density_jump(const Shape& shape, const ShapeRates& rates, const Mobility& mob,
                          const WeightedSupport& part, int stations) {
  if (!is_line(part.support)) return 0.0;
  const double h = 1e-3 * scale(shape);
  const cplx normal = cplx(0.0, 1.0) * line_direction(part.support);
  auto p = [&](cplx w) { return pressure(shape, rates, mob, part.fluid, w); };
  double worst = 0.0;
  double mu_max = 0.0;
  std::vector<std::pair<double, double>> pairs;
  for (double s : line_stations(part.support, scale(shape), stations)) {
    const double mu = density_at(part, s);
    const double jump = std::abs(normal_jump(p, support_point(part.support, s), normal, h));
    pairs.emplace_back(mu, jump);
    mu_max = std::max(mu_max, mu);
  }
  for (const auto& [mu, jump] : pairs) {
    worst = std::max(worst, std::abs(jump - mu) / std::max(mu, 1e-300));
  }
  return mu_max == 0.0 ? 0.0 : worst;
}

double check_density_jump_constant_area(const Ellipse& shape, double a_dot, const Mobility& mob,
                                        int stations) {
  const auto body = build_constant_area_body(shape, a_dot, mob);
  const auto& part = body.parts.front();
  const Shape s{shape};
  const double h = 1e-3 * scale(s);
  const cplx normal = cplx(0.0, 1.0) * line_direction(part.support);
  auto p = [&](cplx w) { return pressure_ellipse_constant_area(s, a_dot, mob, 2, w); };
  std::vector<double> mu, jump;
  double mu_max = 0.0;
  for (double st : line_stations(part.support, scale(s), stations)) {
    mu.push_back(signed_density_at(part, st));
    jump.push_back(normal_jump(p, support_point(part.support, st), normal, h));
    mu_max = std::max(mu_max, std::abs(mu.back()));
  }
  if (mu_max == 0.0) return 0.0;
  // The density sign follows the source convention; accept either orientation
  // of the jump but require it to hold at every station.
  double best = kInf;
  for (double sign : {1.0, -1.0}) {
    double worst = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      worst = std::max(worst, std::abs(sign * jump[i] - mu[i]) / mu_max);
    }
    best = std::min(best, worst);
  }
  return best;
}

// --- loops -------------------------------------------------------------------

LoopResult check_single_valuedness(const Shape& shape, const ShapeRates& rates,
                                   const Mobility& mob, std::uint64_t seed, int loops) {
  const double s = scale(shape);
  const double clearance = 0.05 * s;
  const auto outline = boundary_points(shape, 720);

  struct Loop {
    int fluid;
    std::function<cplx(double)> gamma;
    std::function<cplx(double)> dgamma;
  };
  auto valid = [&](const Loop& loop) {
    for (int i = 0; i < 128; ++i) {
      const cplx z = loop.gamma(2.0 * kPi * i / 128);
      if (fluid_at(shape, z) != loop.fluid || distance_to_interface(outline, z) < clearance ||
          distance_to_supports(shape, z) < clearance) {
        return false;
      }
    }
    return true;
  };

  std::vector<Loop> chosen;
  // Scaled copies of the interface: inside they enclose every interior support.
  for (double lambda : {0.85, 1.3}) {
    Loop loop{lambda < 1.0 ? 2 : 1,
              [&, lambda](double t) { return std::polar(lambda * boundary_radius(shape, t), t); },
              [&, lambda](double t) {
                const double e = 1e-6;
                return (std::polar(lambda * boundary_radius(shape, t + e), t + e) -
                        std::polar(lambda * boundary_radius(shape, t - e), t - e)) /
                       (2.0 * e);
              }};
    if (valid(loop)) chosen.push_back(std::move(loop));
  }
  std::mt19937_64 rng(seed);
  int attempts = 0;
  while (static_cast<int>(chosen.size()) < loops && attempts < 20000) {
    ++attempts;
    const cplx c(s * (-3.0 + 6.0 * unit_draw(rng)), s * (-3.0 + 6.0 * unit_draw(rng)));
    const double r = s * (0.05 + 0.6 * unit_draw(rng));
    const int fluid = chosen.size() % 2 == 0 ? 2 : 1;
    Loop loop{fluid, [c, r](double t) { return c + std::polar(r, t); },
              [r](double t) { return cplx(0.0, 1.0) * std::polar(r, t); }};
    if (valid(loop)) chosen.push_back(std::move(loop));
  }

  LoopResult out;
  for (const auto& loop : chosen) {
    const cplx w = continue_along(shape, rates, mob.of(loop.fluid), loop.gamma, loop.dgamma, 0.0,
                                  2.0 * kPi, 32);
    out.residual = std::max(out.residual, std::abs(w.real()));
    ++out.loops;
  }
  return out;
}

// --- far field ---------------------------------------------------------------

double check_far_field(const Shape& shape, const ShapeRates& rates, const Mobility& mob) {
  const auto body = build_mother_body(shape, rates, mob);
  double q_inf = 0.0;
  for (const auto& part : body.parts) {
    if (std::holds_alternative<PointAtInfinity>(part.support)) q_inf = -part.signed_flux;
  }
  const double coeff = q_inf / (2.0 * kPi * mob.k1);
  // Rays reaching infinity leave an O(1/|z|) correction, so each direction is
  // fitted with c + e / R before the limits are compared.
  const std::array<double, 5> radii{1e4, 1e4 * std::sqrt(10.0), 1e5, 1e5 * std::sqrt(10.0), 1e6};
  double residual = 0.0;
  double lo = kInf, hi = -kInf;
  for (double theta : {0.0, 0.25 * kPi, 0.75 * kPi, kPi, 1.25 * kPi, 1.75 * kPi, 0.125 * kPi}) {
    std::array<double, 5> x{}, v{};
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const cplx z = std::polar(radii[i] * scale(shape), theta);
      x[i] = 1.0 / radii[i];
      v[i] = pressure(shape, rates, mob, 1, z) + coeff * std::log(std::abs(z));
    }
    double sx = 0, sv = 0, sxx = 0, sxv = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sv += v[i];
      sxx += x[i] * x[i];
      sxv += x[i] * v[i];
    }
    const double n = static_cast<double>(x.size());
    const double e = (n * sxv - sx * sv) / (n * sxx - sx * sx);
    const double c = (sv - e * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
      residual = std::max(residual, std::abs(v[i] - c - e * x[i]));
    }
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return std::max(residual, hi - lo);
}

// --- suite -------------------------------------------------------------------

const std::vector<std::string>& verification_check_names() {
  static const std::vector<std::string> names{
      "boundary_identity", "interface",     "harmonicity",  "cut_variation",
      "direction",         "density_jump",  "flux_identity", "flux_balance",
      "far_field",         "single_valued"};
  return names;
}

namespace {

// Closed-form totals the quadrature fluxes must reproduce: (interior, exterior)
// magnitudes grouped by support kind.
void flux_identities(const Shape& shape, const ShapeRates& rates, const MotherBody& body,
                     double& worst, int& count) {
  const double a = param_a(shape), b = param_b(shape);
  const double a_rate = area_rate(shape, rates);
  double seg = 0.0, rays = 0.0, points = 0.0, inf = 0.0;
  for (const auto& part : body.parts) {
    const double f = std::abs(part.signed_flux);
    std::visit([&](const auto& sup) {
      using T = std::decay_t<decltype(sup)>;
      if constexpr (std::is_same_v<T, Segment>) seg += f;
      if constexpr (std::is_same_v<T, Ray>) rays += f;
      if constexpr (std::is_same_v<T, PointSink>) points += f;
      if constexpr (std::is_same_v<T, PointAtInfinity>) inf += f;
    }, part.support);
  }
  auto rel = [&](double got, double want) {
    ++count;
    const double err = std::abs(got - want) / std::max(std::abs(want), 1e-300);
    worst = std::max(worst, want == 0.0 ? std::abs(got) : err);
  };
  switch (family_of(shape)) {
    case Family::circle:
      rel(points, std::abs(2.0 * kPi * a * rates.a_dot));
      rel(inf, std::abs(2.0 * kPi * a * rates.a_dot));
      break;
    case Family::ellipse:
      rel(seg, std::abs(kPi * (rates.a_dot * b + a * rates.b_dot)));
      break;
    case Family::neumann:
      rel(rays, std::abs(kPi * a * rates.a_dot));  // (pi/2) d/dt(a^2)
      rel(points, std::abs(a_rate));
      break;
    case Family::cassini:
      rel(seg, std::abs(a_rate));
      rel(rays, std::abs(a_rate));
      break;
  }
}

}  // namespace

VerificationReport run_verification(const Shape& shape, const ShapeRates& rates,
                                    const Mobility& mob, const VerifyOptions& options) {
  const auto& known = verification_check_names();
  for (const auto& name : options.checks) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw DomainError("unknown check '" + name + "'");
    }
  }
  auto wanted = [&](const std::string& name) {
    return options.checks.empty() ||
           std::find(options.checks.begin(), options.checks.end(), name) != options.checks.end();
  };

  validate(shape);
  validate(mob);
  VerificationReport report;
  report.seed = options.seed;
  const double sc = scale(shape);

  const Ellipse* variant = nullptr;
  if (options.constant_area) {
    variant = std::get_if<Ellipse>(&shape);
    if (variant == nullptr) throw FamilyError("the constant-area variant requires an ellipse");
  } else {
    require_admissible(shape, rates);
  }
  const std::optional<double> variant_rate =
      variant ? std::optional<double>(rates.a_dot) : std::nullopt;
  const ShapeRates eff = variant ? constant_area_rates(*variant, rates.a_dot) : rates;

  // Relative tolerances use the pressure scale of the motion; the constant-area
  // motion keeps the area fixed, so it uses the a-rate instead.
  auto p_scale = [&](int fluid) {
    if (variant) return std::abs(variant->a * rates.a_dot) / mob.of(fluid);
    return pressure_scale(shape, rates, mob, fluid);
  };

  if (wanted("boundary_identity")) {
    double worst = 0.0;
    const auto pts = boundary_points(shape, 1000);
    for (const cplx& z : pts) worst = std::max(worst, std::abs(schwarz(shape, z) - std::conj(z)));
    report.checks.push_back(make_check("boundary_identity", worst, 1e-10 * sc, 1000));
  }

  if (wanted("interface")) {
    const auto r = variant ? check_interface_conditions_constant_area(*variant, rates.a_dot, mob)
                           : check_interface_conditions(shape, rates, mob);
    report.checks.push_back(make_check("interface_continuity", r.continuity, 1e-9, r.samples));
    report.checks.push_back(
        make_check("interface_kinematic", r.kinematic, 1e-6 * r.vn_max, r.samples));
  }

  if (wanted("harmonicity")) {
    const std::vector<double> steps{1e-2 * sc, 5e-3 * sc, 2.5e-3 * sc};
    const bool static_shape = eff.a_dot == 0.0 && eff.b_dot == 0.0;
    for (int fluid : {1, 2}) {
      const auto centers = default_region(shape, fluid, 25, 0.1 * sc);
      const auto r = check_harmonicity(
          [&](cplx z) { return pressure_of(shape, rates, mob, fluid, z, variant_rate); }, centers,
          steps);
      std::ostringstream detail;
      detail << "residuals";
      for (double v : r.residuals) detail << ' ' << v;
      // Order deficit below 1.9; a static field is exactly harmonic.
      double deficit = static_shape ? 0.0 : std::max(0.0, 1.9 - r.order);
      if (centers.empty()) deficit = kInf;
      report.checks.push_back(make_check("harmonicity_fluid" + std::to_string(fluid), deficit, 0.0,
                                         r.centers, detail.str()));
    }
  }

  std::optional<MotherBody> body;
  auto mother_body = [&]() -> const MotherBody& {
    if (!body) {
      body = variant ? build_constant_area_body(*variant, rates.a_dot, mob)
                     : build_mother_body(shape, rates, mob);
    }
    return *body;
  };

  if (wanted("cut_variation")) {
    double worst = 0.0;
    int n = 0;
    for (const auto& part : mother_body().parts) {
      if (!is_line(part.support)) continue;
      const double scale_j = std::max(p_scale(part.fluid), 1e-300);
      worst = std::max(worst, check_cut_variation(shape, eff, mob, part) / scale_j);
      n += 50;
    }
    report.checks.push_back(make_check("cut_variation", worst, 1e-7, n, "relative to |dA/dt|/(2 pi k)"));
  }

  if (wanted("direction") && !variant) {
    const auto dirs = check_direction_formula(shape, rates, mob);
    double worst = 0.0;
    std::ostringstream detail;
    for (const auto& d : dirs) {
      worst = std::max(worst, d.error);
      detail << "(" << d.z.real() << "," << d.z.imag() << "): predicted " << d.predicted
             << " scanned " << d.scanned << "; ";
    }
    report.checks.push_back(make_check("direction", worst, kPi / 64.0,
                                       static_cast<int>(dirs.size()), detail.str()));
  }

  if (wanted("density_jump")) {
    double worst = 0.0;
    int n = 0;
    if (variant) {
      worst = check_density_jump_constant_area(*variant, rates.a_dot, mob);
      n = 20;
    } else {
      for (auto part : mother_body().parts) {
        if (!is_line(part.support)) continue;
        part.density.scale = options.density_scale;
        worst = std::max(worst, check_density_jump(shape, rates, mob, part));
        n += 20;
      }
    }
    report.checks.push_back(make_check("density_jump", worst, 1e-5, n));
  }

  if (wanted("flux_identity")) {
    double worst = 0.0;
    int n = 0;
    if (variant) {
      worst = std::abs(mother_body().parts.front().signed_flux);
      n = 1;
      report.checks.push_back(make_check("flux_identity", worst, 1e-9, n, "net interior flux"));
    } else {
      flux_identities(shape, rates, mother_body(), worst, n);
      report.checks.push_back(make_check("flux_identity", worst, 1e-8, n));
    }
  }

  if (wanted("flux_balance") && !variant) {
    const double residual = flux_balance(mother_body(), shape, rates);
    const double a_rate = std::abs(area_rate(shape, rates));
    report.checks.push_back(make_check("flux_balance", residual, 1e-8 * a_rate, 2));
  }

  if (wanted("far_field") && !variant) {
    const double spread = check_far_field(shape, rates, mob);
    report.checks.push_back(make_check("far_field", spread, 1e-6 * p_scale(1), 35));
  }

  if (wanted("single_valued") && !variant) {
    const auto r = check_single_valuedness(shape, rates, mob, options.seed);
    const double tol = 1e-10 * std::max(p_scale(1), p_scale(2));
    report.checks.push_back(make_check("single_valued", r.residual, tol, r.loops));
  }

  return report;
}

}  // namespace muskat
