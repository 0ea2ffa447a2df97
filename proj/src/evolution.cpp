#include "muskat/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "muskat/curves.hpp"
#include "muskat/errors.hpp"
#include "muskat/motherbody.hpp"
#include "muskat/specfun.hpp"

namespace muskat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_increasing(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) throw DomainError(std::string(what) + " must be strictly increasing");
  }
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
  }
}

// Integral of the linear interpolant of a table over [t0, t1], both inside one cell
// or beyond the ends.
double table_integral(const TableFlux& tab, double t0, double t1) {
  // Split at the nodes, then integrate each piece with the trapezoid rule, which
  // is exact for piecewise linear data.
  std::vector<double> cuts{t0};
  for (double node : tab.t) {
    if (node > t0 && node < t1) cuts.push_back(node);
  }
  cuts.push_back(t1);
  FluxSchedule s = tab;
  double sum = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    sum += 0.5 * (cuts[i] - cuts[i - 1]) * (flux_at(s, cuts[i - 1]) + flux_at(s, cuts[i]));
  }
  return sum;
}

// The free parameter a determines the shape once the family invariant is fixed.
struct Parametrisation {
  Family family;
  double invariant;  // b/a (ellipse), d (Neumann), b (Cassini); unused for circles

  explicit Parametrisation(const Shape& s) : family(family_of(s)), invariant(0.0) {
    std::visit(overloaded{
                   [&](const Circle&) {},
                   [&](const Ellipse& e) { invariant = e.b / e.a; },
                   [&](const NeumannOval& n) { invariant = n.d(); },
                   [&](const CassiniOval& c) { invariant = c.b; },
               },
               s);
  }

  // Throws DegenerateShapeError when a has crossed the family's limit.
  Shape shape(double a) const {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw DegenerateShapeError("parameter a = " + std::to_string(a) + " is not positive");
    }
    switch (family) {
      case Family::circle: return Circle{a};
      case Family::ellipse: return Ellipse{a, invariant * a};
      case Family::neumann:
        if (!(a > invariant)) throw DegenerateShapeError("Neumann oval has split (a <= d)");
        return NeumannOval{a, std::sqrt((a - invariant) * (a + invariant))};
      case Family::cassini:
        if (!(a > invariant)) throw DegenerateShapeError("Cassini oval has pinched (a <= b)");
        return CassiniOval{a, invariant};
    }
    throw DegenerateShapeError("unknown family");
  }
};

TerminalKind event_kind(Family f) {
  switch (f) {
    case Family::circle: return TerminalKind::circle_vanish;
    case Family::ellipse: return TerminalKind::ellipse_vanish;
    case Family::neumann: return TerminalKind::neumann_split;
    case Family::cassini: return TerminalKind::cassini_lemniscate;
  }
  return TerminalKind::time_end;
}

TrajectorySample make_sample(double t, const Shape& shape, double q, const Mobility& mob,
                             bool record_fluxes) {
  TrajectorySample s;
  s.t = t;
  s.shape = shape;
  s.area = area(shape);
  try {
    s.rates = rate_from_flux(shape, q);
  } catch (const DegenerateShapeError&) {
    // At a terminal configuration the rates are not defined; keep them at zero.
    return s;
  }
  if (record_fluxes) {
    for (const auto& part : build_mother_body(shape, s.rates, mob).parts) {
      s.fluxes.push_back({std::string(support_kind(part.support)), part.fluid, part.signed_flux});
    }
  }
  return s;
}

}  // namespace

void validate(const FluxSchedule& schedule) {
  std::visit(overloaded{
                 [](const ConstantFlux& c) {
                   if (!std::isfinite(c.q)) throw DomainError("constant flux must be finite");
                 },
                 [](const PiecewiseConstantFlux& p) {
                   require_increasing(p.breakpoints, "breakpoints");
                   if (p.values.size() != p.breakpoints.size() + 1) {
                     throw DomainError("piecewise schedule needs one more value than breakpoints");
                   }
                   for (double v : p.values) {
                     if (!std::isfinite(v)) throw DomainError("flux values must be finite");
                   }
                 },
                 [](const TableFlux& t) {
                   if (t.t.empty() || t.t.size() != t.q.size()) {
                     throw DomainError("flux table needs matching, non-empty t and q columns");
                   }
                   require_increasing(t.t, "table times");
                   for (double v : t.q) {
                     if (!std::isfinite(v)) throw DomainError("flux values must be finite");
                   }
                 },
             },
             schedule);
}

double flux_at(const FluxSchedule& schedule, double t) {
  return std::visit(
      overloaded{
          [](const ConstantFlux& c) { return c.q; },
          [&](const PiecewiseConstantFlux& p) {
            const auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), t);
            return p.values[static_cast<std::size_t>(it - p.breakpoints.begin())];
          },
          [&](const TableFlux& tab) {
            if (t <= tab.t.front()) return tab.q.front();
            if (t >= tab.t.back()) return tab.q.back();
            const auto it = std::upper_bound(tab.t.begin(), tab.t.end(), t);
            const std::size_t i = static_cast<std::size_t>(it - tab.t.begin());
            const double w = (t - tab.t[i - 1]) / (tab.t[i] - tab.t[i - 1]);
            return (1.0 - w) * tab.q[i - 1] + w * tab.q[i];
          },
      },
      schedule);
}

double integrated_flux(const FluxSchedule& schedule, double t0, double t1) {
  if (t1 < t0) return -integrated_flux(schedule, t1, t0);
  return std::visit(
      overloaded{
          [&](const ConstantFlux& c) { return c.q * (t1 - t0); },
          [&](const PiecewiseConstantFlux& p) {
            double sum = 0.0;
            double lo = t0;
            for (std::size_t i = 0; i <= p.breakpoints.size(); ++i) {
              const double hi =
                  i < p.breakpoints.size() ? std::min(p.breakpoints[i], t1) : t1;
              if (hi > lo) {
                sum += p.values[i] * (hi - lo);
                lo = hi;
              }
            }
            return sum;
          },
          [&](const TableFlux& tab) { return table_integral(tab, t0, t1); },
      },
      schedule);
}

std::vector<double> schedule_breakpoints(const FluxSchedule& schedule) {
  return std::visit(overloaded{
                        [](const ConstantFlux&) { return std::vector<double>{}; },
                        [](const PiecewiseConstantFlux& p) { return p.breakpoints; },
                        [](const TableFlux& t) { return t.t; },
                    },
                    schedule);
}

ShapeRates rate_from_flux(const Shape& shape, double q) {
  validate(shape);
  if (const auto ev = detect_terminal(shape)) {
    throw DegenerateShapeError("shape is at the terminal configuration " +
                               std::string(terminal_name(ev->kind)));
  }
  return std::visit(
      overloaded{
          [&](const Circle& s) { return ShapeRates{q / (2.0 * kPi * s.a), 0.0}; },
          [&](const Ellipse& s) {
            const double a_dot = q / (2.0 * kPi * s.b);
            return ShapeRates{a_dot, s.b / s.a * a_dot};
          },
          [&](const NeumannOval& s) {
            const double a_dot = q / (2.0 * kPi * s.a);
            return ShapeRates{a_dot, s.a * a_dot / s.b};
          },
          [&](const CassiniOval& s) {
            const double ratio = s.b / s.a;
            const double x = ratio * ratio * ratio * ratio;
            return ShapeRates{q / (2.0 * kPi * s.a * specfun::hyp2f1_half(x)), 0.0};
          },
      },
      shape);
}

std::string_view terminal_name(TerminalKind kind) {
  switch (kind) {
    case TerminalKind::neumann_split: return "neumann_split";
    case TerminalKind::cassini_lemniscate: return "cassini_lemniscate";
    case TerminalKind::circle_vanish: return "circle_vanish";
    case TerminalKind::ellipse_vanish: return "ellipse_vanish";
    case TerminalKind::time_end: return "time_end";
  }
  return "unknown";
}

TerminalKind parse_terminal(std::string_view name) {
  for (auto k : {TerminalKind::neumann_split, TerminalKind::cassini_lemniscate,
                 TerminalKind::circle_vanish, TerminalKind::ellipse_vanish,
                 TerminalKind::time_end}) {
    if (terminal_name(k) == name) return k;
  }
  throw DomainError("unknown terminal event '" + std::string(name) + "'");
}

double terminal_distance(const Shape& shape) {
  return std::visit(overloaded{
                        [](const Circle& s) { return s.a; },
                        [](const Ellipse& s) { return s.a; },
                        [](const NeumannOval& s) { return s.b * s.b / (s.a + s.d()); },
                        [](const CassiniOval& s) { return s.a - s.b; },
                    },
                    shape);
}

std::optional<TerminalEvent> detect_terminal(const Shape& shape, double tol) {
  // The slack absorbs the representation error of parameters set exactly on
  // the tolerance, e.g. a = 1 + 1e-9.
  if (terminal_distance(shape) <= tol * (1.0 + 1e-6)) {
    return TerminalEvent{event_kind(family_of(shape)), 0.0};
  }
  return std::nullopt;
}

std::optional<TerminalEvent> detect_terminal(const Shape& shape) {
  return detect_terminal(shape, 1e-9 * scale(shape));
}

namespace {

// Like flux_at, but piecewise values are taken from the interval ending at t.
double flux_left_limit(const FluxSchedule& schedule, double t) {
  if (const auto* p = std::get_if<PiecewiseConstantFlux>(&schedule)) {
    const auto it = std::lower_bound(p->breakpoints.begin(), p->breakpoints.end(), t);
    return p->values[static_cast<std::size_t>(it - p->breakpoints.begin())];
  }
  return flux_at(schedule, t);
}

}  // namespace

Trajectory evolve(const Shape& shape0, const FluxSchedule& schedule, double t_end, double dt,
                  const Mobility& mob, const EvolveOptions& options) {
  validate(shape0);
  validate(mob);
  validate(schedule);
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw StepTooLarge("time step must be positive and finite, got " + std::to_string(dt));
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw DomainError("end time must be non-negative and finite");
  }

  const Parametrisation param(shape0);
  const double tol = options.tol_event * scale(shape0);
  const Family family = family_of(shape0);

  Trajectory traj;
  traj.samples.push_back(
      make_sample(0.0, shape0, flux_at(schedule, 0.0), mob, options.record_fluxes));
  if (detect_terminal(shape0, tol)) {
    traj.terminal = {event_kind(family), 0.0};
    return traj;
  }

  auto rhs = [&](double q, double a) { return rate_from_flux(param.shape(a), q).a_dot; };
  // One RK4 step; throws DegenerateShapeError when a stage leaves the family.
  // Steps never straddle a breakpoint, and the last stage takes the limit from
  // the left so that a step ending on one sees only its own piece.
  auto rk4 = [&](double t, double a, double h) {
    const double q_mid = flux_at(schedule, t + 0.5 * h);
    const double k1 = rhs(flux_at(schedule, t), a);
    const double k2 = rhs(q_mid, a + 0.5 * h * k1);
    const double k3 = rhs(q_mid, a + 0.5 * h * k2);
    const double k4 = rhs(flux_left_limit(schedule, t + h), a + h * k3);
    return a + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };
  // Distance to the terminal configuration after a step of length h, or a
  // negative value if the step crossed it.
  auto probe = [&](double t, double a, double h, double& a_next) {
    try {
      a_next = rk4(t, a, h);
      return terminal_distance(param.shape(a_next));
    } catch (const DegenerateShapeError&) {
      return -1.0;
    }
  };

  std::vector<double> breaks;
  for (double b : schedule_breakpoints(schedule)) {
    if (b > 0.0 && b < t_end) breaks.push_back(b);
  }
  std::size_t next_break = 0;

  double t = 0.0;
  double a = param_a(shape0);
  while (t < t_end) {
    double t_next = std::min(t + dt, t_end);
    while (next_break < breaks.size() && breaks[next_break] <= t) ++next_break;
    if (next_break < breaks.size() && breaks[next_break] < t_next) t_next = breaks[next_break];
    // Absorb a sliver left by rounding instead of taking a vanishing step.
    if (t_end - t_next < 1e-12 * dt) t_next = t_end;
    double h = t_next - t;

    // A step that crosses the terminal configuration is halved until it
    // either stays clear of it or lands within the tolerance band, so the
    // event is approached with geometrically shrinking steps.
    double a_next = 0.0;
    double dist = probe(t, a, h, a_next);
    bool resolved = false;
    while (!(dist > 0.0)) {
      h *= 0.5;
      if (h <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t)) {
        // Localised to time resolution: the approach is singular in a.
        resolved = true;
        break;
      }
      dist = probe(t, a, h, a_next);
    }
    if (!resolved) {
      t = h == t_next - t ? t_next : t + h;
      a = a_next;
      traj.samples.push_back(make_sample(t, param.shape(a), flux_at(schedule, t), mob,
                                         options.record_fluxes));
      if (dist > tol) continue;
    }
    if (traj.samples.size() == 1 && resolved) {
      throw StepTooLarge("could not take a first step from t = 0");
    }
    traj.terminal = {event_kind(family), t};
    return traj;
  }
  traj.terminal = {TerminalKind::time_end, t};
  return traj;
}

}  // namespace muskat
