#pragma once

// Time integration of the shape parameters under a prescribed total flux
// into Omega_2, with detection of the terminal configurations.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "muskat/shape.hpp"

namespace muskat {

struct ConstantFlux {
  double q = 0.0;
};
/// values[i] holds on [breakpoints[i-1], breakpoints[i]); values has one
/// more entry than breakpoints, which must be strictly increasing.
struct PiecewiseConstantFlux {
  std::vector<double> breakpoints;
  std::vector<double> values;
};
/// Linear interpolation through (t[i], q[i]), constant beyond the ends.
struct TableFlux {
  std::vector<double> t;
  std::vector<double> q;
};

using FluxSchedule = std::variant<ConstantFlux, PiecewiseConstantFlux, TableFlux>;

/// Throws DomainError on malformed schedules.
void validate(const FluxSchedule& schedule);
double flux_at(const FluxSchedule& schedule, double t);
/// Exact integral of the schedule over [t0, t1].
double integrated_flux(const FluxSchedule& schedule, double t0, double t1);
/// Times at which the schedule is not smooth.
std::vector<double> schedule_breakpoints(const FluxSchedule& schedule);

/// Admissible rates with dA/dt = q.  Throws DegenerateShapeError when the
/// shape sits on (or within the event tolerance of) a terminal configuration.
ShapeRates rate_from_flux(const Shape& shape, double q);

enum class TerminalKind { neumann_split, cassini_lemniscate, circle_vanish, ellipse_vanish, time_end };

std::string_view terminal_name(TerminalKind kind);
/// Inverse of terminal_name; throws DomainError on unknown names.
TerminalKind parse_terminal(std::string_view name);

struct TerminalEvent {
  TerminalKind kind = TerminalKind::time_end;
  double t = 0.0;
};

/// Distance of the shape from its family's terminal configuration:
/// a for circles and ellipses, a - d for Neumann ovals (b -> 0 at fixed d),
/// a - b for Cassini ovals.
double terminal_distance(const Shape& shape);

/// Terminal event (with t = 0) if terminal_distance <= tol, else nothing.
std::optional<TerminalEvent> detect_terminal(const Shape& shape, double tol);
/// Same with tol = 1e-9 * scale(shape).
std::optional<TerminalEvent> detect_terminal(const Shape& shape);

struct PartFlux {
  std::string support_kind;
  int fluid = 2;
  double flux = 0.0;
};

struct TrajectorySample {
  double t = 0.0;
  Shape shape = Circle{1.0};
  ShapeRates rates;
  double area = 0.0;
  std::vector<PartFlux> fluxes;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  TerminalEvent terminal;
};

struct EvolveOptions {
  /// Event tolerance relative to the initial scale.
  double tol_event = 1e-9;
  /// Build the mother body at every sample to record per-part fluxes.
  bool record_fluxes = true;
};

/// Classical fourth-order Runge-Kutta on the free parameter a; the family
/// invariant (b/a for ellipses, d for Neumann ovals, b for Cassini ovals)
/// is re-imposed algebraically after every stage.  Steps are split at the
/// schedule's breakpoints.  A step that would cross the terminal
/// configuration is halved until it lands short of it, so the event is
/// approached with geometrically shrinking steps and located to within
/// tol_event (or to time resolution where a is singular in t, as when a
/// circle vanishes).  Throws StepTooLarge for a non-positive dt or when not
/// even the first step can be taken.
Trajectory evolve(const Shape& shape0, const FluxSchedule& schedule, double t_end, double dt,
                  const Mobility& mob, const EvolveOptions& options = {});

}  // namespace muskat
