#pragma once

// Command-line front end: configuration, the simulate/field/verify/plot
// commands and their file formats.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "muskat/errors.hpp"
#include "muskat/evolution.hpp"
#include "muskat/shape.hpp"
#include "muskat/verify.hpp"

namespace muskat::cli {

/// Malformed configuration or input file.  Maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum ExitCode : int { kPass = 0, kVerifyFailed = 1, kConfigError = 2, kRuntimeError = 3 };

struct GridSpec {
  double x0 = -3.0, x1 = 3.0, y0 = -3.0, y1 = 3.0;
  int nx = 2, ny = 2;
};

struct RunConfig {
  Family family = Family::circle;
  double a0 = 1.0;
  double b0 = 1.0;  // ignored for circles
  Mobility mobility;
  FluxSchedule schedule = ConstantFlux{2.0 * kPi};
  std::string flux_spec = "const:6.283185307179586";
  double t_end = 1.0;
  double dt = 1e-3;
  std::optional<GridSpec> grid;
  std::string out;    // empty means standard output
  std::string input;  // plot input (trajectory JSON or field CSV)
  std::uint64_t seed = 0;
  std::optional<double> gamma;  // circle surface tension
  bool constant_area = false;   // ellipse constant-area variant
  double a_dot = 1.0;           // drives the constant-area variant
  std::optional<std::vector<std::string>> checks;
  double density_scale = 1.0;   // sensitivity hook for the density check
  int max_curves = 12;          // plot: interfaces drawn from a trajectory
};

/// Default parameters of each family (those of the reference figures).
RunConfig default_config(Family family);

/// Parses "const:<q>", "table:<path>" or "piecewise:<t1>,<t2>,...;<v0>,<v1>,...".
FluxSchedule parse_flux_spec(std::string_view spec);
/// Parses "x0,x1,y0,y1,nx,ny".
GridSpec parse_grid_spec(std::string_view spec);

/// Overlays the keys of a JSON config document on `base`.  Unknown keys and
/// wrongly typed values raise ConfigError naming the key.
RunConfig apply_json(RunConfig base, const nlohmann::json& doc);

/// Throws ConfigError (naming the offending field) unless the configuration
/// describes a valid run.
void validate(const RunConfig& config);

Shape initial_shape(const RunConfig& config);
/// Rates of the configured motion at t = 0: the flux schedule's rates, or the
/// constant-area rates of the variant.
ShapeRates initial_rates(const RunConfig& config);

nlohmann::json trajectory_to_json(const Trajectory& traj, const RunConfig& config);
/// Inverse of trajectory_to_json.  `rates`, `area` and `fluxes` may be
/// omitted in hand-written files.  Throws ConfigError on malformed input.
Trajectory trajectory_from_json(const nlohmann::json& doc);

/// Field CSV text: header x,y,fluid,pressure,vx,vy then one row per grid
/// point, row-major (x fastest).  Points within 1e-3 scale of a support have
/// empty pressure and velocity cells.
std::string field_csv(const RunConfig& config);

VerificationReport run_verify(const RunConfig& config);
nlohmann::json report_to_json(const VerificationReport& report, const RunConfig& config);

/// SVG of the interfaces of up to `max_curves` samples (first and last
/// included) with their mother-body supports: interfaces solid, point
/// supports as dots, cuts dashed.  Coordinates in the file are the physical
/// ones.  Throws ConfigError for an empty trajectory.
std::string trajectory_svg(const Trajectory& traj, int max_curves);
/// SVG heat map of the pressure column of a field CSV.
std::string field_svg(std::string_view csv);

/// Runs the command line; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace muskat::cli
