#include "muskat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "muskat/curves.hpp"
#include "muskat/fields.hpp"
#include "muskat/motherbody.hpp"

namespace muskat::cli {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  return s == "-0.000000" ? "0.000000" : s;
}

double parse_double(std::string_view text, std::string_view field) {
  const std::string s(text);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(field) + ": '" + s + "' is not a number");
  }
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_list(std::string_view text, std::string_view field) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_double(item, field));
  return out;
}

TableFlux read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("flux: cannot open table '" + path + "'");
  TableFlux table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    std::string t_text, q_text;
    if (!(row >> t_text) || t_text.front() == '#') continue;
    if (!(row >> q_text)) throw ConfigError("flux: table row '" + line + "' needs two columns");
    if (first && !std::isdigit(static_cast<unsigned char>(t_text.front())) &&
        t_text.front() != '-' && t_text.front() != '.' && t_text.front() != '+') {
      first = false;  // header line
      continue;
    }
    first = false;
    table.t.push_back(parse_double(t_text, "flux table"));
    table.q.push_back(parse_double(q_text, "flux table"));
  }
  return table;
}

json schedule_to_json(const FluxSchedule& schedule) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantFlux>) {
          return {{"type", "const"}, {"q", s.q}};
        } else if constexpr (std::is_same_v<T, PiecewiseConstantFlux>) {
          return {{"type", "piecewise"}, {"breakpoints", s.breakpoints}, {"values", s.values}};
        } else {
          return {{"type", "table"}, {"t", s.t}, {"q", s.q}};
        }
      },
      schedule);
}

template <class T>
T get_as(const json& value, std::string_view key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(key) + ": wrong type (" + std::string(value.type_name()) + ")");
  }
}

double get_number(const json& value, std::string_view key) {
  if (!value.is_number()) {
    throw ConfigError(std::string(key) + ": expected a number, got " + value.type_name());
  }
  return value.get<double>();
}

FluxSchedule schedule_from_json(const json& v) {
  if (v.is_string()) return parse_flux_spec(v.get<std::string>());
  if (!v.is_object() || !v.contains("type")) {
    throw ConfigError("flux: expected a spec string or an object with a 'type'");
  }
  const auto type = get_as<std::string>(v.at("type"), "flux.type");
  auto vec = [&](const char* key) {
    if (!v.contains(key)) throw ConfigError(std::string("flux.") + key + ": missing");
    return get_as<std::vector<double>>(v.at(key), std::string("flux.") + key);
  };
  if (type == "const") {
    if (!v.contains("q")) throw ConfigError("flux.q: missing");
    return ConstantFlux{get_number(v.at("q"), "flux.q")};
  }
  if (type == "piecewise") return PiecewiseConstantFlux{vec("breakpoints"), vec("values")};
  if (type == "table") return TableFlux{vec("t"), vec("q")};
  throw ConfigError("flux.type: unknown schedule type '" + type + "'");
}

Family family_from(std::string_view name) {
  try {
    return parse_family(name);
  } catch (const Error&) {
    throw ConfigError("family: unknown family '" + std::string(name) +
                      "' (expected circle, ellipse, neumann or cassini)");
  }
}

}  // namespace

// --- configuration -------------------------------------------------------------

RunConfig default_config(Family family) {
  RunConfig c;
  c.family = family;
  switch (family) {
    case Family::circle: c.a0 = c.b0 = 1.0; break;
    case Family::ellipse: c.a0 = 2.0; c.b0 = 1.0; break;
    case Family::neumann: c.a0 = 2.5; c.b0 = std::sqrt(5.0) / 2.0; break;
    case Family::cassini: c.a0 = 2.0; c.b0 = 1.0; break;
  }
  return c;
}

FluxSchedule parse_flux_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("flux: expected const:<q>, table:<path> or piecewise:<breaks>;<values>");
  }
  const auto kind = spec.substr(0, colon);
  const auto body = spec.substr(colon + 1);
  FluxSchedule schedule;
  if (kind == "const") {
    schedule = ConstantFlux{parse_double(body, "flux")};
  } else if (kind == "table") {
    schedule = read_table(std::string(body));
  } else if (kind == "piecewise") {
    const auto parts = split(body, ';');
    if (parts.size() != 2) throw ConfigError("flux: piecewise needs <breaks>;<values>");
    schedule = PiecewiseConstantFlux{parse_list(parts[0], "flux"), parse_list(parts[1], "flux")};
  } else {
    throw ConfigError("flux: unknown schedule kind '" + std::string(kind) + "'");
  }
  try {
    validate(schedule);
  } catch (const Error& e) {
    throw ConfigError(std::string("flux: ") + e.what());
  }
  return schedule;
}

GridSpec parse_grid_spec(std::string_view spec) {
  const auto v = parse_list(spec, "grid");
  if (v.size() != 6) throw ConfigError("grid: expected x0,x1,y0,y1,nx,ny");
  GridSpec g{v[0], v[1], v[2], v[3], static_cast<int>(v[4]), static_cast<int>(v[5])};
  if (static_cast<double>(g.nx) != v[4] || static_cast<double>(g.ny) != v[5]) {
    throw ConfigError("grid: nx and ny must be integers");
  }
  return g;
}

RunConfig apply_json(RunConfig c, const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "family") {
      c.family = family_from(get_as<std::string>(v, key));
    } else if (key == "a0") {
      c.a0 = get_number(v, key);
    } else if (key == "b0") {
      c.b0 = get_number(v, key);
    } else if (key == "k1") {
      c.mobility.k1 = get_number(v, key);
    } else if (key == "k2") {
      c.mobility.k2 = get_number(v, key);
    } else if (key == "flux") {
      c.schedule = schedule_from_json(v);
      c.flux_spec = v.is_string() ? v.get<std::string>() : v.dump();
    } else if (key == "t_end") {
      c.t_end = get_number(v, key);
    } else if (key == "dt") {
      c.dt = get_number(v, key);
    } else if (key == "grid") {
      if (v.is_string()) {
        c.grid = parse_grid_spec(v.get<std::string>());
      } else {
        const auto g = get_as<std::vector<double>>(v, key);
        if (g.size() != 6) throw ConfigError("grid: expected [x0,x1,y0,y1,nx,ny]");
        c.grid = GridSpec{g[0], g[1], g[2], g[3], static_cast<int>(g[4]), static_cast<int>(g[5])};
      }
    } else if (key == "out") {
      c.out = get_as<std::string>(v, key);
    } else if (key == "input") {
      c.input = get_as<std::string>(v, key);
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (key == "gamma") {
      c.gamma = get_number(v, key);
    } else if (key == "variant") {
      const auto name = get_as<std::string>(v, key);
      if (name != "constant-area" && name != "none") {
        throw ConfigError("variant: unknown variant '" + name + "'");
      }
      c.constant_area = name == "constant-area";
    } else if (key == "a_dot") {
      c.a_dot = get_number(v, key);
    } else if (key == "checks") {
      c.checks = get_as<std::vector<std::string>>(v, key);
    } else if (key == "density_scale") {
      c.density_scale = get_number(v, key);
    } else if (key == "max_curves") {
      c.max_curves = get_as<int>(v, key);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

void validate(const RunConfig& c) {
  try {
    validate(initial_shape(c));
  } catch (const InvalidShapeError& e) {
    throw ConfigError(std::string("a0/b0: ") + e.what());
  }
  if (!(c.mobility.k1 > 0.0) || !std::isfinite(c.mobility.k1)) {
    throw ConfigError("k1: mobility must be positive");
  }
  if (!(c.mobility.k2 > 0.0) || !std::isfinite(c.mobility.k2)) {
    throw ConfigError("k2: mobility must be positive");
  }
  try {
    validate(c.schedule);
  } catch (const Error& e) {
    throw ConfigError(std::string("flux: ") + e.what());
  }
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) throw ConfigError("dt: must be positive");
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) throw ConfigError("t_end: must be >= 0");
  if (c.grid) {
    const auto& g = *c.grid;
    if (g.nx < 2 || g.ny < 2) throw ConfigError("grid: resolution must be at least 2 x 2");
    if (!(g.x1 > g.x0) || !(g.y1 > g.y0)) throw ConfigError("grid: bounds must be increasing");
  }
  if (c.gamma && c.family != Family::circle) {
    throw ConfigError("gamma: surface tension is only available for the circle");
  }
  if (c.constant_area && c.family != Family::ellipse) {
    throw ConfigError("variant: the constant-area variant requires the ellipse");
  }
  if (c.gamma && c.constant_area) throw ConfigError("gamma: cannot combine with a variant");
  if (c.checks) {
    if (c.checks->empty()) throw ConfigError("checks: the check list is empty");
    const auto& known = verification_check_names();
    for (const auto& name : *c.checks) {
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw ConfigError("checks: unknown check '" + name + "'");
      }
    }
  }
  if (!(c.density_scale > 0.0)) throw ConfigError("density_scale: must be positive");
  if (c.max_curves < 1) throw ConfigError("max_curves: must be at least 1");
}

Shape initial_shape(const RunConfig& c) {
  return make_shape(c.family, c.a0, c.family == Family::circle ? c.a0 : c.b0);
}

ShapeRates initial_rates(const RunConfig& c) {
  const Shape shape = initial_shape(c);
  if (c.constant_area) return constant_area_rates(std::get<Ellipse>(shape), c.a_dot);
  return rate_from_flux(shape, flux_at(c.schedule, 0.0));
}

// --- trajectories -------------------------------------------------------------

json trajectory_to_json(const Trajectory& traj, const RunConfig& c) {
  json meta = {{"family", family_name(c.family)},
               {"mobility", {{"k1", c.mobility.k1}, {"k2", c.mobility.k2}}},
               {"schedule", schedule_to_json(c.schedule)},
               {"dt", c.dt},
               {"t_end", c.t_end}};
  json samples = json::array();
  for (const auto& s : traj.samples) {
    json fluxes = json::array();
    for (const auto& f : s.fluxes) {
      fluxes.push_back({{"support_kind", f.support_kind}, {"fluid", f.fluid}, {"flux", f.flux}});
    }
    samples.push_back({{"t", s.t},
                       {"params", {{"a", param_a(s.shape)}, {"b", param_b(s.shape)}}},
                       {"rates", {{"a_dot", s.rates.a_dot}, {"b_dot", s.rates.b_dot}}},
                       {"area", s.area},
                       {"fluxes", fluxes}});
  }
  return {{"meta", meta},
          {"samples", samples},
          {"terminal", {{"kind", terminal_name(traj.terminal.kind)}, {"t", traj.terminal.t}}}};
}

Trajectory trajectory_from_json(const json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("meta") || !doc.contains("samples")) {
      throw ConfigError("trajectory: expected an object with 'meta' and 'samples'");
    }
    const Family family = family_from(doc.at("meta").at("family").get<std::string>());
    Trajectory traj;
    for (const auto& s : doc.at("samples")) {
      TrajectorySample sample;
      sample.t = get_number(s.at("t"), "samples.t");
      const double a = get_number(s.at("params").at("a"), "samples.params.a");
      const double b = get_number(s.at("params").at("b"), "samples.params.b");
      sample.shape = make_shape(family, a, b);
      validate(sample.shape);
      if (s.contains("rates")) {
        sample.rates.a_dot = get_number(s.at("rates").at("a_dot"), "samples.rates.a_dot");
        sample.rates.b_dot = get_number(s.at("rates").at("b_dot"), "samples.rates.b_dot");
      }
      sample.area = s.contains("area") ? get_number(s.at("area"), "samples.area") : area(sample.shape);
      if (s.contains("fluxes")) {
        for (const auto& f : s.at("fluxes")) {
          sample.fluxes.push_back({f.at("support_kind").get<std::string>(), f.at("fluid").get<int>(),
                                   get_number(f.at("flux"), "samples.fluxes.flux")});
        }
      }
      traj.samples.push_back(std::move(sample));
    }
    if (doc.contains("terminal") && !doc.at("terminal").is_null()) {
      traj.terminal.kind = parse_terminal(doc.at("terminal").at("kind").get<std::string>());
      traj.terminal.t = get_number(doc.at("terminal").at("t"), "terminal.t");
    }
    return traj;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("trajectory: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("trajectory: ") + e.what());
  }
}

// --- field ----------------------------------------------------------------------

std::string field_csv(const RunConfig& c) {
  if (!c.grid) throw ConfigError("grid: the field command needs a grid");
  const Shape shape = initial_shape(c);
  const ShapeRates rates = initial_rates(c);
  const auto supports = support_geometry(shape);
  const double tube = 1e-3 * scale(shape);
  const auto& g = *c.grid;

  std::string out = "x,y,fluid,pressure,vx,vy\n";
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.y0 + (g.y1 - g.y0) * j / (g.ny - 1);
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x0 + (g.x1 - g.x0) * i / (g.nx - 1);
      const cplx z(x, y);
      const int fluid = fluid_at(shape, z);
      out += fmt17(x) + ',' + fmt17(y) + ',' + std::to_string(fluid) + ',';
      double near = std::numeric_limits<double>::infinity();
      for (const auto& [support, f] : supports) near = std::min(near, distance_to_support(support, z));
      if (near < tube) {
        out += ",,\n";
        continue;
      }
      double p;
      Vec2 v;
      if (c.constant_area) {
        p = pressure_ellipse_constant_area(shape, c.a_dot, c.mobility, fluid, z);
        v = velocity_ellipse_constant_area(shape, c.a_dot, c.mobility, fluid, z);
      } else if (c.gamma) {
        p = pressure_circle_surface_tension(shape, rates.a_dot, *c.gamma, c.mobility, fluid, z);
        v = velocity(shape, rates, c.mobility, fluid, z);
      } else {
        p = pressure(shape, rates, c.mobility, fluid, z);
        v = velocity(shape, rates, c.mobility, fluid, z);
      }
      out += fmt17(p) + ',' + fmt17(v.x) + ',' + fmt17(v.y) + '\n';
    }
  }
  return out;
}

// --- verify ---------------------------------------------------------------------

VerificationReport run_verify(const RunConfig& c) {
  VerifyOptions options;
  if (c.checks) options.checks = *c.checks;
  options.seed = c.seed;
  options.density_scale = c.density_scale;
  options.constant_area = c.constant_area;
  const Shape shape = initial_shape(c);
  const ShapeRates rates = c.constant_area ? ShapeRates{c.a_dot, 0.0} : initial_rates(c);
  return run_verification(shape, rates, c.mobility, options);
}

json report_to_json(const VerificationReport& report, const RunConfig& c) {
  const ShapeRates rates = initial_rates(c);
  json checks = json::array();
  for (const auto& ch : report.checks) {
    checks.push_back({{"name", ch.name},
                      {"residual", ch.residual},
                      {"tolerance", ch.tolerance},
                      {"passed", ch.passed},
                      {"samples", ch.samples},
                      {"detail", ch.detail}});
  }
  return {{"family", family_name(c.family)},
          {"params", {{"a", c.a0}, {"b", param_b(initial_shape(c))}}},
          {"rates", {{"a_dot", rates.a_dot}, {"b_dot", rates.b_dot}}},
          {"mobility", {{"k1", c.mobility.k1}, {"k2", c.mobility.k2}}},
          {"variant", c.constant_area ? "constant-area" : "none"},
          {"seed", report.seed},
          {"passed", report.passed()},
          {"checks", checks}};
}

// --- SVG ------------------------------------------------------------------------

namespace {

constexpr int kPixels = 600;

std::string svg_header(double extent) {
  const std::string e = fmt6(extent), w = fmt6(2.0 * extent);
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kPixels) +
         "\" height=\"" + std::to_string(kPixels) + "\" viewBox=\"-" + e + " -" + e + " " + w +
         " " + w + "\">\n<rect x=\"-" + e + "\" y=\"-" + e + "\" width=\"" + w + "\" height=\"" +
         w + "\" fill=\"white\"/>\n";
}

// End of a ray clipped to the square [-extent, extent]^2.
cplx clip_ray(cplx origin, double direction, double extent) {
  const cplx u = std::polar(1.0, direction);
  double t = std::numeric_limits<double>::infinity();
  if (u.real() > 1e-15) t = std::min(t, (extent - origin.real()) / u.real());
  if (u.real() < -1e-15) t = std::min(t, (-extent - origin.real()) / u.real());
  if (u.imag() > 1e-15) t = std::min(t, (extent - origin.imag()) / u.imag());
  if (u.imag() < -1e-15) t = std::min(t, (-extent - origin.imag()) / u.imag());
  return origin + std::max(t, 0.0) * u;
}

std::string legend(double extent, bool supports) {
  const double fs = 0.045 * extent;
  const double x = -0.95 * extent;
  double y = -0.95 * extent + fs;
  std::string out = "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"" + fmt6(fs) + "\">\n";
  auto item = [&](const std::string& sample, const std::string& label) {
    out += sample + "<text x=\"" + fmt6(x + 2.2 * fs) + "\" y=\"" + fmt6(y + 0.35 * fs) + "\">" +
           label + "</text>\n";
    y += 1.4 * fs;
  };
  const std::string stroke = "vector-effect=\"non-scaling-stroke\"";
  item("<line x1=\"" + fmt6(x) + "\" y1=\"" + fmt6(y) + "\" x2=\"" + fmt6(x + 1.6 * fs) +
           "\" y2=\"" + fmt6(y) + "\" stroke=\"black\" stroke-width=\"1.5\" " + stroke + "/>",
       "interface");
  if (supports) {
    item("<circle cx=\"" + fmt6(x + 0.8 * fs) + "\" cy=\"" + fmt6(y) + "\" r=\"" +
             fmt6(0.3 * fs) + "\" fill=\"black\"/>",
         "singularity");
    item("<line x1=\"" + fmt6(x) + "\" y1=\"" + fmt6(y) + "\" x2=\"" + fmt6(x + 1.6 * fs) +
             "\" y2=\"" + fmt6(y) + "\" stroke=\"black\" stroke-width=\"1.5\" "
             "stroke-dasharray=\"6 4\" " + stroke + "/>",
         "cut");
  }
  return out + "</g>\n";
}

}  // namespace

std::string trajectory_svg(const Trajectory& traj, int max_curves) {
  if (traj.samples.empty()) throw ConfigError("plot: the trajectory has no samples");
  std::vector<std::size_t> picks;
  const std::size_t n = traj.samples.size();
  const std::size_t m = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(max_curves, 1)));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t idx = m == 1 ? n - 1 : (i * (n - 1) + (m - 1) / 2) / (m - 1);
    if (picks.empty() || picks.back() != idx) picks.push_back(idx);
  }

  constexpr int kOutline = 400;
  double reach = 0.0;
  for (std::size_t idx : picks) {
    const Shape& shape = traj.samples[idx].shape;
    for (const cplx& z : boundary_points(shape, kOutline)) reach = std::max(reach, std::abs(z));
    for (const auto& [support, fluid] : support_geometry(shape)) {
      if (const auto* p = std::get_if<PointSink>(&support)) reach = std::max(reach, std::abs(p->z));
      if (const auto* r = std::get_if<Ray>(&support)) reach = std::max(reach, std::abs(r->origin));
      if (const auto* s = std::get_if<Segment>(&support)) {
        reach = std::max({reach, std::abs(s->z1), std::abs(s->z2)});
      }
    }
  }
  const double extent = 1.3 * reach;

  std::string out = svg_header(extent);
  out += "<g transform=\"scale(1,-1)\">\n";
  bool any_support = false;
  for (std::size_t idx : picks) {
    const auto& sample = traj.samples[idx];
    out += "<g class=\"sample\" data-t=\"" + fmt17(sample.t) + "\" data-a=\"" +
           fmt17(param_a(sample.shape)) + "\" data-b=\"" + fmt17(param_b(sample.shape)) + "\">\n";
    out += "<path class=\"interface\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" "
           "vector-effect=\"non-scaling-stroke\" d=\"";
    const auto pts = boundary_points(sample.shape, kOutline);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out += (i == 0 ? "M" : " L") + fmt6(pts[i].real()) + "," + fmt6(pts[i].imag());
    }
    out += " Z\"/>\n";
    for (const auto& [support, fluid] : support_geometry(sample.shape)) {
      const std::string cls = fluid == 1 ? "exterior" : "interior";
      if (const auto* p = std::get_if<PointSink>(&support)) {
        any_support = true;
        out += "<circle class=\"singularity " + cls + "\" cx=\"" + fmt6(p->z.real()) +
               "\" cy=\"" + fmt6(p->z.imag()) + "\" r=\"" + fmt6(0.015 * extent) +
               "\" fill=\"black\"/>\n";
      } else if (std::holds_alternative<Ray>(support) || std::holds_alternative<Segment>(support)) {
        any_support = true;
        cplx z1, z2;
        if (const auto* r = std::get_if<Ray>(&support)) {
          z1 = r->origin;
          z2 = clip_ray(r->origin, r->direction, extent);
        } else {
          z1 = std::get<Segment>(support).z1;
          z2 = std::get<Segment>(support).z2;
        }
        out += "<line class=\"cut " + cls + "\" x1=\"" + fmt6(z1.real()) + "\" y1=\"" +
               fmt6(z1.imag()) + "\" x2=\"" + fmt6(z2.real()) + "\" y2=\"" + fmt6(z2.imag()) +
               "\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" "
               "vector-effect=\"non-scaling-stroke\"/>\n";
      }
    }
    out += "</g>\n";
  }
  out += "</g>\n" + legend(extent, any_support) + "</svg>\n";
  return out;
}

std::string field_svg(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line != "x,y,fluid,pressure,vx,vy") {
    throw ConfigError("plot: field file must start with the header x,y,fluid,pressure,vx,vy");
  }
  struct Cell {
    double x, y, p;
  };
  std::vector<Cell> cells;
  std::set<double> xs, ys;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 6) throw ConfigError("plot: field row '" + line + "' needs 6 columns");
    const double x = parse_double(cols[0], "plot x"), y = parse_double(cols[1], "plot y");
    xs.insert(x);
    ys.insert(y);
    if (!cols[3].empty()) cells.push_back({x, y, parse_double(cols[3], "plot pressure")});
  }
  if (xs.size() < 2 || ys.size() < 2) throw ConfigError("plot: field grid must be at least 2 x 2");
  const double dx = (*xs.rbegin() - *xs.begin()) / (xs.size() - 1);
  const double dy = (*ys.rbegin() - *ys.begin()) / (ys.size() - 1);
  double pmax = 0.0;
  for (const auto& c : cells) pmax = std::max(pmax, std::abs(c.p));
  const double extent = std::max({std::abs(*xs.begin()), std::abs(*xs.rbegin()),
                                  std::abs(*ys.begin()), std::abs(*ys.rbegin())}) +
                        std::max(dx, dy);
  std::string out = svg_header(extent);
  out += "<g transform=\"scale(1,-1)\">\n";
  for (const auto& c : cells) {
    // Diverging map: blue for negative, red for positive pressure.
    const double u = pmax > 0.0 ? c.p / pmax : 0.0;
    const int fade = static_cast<int>(std::lround(255.0 * (1.0 - std::abs(u))));
    char color[8];
    if (u >= 0) {
      std::snprintf(color, sizeof color, "#ff%02x%02x", fade, fade);
    } else {
      std::snprintf(color, sizeof color, "#%02x%02xff", fade, fade);
    }
    out += "<rect x=\"" + fmt6(c.x - 0.5 * dx) + "\" y=\"" + fmt6(c.y - 0.5 * dy) +
           "\" width=\"" + fmt6(dx) + "\" height=\"" + fmt6(dy) + "\" fill=\"" + color + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

// --- command line ----------------------------------------------------------------

namespace {

struct Flags {
  std::string config, family, flux, grid, out, input, variant, checks;
  double a0 = 0, b0 = 0, k1 = 0, k2 = 0, t_end = 0, dt = 0, gamma = 0, a_dot = 0,
         density_scale = 0;
  std::uint64_t seed = 0;
  int max_curves = 0;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON configuration file");
  cmd->add_option("--family", f.family, "circle, ellipse, neumann or cassini");
  cmd->add_option("--a0", f.a0, "initial parameter a");
  cmd->add_option("--b0", f.b0, "initial parameter b");
  cmd->add_option("--k1", f.k1, "mobility of the exterior fluid");
  cmd->add_option("--k2", f.k2, "mobility of the interior fluid");
  cmd->add_option("--flux", f.flux, "const:<q>, table:<path> or piecewise:<breaks>;<values>");
  cmd->add_option("--t-end", f.t_end, "final time");
  cmd->add_option("--dt", f.dt, "time step");
  cmd->add_option("--grid", f.grid, "x0,x1,y0,y1,nx,ny");
  cmd->add_option("--out", f.out, "output file (default: standard output)");
  cmd->add_option("--seed", f.seed, "seed for randomised checks");
  cmd->add_option("--gamma", f.gamma, "surface tension (circle only)");
  cmd->add_option("--variant", f.variant, "constant-area (ellipse only)");
  cmd->add_option("--a-dot", f.a_dot, "rate of a for the constant-area variant");
  cmd->add_option("--checks", f.checks, "comma-separated verification checks");
  cmd->add_option("--density-scale", f.density_scale, "multiplier on the densities (test hook)");
  cmd->add_option("--input", f.input, "trajectory JSON or field CSV to plot");
  cmd->add_option("--max-curves", f.max_curves, "interfaces drawn from a trajectory");
}

bool given(const CLI::App* cmd, const char* name) { return cmd->count(name) > 0; }

RunConfig build_config(const CLI::App* cmd, const Flags& f) {
  json doc = json::object();
  if (given(cmd, "--config")) {
    std::ifstream in(f.config);
    if (!in) throw ConfigError("config: cannot open '" + f.config + "'");
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  }
  Family family = Family::circle;
  if (given(cmd, "--family")) {
    family = family_from(f.family);
  } else if (doc.contains("family")) {
    family = family_from(get_as<std::string>(doc.at("family"), "family"));
  }
  RunConfig c = apply_json(default_config(family), doc);
  c.family = family;

  if (given(cmd, "--a0")) c.a0 = f.a0;
  if (given(cmd, "--b0")) c.b0 = f.b0;
  if (given(cmd, "--k1")) c.mobility.k1 = f.k1;
  if (given(cmd, "--k2")) c.mobility.k2 = f.k2;
  if (given(cmd, "--flux")) {
    c.schedule = parse_flux_spec(f.flux);
    c.flux_spec = f.flux;
  }
  if (given(cmd, "--t-end")) c.t_end = f.t_end;
  if (given(cmd, "--dt")) c.dt = f.dt;
  if (given(cmd, "--grid")) c.grid = parse_grid_spec(f.grid);
  if (given(cmd, "--out")) c.out = f.out;
  if (given(cmd, "--input")) c.input = f.input;
  if (given(cmd, "--seed")) c.seed = f.seed;
  if (given(cmd, "--gamma")) c.gamma = f.gamma;
  if (given(cmd, "--variant")) {
    if (f.variant != "constant-area" && f.variant != "none") {
      throw ConfigError("variant: unknown variant '" + f.variant + "'");
    }
    c.constant_area = f.variant == "constant-area";
  }
  if (given(cmd, "--a-dot")) c.a_dot = f.a_dot;
  if (given(cmd, "--checks")) {
    std::vector<std::string> names;
    if (!f.checks.empty()) names = split(f.checks, ',');
    c.checks = names;
  }
  if (given(cmd, "--density-scale")) c.density_scale = f.density_scale;
  if (given(cmd, "--max-curves")) c.max_curves = f.max_curves;
  validate(c);
  return c;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw ConfigError("out: cannot write '" + c.out + "'");
  file << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("input: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int dispatch(const std::string& name, const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (name == "simulate") {
    const auto traj = evolve(initial_shape(c), c.schedule, c.t_end, c.dt, c.mobility);
    emit(c, trajectory_to_json(traj, c).dump(2) + "\n", out);
    return kPass;
  }
  if (name == "field") {
    emit(c, field_csv(c), out);
    return kPass;
  }
  if (name == "verify") {
    const auto report = run_verify(c);
    emit(c, report_to_json(report, c).dump(2) + "\n", out);
    for (const auto& ch : report.checks) {
      if (!ch.passed) {
        err << "check " << ch.name << " failed: residual " << ch.residual << " > tolerance "
            << ch.tolerance << "\n";
      }
    }
    return report.passed() ? kPass : kVerifyFailed;
  }
  // plot
  if (c.input.empty()) throw ConfigError("input: the plot command needs --input");
  const std::string text = read_file(c.input);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("input: ") + e.what());
    }
    emit(c, trajectory_svg(trajectory_from_json(doc), c.max_curves), out);
  } else {
    emit(c, field_svg(text), out);
  }
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact two-phase Hele-Shaw (Muskat) solutions: simulate, field, verify, plot"};
  app.require_subcommand(1);
  Flags flags;
  std::map<std::string, CLI::App*> commands;
  for (const char* name : {"simulate", "field", "verify", "plot"}) {
    static const std::map<std::string, std::string> help{
        {"simulate", "evolve the shape under a flux schedule and write a JSON trajectory"},
        {"field", "write pressure and velocity on a grid as CSV"},
        {"verify", "run the numerical verification suite and write a JSON report"},
        {"plot", "render a trajectory or field file as SVG"}};
    commands[name] = app.add_subcommand(name, help.at(name));
    add_common(commands[name], flags);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  for (const auto& [name, cmd] : commands) {
    if (!cmd->parsed()) continue;
    try {
      const RunConfig config = build_config(cmd, flags);
      return dispatch(name, config, out, err);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << "\n";
      return kConfigError;
    } catch (const Error& e) {
      err << "runtime error: " << e.what() << "\n";
      return kRuntimeError;
    } catch (const std::exception& e) {
      err << "runtime error: " << e.what() << "\n";
      return kRuntimeError;
    }
  }
  return kConfigError;
}

}  // namespace muskat::cli
