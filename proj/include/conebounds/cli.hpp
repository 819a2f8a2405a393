#pragma once

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "conebounds/error.hpp"
#include "conebounds/gauge_opt.hpp"
#include "conebounds/geometry.hpp"
#include "conebounds/io.hpp"
#include "conebounds/model_ops.hpp"
#include "conebounds/reduced_1d.hpp"
#include "conebounds/robin.hpp"

namespace conebounds::cli {

using io::json;
using io::RunConfig;

inline constexpr const char* version = "1.0.0";

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Usage: return 2;
    case ErrorKind::Geometry:
    case ErrorKind::Domain:
    case ErrorKind::Solver: return 3;
    case ErrorKind::Accuracy: return 4;
  }
  return 1;
}

struct RunOutcome {
  int exitCode = 0;
  json report;       // deterministic part, or the error object
  double wallTime = 0.0;
  std::string text;  // what goes to the output stream
};

namespace detail {

struct Context {
  const RunConfig& cfg;
  json result = json::object();
  json provenance = json::object();
  std::vector<std::string> warnings;
};

inline MagneticField need_field(const RunConfig& c) {
  if (!c.field) throw UsageError("command needs --field");
  return *c.field;
}

inline Polygon need_polygon(const Section& s) {
  if (const auto* p = std::get_if<Polygon>(&s)) return *p;
  throw UsageError("command needs a polygonal section");
}

inline std::vector<double> need_eps(const RunConfig& c) {
  if (c.eps.empty()) throw UsageError("command needs --eps");
  return c.eps;
}

inline void moments_cmd(Context& ctx) {
  const Section s = ctx.cfg.section();
  ctx.result["moments"] = io::to_json(moments(s));
  ctx.result["centroid"] = io::point_to_json(centroid(s));
  if (const auto* p = std::get_if<Polygon>(&s)) ctx.result["reversed"] = p->reversed();
  ctx.provenance["moments"] = "exact";
}

inline void gauge_cmd(Context& ctx) {
  const Moments m = moments(ctx.cfg.section());
  ctx.result["gauge"] = io::to_json(optimal_transverse_gauge(m));
  ctx.result["transverseNormSq"] = transverse_norm_sq(m);
  ctx.result["bruteForceGauge"] = io::to_json(brute_force_gauge(m));
  ctx.provenance = {{"gauge", "exact"}, {"transverseNormSq", "exact"}, {"bruteForceGauge", "oracle"}};
}

inline void bound_cmd(Context& ctx) {
  const auto r = rayleigh_upper_bounds(need_field(ctx.cfg), moments(ctx.cfg.section()), ctx.cfg.n);
  ctx.result = io::to_json(r);
  ctx.provenance = {{"e", "exact"}, {"transverseNormSq", "exact"}, {"gauge", "exact"}, {"bounds", "upper-bound"}};
}

inline void spectrum1d_cmd(Context& ctx) {
  const double lambda = ctx.cfg.lambda;
  GridSpec grid = default_grid(ReducedProblem(lambda).lambda());
  if (ctx.cfg.xMax) grid.xMax = *ctx.cfg.xMax;
  if (ctx.cfg.nPoints) {
    if (*ctx.cfg.nPoints < 0) throw UsageError("--npoints must be positive");
    grid.n = static_cast<std::size_t>(*ctx.cfg.nPoints);
  }
  const auto fd = fd_halfline_spectrum(lambda, grid, ctx.cfg.n);
  ctx.result = {{"lambda", lambda},
                {"exact", exact_reduced_spectrum(lambda, ctx.cfg.n)},
                {"fd", fd.values},
                {"h", fd.h},
                {"grid", {{"xMax", grid.xMax}, {"npoints", grid.n}}}};
  ctx.provenance = {{"exact", "exact"}, {"fd", "FD"}};
  ctx.warnings.insert(ctx.warnings.end(), fd.warnings.begin(), fd.warnings.end());
}

inline std::vector<double> theta_list(const RunConfig& c) {
  if (!c.theta.empty()) return c.theta;
  std::vector<double> t;
  for (int i = 0; i <= 8; ++i) t.push_back(0.5 * std::numbers::pi * i / 8.0);
  return t;
}

inline void model_cmd(Context& ctx) {
  const auto t0 = theta0_with_minimizer();
  if (ctx.cfg.subcommand == "theta0") {
    ctx.result = {{"theta0", t0.theta0}, {"xiStar", t0.xiStar}, {"xiStarSquared", t0.xiStar * t0.xiStar}};
    ctx.provenance = {{"theta0", "FD"}, {"xiStar", "FD"}};
  } else if (ctx.cfg.subcommand == "sigma") {
    if (ctx.cfg.theta.size() != 1) throw UsageError("model sigma needs one --theta");
    const double th = ctx.cfg.theta.front();
    const HalfPlaneGrid grid;
    ctx.result = {{"theta", th}, {"sigma", halfspace_sigma(th, grid, t0)}};
    ctx.provenance["sigma"] = th == 0.0 ? "FD (de Gennes)"
                              : th < grid.thetaMin ? "FD, interpolated from theta0 below thetaMin"
                                                   : "FD (half-plane)";
  } else {
    throw UsageError("model needs theta0 or sigma");
  }
}

inline json estimate_row(double eps, const EnergyEstimate& e) {
  return {{"eps", eps}, {"value", e.value}, {"lower", e.lower}, {"upper", e.upper}};
}

inline void ess_cmd(Context& ctx) {
  const MagneticField B = need_field(ctx.cfg);
  const Polygon poly = need_polygon(ctx.cfg.section());
  const auto list = essential_spectrum_limit(B, poly, need_eps(ctx.cfg), ctx.cfg.cFloor);
  json estimates = json::array(), rows = json::array();
  for (const auto& [e, est] : list) {
    json item = io::to_json(est);
    item["eps"] = e;
    estimates.push_back(item);
    rows.push_back(estimate_row(e, est));
  }
  ctx.result = {{"cylinder", io::to_json(cylinder_energy(B, poly, ctx.cfg.cFloor))},
                {"estimates", estimates},
                {"parameter", "eps"},
                {"rows", rows}};
  ctx.provenance = {{"cylinder", "two-sided (upper-bound / lower-bound)"},
                    {"estimates", "two-sided (upper-bound / lower-bound)"}};
}

inline void concentrate_cmd(Context& ctx) {
  const auto thr = concentration_threshold(need_field(ctx.cfg), ctx.cfg.section(), ctx.cfg.cFloor);
  json verdicts = json::array();
  for (double e : ctx.cfg.eps) verdicts.push_back(io::to_json(thr(e)));
  ctx.result = {{"e", thr.eConstant()}, {"floorUsed", thr.floorUsed()}, {"degenerate", thr.degenerate()},
                {"verdicts", verdicts}};
  ctx.result["epsilonStar"] = std::isfinite(thr.epsilonStar()) ? json(thr.epsilonStar()) : json(nullptr);
  ctx.provenance = {{"epsilonStar", "exact"}, {"vertexBound", "upper-bound"}, {"floorUsed", "lower-bound"}};
}

inline void edges_cmd(Context& ctx) {
  const Polygon poly = need_polygon(ctx.cfg.section());
  const auto eps = need_eps(ctx.cfg);
  if (eps.size() != 1) throw UsageError("edges needs a single --eps");
  ctx.result = io::to_json(truncated_domain_edges(poly, eps.front(), ctx.cfg.beta0));
  ctx.result["eps"] = eps.front();
  ctx.provenance = {{"lateral", "exact"}, {"cap", "exact"}};
}

inline void robin_cmd(Context& ctx) {
  const auto& c = ctx.cfg;
  if (c.subcommand == "wedge") {
    ctx.result = {{"alpha", c.alpha}, {"energy", robin_model_energy(RobinModel::Wedge, c.alpha)}};
    ctx.provenance["energy"] = "exact";
  } else if (c.subcommand == "halfspace") {
    ctx.result = {{"energy", robin_model_energy(RobinModel::HalfSpace)}};
    ctx.provenance["energy"] = "exact";
  } else if (c.subcommand == "cone") {
    const Section s = c.section();
    const Vec2 axis = c.axis ? *c.axis : centroid(s);
    ctx.result = {{"axis", io::point_to_json(axis)}, {"bound", robin_cone_upper_bound(BoundaryProfile(s, axis))}};
    ctx.provenance["bound"] = "upper-bound (quadrature)";
    if (c.axisScan > 0) {
      const auto scan = robin_axis_scan(s, c.axisScan);
      ctx.result["scan"] = {{"axis", io::point_to_json(scan.axis)}, {"bound", scan.bound},
                            {"evaluated", scan.evaluated}};
      ctx.provenance["scan"] = "upper-bound (quadrature)";
    }
  } else if (c.subcommand == "scaling") {
    const Section s = c.section();
    const auto eps = need_eps(c);
    json rows = json::array();
    for (double e : eps) {
      const Section se = scale_section(s, e);
      const BoundaryProfile p = c.axis ? BoundaryProfile(se, e * *c.axis) : BoundaryProfile(se);
      rows.push_back({{"eps", e}, {"bound", robin_cone_upper_bound(p)}});
    }
    ctx.result = {{"exponent", robin_scaling_exponent(s, eps, c.axis)}, {"parameter", "eps"}, {"rows", rows}};
    ctx.provenance = {{"exponent", "regression"}, {"bound", "upper-bound (quadrature)"}};
  } else {
    throw UsageError("robin needs wedge, halfspace, cone or scaling");
  }
}

inline void sweep_cmd(Context& ctx) {
  const auto& c = ctx.cfg;
  json rows = json::array();
  std::string parameter = "eps";
  if (c.subcommand == "sigma") {
    parameter = "theta";
    const auto t0 = theta0_with_minimizer();
    for (double th : theta_list(c)) rows.push_back({{"theta", th}, {"sigma", halfspace_sigma(th, {}, t0)}});
    ctx.provenance["sigma"] = "FD";
  } else if (c.subcommand == "ess") {
    for (const auto& [e, est] :
         essential_spectrum_limit(need_field(c), need_polygon(c.section()), need_eps(c), c.cFloor))
      rows.push_back(estimate_row(e, est));
    ctx.provenance["value"] = "two-sided (upper-bound / lower-bound)";
  } else {
    const Section s = c.section();
    for (double e : need_eps(c)) {
      const Section se = scale_section(s, e);
      json row = {{"eps", e}};
      if (c.subcommand == "bound") {
        const auto r = rayleigh_upper_bounds(need_field(c), moments(se), c.n);
        row["e"] = r.eConstant;
        for (const auto& [n, v] : r.bounds) row["bound" + std::to_string(n)] = v;
        ctx.provenance = {{"e", "exact"}, {"bound", "upper-bound"}};
      } else if (c.subcommand == "moments") {
        const Moments m = moments(se);
        row.update({{"area", m.area}, {"m0", m.m0}, {"m1", m.m1}, {"m2", m.m2}});
        ctx.provenance["moments"] = "exact";
      } else if (c.subcommand == "concentrate") {
        const auto v = concentration_threshold(need_field(c), s, c.cFloor)(e);
        row.update({{"vertexBound", v.vertexBound}, {"floorUsed", v.floorUsed}, {"holds", v.holds}});
        ctx.provenance = {{"vertexBound", "upper-bound"}, {"floorUsed", "lower-bound"}};
      } else if (c.subcommand == "robin") {
        row["bound"] = robin_cone_upper_bound(BoundaryProfile(se));
        ctx.provenance["bound"] = "upper-bound (quadrature)";
      } else {
        throw UsageError("sweep supports bound, moments, concentrate, robin, sigma, ess");
      }
      rows.push_back(row);
    }
  }
  ctx.result = {{"parameter", parameter}, {"rows", rows}};
}

inline std::string scalar_csv(const json& result) {
  std::string head, vals;
  for (const auto& [k, v] : result.items()) {
    if (!v.is_number()) continue;
    head += (head.empty() ? "" : ",") + k;
    vals += (vals.empty() ? "" : ",") + io::format_number(v.get<double>());
  }
  if (head.empty()) throw UsageError("result has no scalar columns for CSV");
  return head + "\n" + vals + "\n";
}

}  // namespace detail

/// Deterministic report text: the report without the wall-time envelope.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Dispatches one command. Never throws: errors become an error object and an exit code.
inline RunOutcome run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome out;
  try {
    cfg.validate();
    detail::Context ctx{cfg, json::object(), json::object(), {}};
    const std::string& cmd = cfg.command;
    if (cmd == "moments") detail::moments_cmd(ctx);
    else if (cmd == "gauge") detail::gauge_cmd(ctx);
    else if (cmd == "bound") detail::bound_cmd(ctx);
    else if (cmd == "spectrum1d") detail::spectrum1d_cmd(ctx);
    else if (cmd == "model") detail::model_cmd(ctx);
    else if (cmd == "ess") detail::ess_cmd(ctx);
    else if (cmd == "concentrate") detail::concentrate_cmd(ctx);
    else if (cmd == "edges") detail::edges_cmd(ctx);
    else if (cmd == "robin") detail::robin_cmd(ctx);
    else if (cmd == "sweep") detail::sweep_cmd(ctx);
    else throw UsageError("unknown command '" + cmd + "'");

    if (cfg.strict && !ctx.warnings.empty()) throw AccuracyError(ctx.warnings.front());
    out.report = {{"command", cmd},           {"input", io::to_json(cfg)}, {"result", ctx.result},
                  {"provenance", ctx.provenance}, {"warnings", ctx.warnings}, {"version", version},
                  {"seed", cfg.seed}};
    if (!cfg.plot.empty()) out.text = io::emit_plot_data(ctx.result, cfg.plot);
    else if (cfg.format == "csv") out.text = ctx.result.contains("rows") ? io::sweep_csv(ctx.result)
                                                                          : detail::scalar_csv(ctx.result);
  } catch (const Error& e) {
    out.exitCode = exit_code(e.kind());
    out.report = {{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}, {"version", version}};
    out.text.clear();
  }
  out.wallTime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.text.empty()) {
    json full = out.report;
    full["envelope"] = {{"wallTimeSeconds", out.wallTime}};
    out.text = dump(full);
  }
  return out;
}

}  // namespace conebounds::cli
