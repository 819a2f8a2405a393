#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conebounds/error.hpp"
#include "conebounds/gauge_opt.hpp"
#include "conebounds/geometry.hpp"
#include "conebounds/model_ops.hpp"

namespace conebounds::io {

using json = nlohmann::json;

inline Vec2 point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected a point [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json point_to_json(Vec2 p) { return json::array({p.x, p.y}); }

/// {"polygon": [[x, y], ...]} or {"disc": {"center": [x, y], "radius": r}}.
inline Section section_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("section must be a JSON object");
  const bool has_poly = j.contains("polygon"), has_disc = j.contains("disc");
  if (has_poly == has_disc) throw ParseError("section needs exactly one of 'polygon' or 'disc'");
  if (has_poly) {
    const json& v = j.at("polygon");
    if (!v.is_array()) throw ParseError("'polygon' must be an array of points");
    std::vector<Vec2> pts;
    for (const auto& p : v) pts.push_back(point_from_json(p));
    return Polygon(std::move(pts));
  }
  const json& d = j.at("disc");
  if (!d.is_object() || !d.contains("center") || !d.contains("radius") || !d.at("radius").is_number())
    throw ParseError("'disc' needs 'center' and numeric 'radius'");
  return Disc(point_from_json(d.at("center")), d.at("radius").get<double>());
}

inline json section_to_json(const Section& s) {
  if (const auto* p = std::get_if<Polygon>(&s)) {
    json pts = json::array();
    for (const auto& v : p->vertices()) pts.push_back(point_to_json(v));
    return {{"polygon", pts}};
  }
  const auto& d = std::get<Disc>(s);
  return {{"disc", {{"center", point_to_json(d.center)}, {"radius", d.radius}}}};
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Section from inline JSON text (starting with '{') or a file path.
inline Section load_section(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && source[first] == '{';
  return section_from_json(parse_text(inline_json ? source : read_file(source)));
}

inline json to_json(const Moments& m) {
  return {{"area", m.area}, {"M0", m.M0}, {"M1", m.M1}, {"M2", m.M2},
          {"m0", m.m0},     {"m1", m.m1}, {"m2", m.m2}};
}

inline json to_json(const TransverseGauge& g) { return json::array({{g.a, g.b}, {g.c, g.d}}); }

inline json to_json(const BoundResult& r) {
  json bounds = json::array();
  for (const auto& [n, v] : r.bounds) bounds.push_back({n, v});
  return {{"e", r.eConstant}, {"transverseNormSq", r.transverseNormSq}, {"gauge", to_json(r.optimalGauge)},
          {"bounds", bounds}};
}

inline json to_json(const EnergyEstimate& e) {
  json contributions = json::array();
  for (const auto& c : e.contributions) {
    json item = {{"what", c.what}, {"lower", c.lower}, {"source", c.source}};
    item["upper"] = std::isfinite(c.upper) ? json(c.upper) : json(nullptr);
    contributions.push_back(item);
  }
  return {{"kind", to_string(e.kind)}, {"value", e.value}, {"lower", e.lower}, {"upper", e.upper},
          {"source", e.source}, {"degenerate", e.degenerate}, {"contributions", contributions}};
}

inline json to_json(const ConcentrationVerdict& v) {
  json j = {{"epsilon", v.epsilon}, {"floorUsed", v.floorUsed}, {"vertexBound", v.vertexBound},
            {"holds", v.holds},     {"degenerate", v.degenerate}};
  j["epsilonStar"] = std::isfinite(v.epsilonStar) ? json(v.epsilonStar) : json(nullptr);
  return j;
}

inline json to_json(const TruncatedEdges& t) {
  return {{"lateral", t.lateral}, {"cap", t.cap}, {"beta0", t.beta0}, {"beta0Max", t.beta0Max},
          {"certified", t.certified}};
}

/// 17 significant digits.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("invalid number '" + item + "' in " + what);
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw ParseError("invalid number '" + item + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty list for " + what);
  return out;
}

inline MagneticField parse_field(const std::string& text) {
  const auto v = parse_list(text, "--field");
  if (v.size() != 3) throw ParseError("--field needs three components bx,by,bz");
  return {v[0], v[1], v[2]};
}

inline Vec2 parse_point(const std::string& text, const std::string& what) {
  const auto v = parse_list(text, what);
  if (v.size() != 2) throw ParseError(what + " needs two components x,y");
  return {v[0], v[1]};
}

/// Everything a CLI invocation needs, serializable for echo and replay.
struct RunConfig {
  std::string command;
  std::string subcommand;
  std::optional<std::string> sectionFile;
  std::optional<std::string> sectionInline;
  std::optional<MagneticField> field;
  int n = 3;
  std::vector<double> eps;
  std::vector<double> theta;
  double alpha = 0.0;
  double cFloor = 0.5;
  double beta0 = 0.3;
  double lambda = 1.0;
  std::optional<Vec2> axis;
  int axisScan = 0;
  std::optional<double> xMax;
  std::optional<int> nPoints;
  std::string format = "json";
  std::string output;
  std::string plot;
  bool strict = false;
  unsigned seed = 20240601;

  void validate() const {
    if (sectionFile && sectionInline) throw UsageError("give the section either inline or as a file, not both");
    for (double e : eps)
      if (!(e > 0.0)) throw UsageError("epsilon values must be positive");
    if (format != "json" && format != "csv") throw UsageError("output format must be json or csv");
  }

  bool has_section() const { return sectionFile.has_value() || sectionInline.has_value(); }

  Section section() const {
    if (sectionInline) return section_from_json(parse_text(*sectionInline));
    if (sectionFile) return load_section(*sectionFile);
    throw UsageError("command needs --section");
  }

  bool operator==(const RunConfig& o) const {
    auto same_field = [](const std::optional<MagneticField>& a, const std::optional<MagneticField>& b) {
      if (a.has_value() != b.has_value()) return false;
      return !a || (a->B1 == b->B1 && a->B2 == b->B2 && a->B3 == b->B3);
    };
    return command == o.command && subcommand == o.subcommand && sectionFile == o.sectionFile &&
           sectionInline == o.sectionInline && same_field(field, o.field) && n == o.n && eps == o.eps &&
           theta == o.theta && alpha == o.alpha && cFloor == o.cFloor && beta0 == o.beta0 &&
           lambda == o.lambda && axis == o.axis && axisScan == o.axisScan && xMax == o.xMax &&
           nPoints == o.nPoints && format == o.format && output == o.output && plot == o.plot &&
           strict == o.strict && seed == o.seed;
  }
};

inline json to_json(const RunConfig& c) {
  json j = {{"command", c.command}, {"subcommand", c.subcommand}, {"n", c.n},       {"eps", c.eps},
            {"theta", c.theta},     {"alpha", c.alpha},           {"cFloor", c.cFloor}, {"beta0", c.beta0},
            {"lambda", c.lambda},   {"axisScan", c.axisScan},     {"format", c.format}, {"output", c.output},
            {"plot", c.plot},       {"strict", c.strict},         {"seed", c.seed}};
  if (c.sectionFile) j["sectionFile"] = *c.sectionFile;
  if (c.sectionInline) j["sectionInline"] = *c.sectionInline;
  if (c.field) j["field"] = json::array({c.field->B1, c.field->B2, c.field->B3});
  if (c.axis) j["axis"] = point_to_json(*c.axis);
  if (c.xMax) j["xMax"] = *c.xMax;
  if (c.nPoints) j["nPoints"] = *c.nPoints;
  return j;
}

inline RunConfig run_config_from_json(const json& j) {
  try {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.subcommand = j.value("subcommand", "");
    if (j.contains("sectionFile")) c.sectionFile = j.at("sectionFile").get<std::string>();
    if (j.contains("sectionInline")) c.sectionInline = j.at("sectionInline").get<std::string>();
    if (j.contains("field")) {
      const auto f = j.at("field").get<std::vector<double>>();
      if (f.size() != 3) throw ParseError("'field' needs three components");
      c.field = MagneticField{f[0], f[1], f[2]};
    }
    c.n = j.value("n", c.n);
    c.eps = j.value("eps", c.eps);
    c.theta = j.value("theta", c.theta);
    c.alpha = j.value("alpha", c.alpha);
    c.cFloor = j.value("cFloor", c.cFloor);
    c.beta0 = j.value("beta0", c.beta0);
    c.lambda = j.value("lambda", c.lambda);
    if (j.contains("axis")) c.axis = point_from_json(j.at("axis"));
    c.axisScan = j.value("axisScan", c.axisScan);
    if (j.contains("xMax")) c.xMax = j.at("xMax").get<double>();
    if (j.contains("nPoints")) c.nPoints = j.at("nPoints").get<int>();
    c.format = j.value("format", c.format);
    c.output = j.value("output", c.output);
    c.plot = j.value("plot", c.plot);
    c.strict = j.value("strict", c.strict);
    c.seed = j.value("seed", c.seed);
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid run configuration: ") + e.what());
  }
}

/// Two-column (parameter, quantity) CSV from a sweep report {"parameter": name, "rows": [...]}.
inline std::string emit_plot_data(const json& report, const std::string& quantity) {
  if (!report.contains("rows") || !report.at("rows").is_array() || report.at("rows").empty())
    throw UsageError("report has no sweep rows");
  const std::string param = report.value("parameter", "");
  std::string out = param + "," + quantity + "\n";
  for (const auto& row : report.at("rows")) {
    if (!row.contains(param) || !row.contains(quantity) || !row.at(quantity).is_number())
      throw UsageError("unknown sweep quantity '" + quantity + "'");
    out += format_number(row.at(param).get<double>()) + "," + format_number(row.at(quantity).get<double>()) + "\n";
  }
  return out;
}

/// CSV of every numeric column of a sweep report: the parameter first, then by name.
inline std::string sweep_csv(const json& report) {
  if (!report.contains("rows") || !report.at("rows").is_array() || report.at("rows").empty())
    throw UsageError("report has no sweep rows");
  std::vector<std::string> cols;
  for (const auto& [k, v] : report.at("rows").front().items())
    if (v.is_number()) cols.push_back(k);
  const std::string param = report.value("parameter", "");
  std::stable_partition(cols.begin(), cols.end(), [&](const std::string& c) { return c == param; });
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& row : report.at("rows")) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      out += (i ? "," : "") + format_number(row.at(cols[i]).get<double>());
    out += "\n";
  }
  return out;
}

}  // namespace conebounds::io
