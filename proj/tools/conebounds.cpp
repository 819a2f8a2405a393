#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "conebounds/cli.hpp"

namespace cb = conebounds;

namespace {

struct RawArgs {
  std::string section, field, eps, theta, axis;
  double xMax = 0.0;
  int nPoints = 0;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw cb::UsageError("cannot write '" + path + "'");
  out << text;
}

int fail(const cb::Error& e) {
  const cb::io::json j = {{"error", {{"kind", cb::to_string(e.kind())}, {"message", e.what()}}},
                          {"version", cb::cli::version}};
  std::cout << j.dump(2) << "\n";
  return cb::cli::exit_code(e.kind());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper bounds for the magnetic Neumann Laplacian on cones"};
  app.require_subcommand(1);
  app.fallthrough();
  cb::io::RunConfig cfg;
  RawArgs raw;
  bool csv = false;

  app.add_flag("--csv", csv, "CSV output");
  app.add_flag("--strict", cfg.strict, "Escalate accuracy warnings to errors");
  app.add_option("-o,--output", cfg.output, "Output file (default stdout)");
  app.add_option("--plot", cfg.plot, "Emit (parameter, quantity) CSV for a sweep quantity");
  app.add_option("--seed", cfg.seed, "Seed recorded in the report");

  auto section = [&](CLI::App* s, bool required = true) {
    auto* o = s->add_option("--section", raw.section, "Section JSON file or inline JSON");
    if (required) o->required();
  };
  auto field = [&](CLI::App* s) { s->add_option("--field", raw.field, "bx,by,bz")->required(); };
  auto eps = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--eps", raw.eps, "Comma-separated epsilon list");
    if (required) o->required();
  };
  auto cfloor = [&](CLI::App* s) { s->add_option("--cfloor", cfg.cFloor, "Edge energy floor c(beta0) in (0,1]"); };
  auto nmax = [&](CLI::App* s) { s->add_option("--n", cfg.n, "Number of levels"); };

  auto* moments = app.add_subcommand("moments", "Exact section moments");
  section(moments);
  auto* gauge = app.add_subcommand("gauge", "Optimal transverse gauge");
  section(gauge);
  auto* bound = app.add_subcommand("bound", "Rayleigh-quotient upper bounds");
  section(bound);
  field(bound);
  nmax(bound);
  auto* spec = app.add_subcommand("spectrum1d", "Reduced half-line spectrum");
  spec->add_option("--lambda", cfg.lambda, "Coefficient lambda > 0");
  spec->add_option("--xmax", raw.xMax, "Truncation length");
  spec->add_option("--npoints", raw.nPoints, "Interior grid points");
  nmax(spec);

  auto* model = app.add_subcommand("model", "Model operators");
  model->require_subcommand(1);
  model->add_subcommand("theta0", "de Gennes constant");
  auto* sigma = model->add_subcommand("sigma", "Half-space energy");
  sigma->add_option("--theta", raw.theta, "Angle in [0, pi/2]")->required();

  auto* ess = app.add_subcommand("ess", "Essential spectrum estimates along an epsilon ladder");
  section(ess);
  field(ess);
  eps(ess, true);
  cfloor(ess);
  auto* conc = app.add_subcommand("concentrate", "Corner concentration threshold");
  section(conc);
  field(conc);
  eps(conc, false);
  cfloor(conc);
  auto* edges = app.add_subcommand("edges", "Edge openings of the truncated sharp cone");
  section(edges);
  eps(edges, true);
  edges->add_option("--beta0", cfg.beta0, "Opening bound to certify");

  auto* robin = app.add_subcommand("robin", "Robin Laplacian analogue");
  robin->require_subcommand(1);
  robin->add_subcommand("wedge", "Wedge energy")->add_option("--alpha", cfg.alpha, "Opening")->required();
  robin->add_subcommand("halfspace", "Half-space energy");
  auto* rcone = robin->add_subcommand("cone", "Cone upper bound");
  section(rcone);
  rcone->add_option("--axis", raw.axis, "Axis point x,y (default: centroid)");
  rcone->add_option("--scan", cfg.axisScan, "Scan axis points on an N x N grid");
  auto* rscale = robin->add_subcommand("scaling", "Scaling exponent of the cone bound");
  section(rscale);
  eps(rscale, true);
  rscale->add_option("--axis", raw.axis, "Axis point x,y, scaled with epsilon");

  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps");
  sweep->require_subcommand(1);
  for (const char* name : {"bound", "moments", "concentrate", "robin", "ess"}) {
    auto* s = sweep->add_subcommand(name, std::string("Sweep ") + name + " over epsilon");
    section(s);
    eps(s, true);
    if (std::string(name) == "bound" || std::string(name) == "concentrate" || std::string(name) == "ess") field(s);
    if (std::string(name) == "bound") nmax(s);
    if (std::string(name) == "concentrate" || std::string(name) == "ess") cfloor(s);
  }
  sweep->add_subcommand("sigma", "Sweep sigma over theta")->add_option("--theta", raw.theta, "Angle list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(cb::UsageError(e.what()));
  }

  try {
    const auto* top = app.get_subcommands().front();
    cfg.command = top->get_name();
    if (!top->get_subcommands().empty()) cfg.subcommand = top->get_subcommands().front()->get_name();
    if (!raw.section.empty()) {
      if (raw.section.find_first_not_of(" \t") != std::string::npos &&
          raw.section[raw.section.find_first_not_of(" \t")] == '{')
        cfg.sectionInline = raw.section;
      else
        cfg.sectionFile = raw.section;
    }
    if (!raw.field.empty()) cfg.field = cb::io::parse_field(raw.field);
    if (!raw.eps.empty()) cfg.eps = cb::io::parse_list(raw.eps, "--eps");
    if (!raw.theta.empty()) cfg.theta = cb::io::parse_list(raw.theta, "--theta");
    if (!raw.axis.empty()) cfg.axis = cb::io::parse_point(raw.axis, "--axis");
    if (raw.xMax != 0.0) cfg.xMax = raw.xMax;
    if (raw.nPoints != 0) cfg.nPoints = raw.nPoints;
    if (csv) cfg.format = "csv";
    if (const char* env = std::getenv("CONEBOUNDS_STRICT"); env && std::string(env) == "1") cfg.strict = true;

    const auto outcome = cb::cli::run(cfg);
    if (outcome.exitCode != 0) {
      std::cout << outcome.text;
      return outcome.exitCode;
    }
    emit(outcome.text, cfg.output);
    return 0;
  } catch (const cb::Error& e) {
    return fail(e);
  }
}
