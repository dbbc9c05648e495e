// idealpoly: command-line front end.
//
// Exit codes: 0 success, 1 malformed input or usage, 2 validation or
// convergence failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "ideal/errors.hpp"
#include "ideal/ideal_hull.hpp"
#include "ideal/io.hpp"
#include "ideal/realize.hpp"
#include "ideal/svg.hpp"
#include "ideal/triangulation.hpp"

namespace {

using ideal::io::Json;

constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;

struct Options {
  std::string input;
  std::string output;
  std::string svg;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  int kmax = 6;
  int nmax = ideal::kDefaultMaxFlipGraphVertices;
  int n = 0;
  bool normalize = false;
  bool adjacency = false;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
  } else {
    ideal::io::write_file(o.output, text);
  }
}

Json load(const std::string& path) { return ideal::io::parse_json(ideal::io::read_file(path), path); }

ideal::IdealPolyhedron load_hull(const Options& o) {
  const auto cfg = ideal::io::configuration_from_json(load(o.input), o.normalize);
  return ideal::hull(cfg, o.tol.value_or(ideal::kCocircularTolerance));
}

int cmd_hull(const Options& o) {
  const auto p = load_hull(o);
  emit(o, ideal::io::dump(ideal::io::hull_report(p, o.kmax)));
  if (!o.svg.empty()) ideal::io::write_file(o.svg, ideal::render_svg(p));
  return 0;
}

int cmd_shears(const Options& o) {
  emit(o, ideal::io::dump(ideal::io::shears_to_json(ideal::metric_of(load_hull(o)))));
  return 0;
}

int cmd_angles(const Options& o) {
  emit(o, ideal::io::dump(ideal::io::angles_to_json(load_hull(o))));
  return 0;
}

int cmd_svg(const Options& o) {
  const auto p = load_hull(o);
  if (!o.svg.empty()) {
    ideal::io::write_file(o.svg, ideal::render_svg(p));
  } else {
    emit(o, ideal::render_svg(p));
  }
  return 0;
}

int cmd_realize(const Options& o) {
  ideal::RealizationConfig config;
  config.seed = o.seed;
  if (o.tol) config.tolerance = *o.tol;
  const auto target = ideal::io::shears_from_json(load(o.input));
  const auto result = ideal::realize({target, config});
  std::cout << ideal::io::dump(ideal::io::realization_report(result));
  if (!o.output.empty()) ideal::io::write_file(o.output, ideal::io::dump(ideal::io::points_to_json(result.configuration)));
  if (result.status != ideal::RealizationStatus::converged) {
    std::cerr << "error: realization " << ideal::to_string(result.status) << "\n";
    return kExitValidation;
  }
  return 0;
}

int cmd_check(const Options& o) {
  const Json report = ideal::io::check_report(load(o.input), o.kmax, o.tol.value_or(ideal::kCuspTolerance));
  emit(o, ideal::io::dump(report));
  return report["passed"].get<bool>() ? 0 : kExitValidation;
}

int cmd_flipgraph(const Options& o) {
  const auto g = ideal::flip_graph(o.n, o.nmax);
  emit(o, ideal::io::dump(ideal::io::flip_graph_summary(g, o.adjacency)));
  return g.connected ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ideal polyhedra, shear coordinates and Delaunay tessellations of the Riemann sphere"};
  app.require_subcommand(1);
  Options o;

  const auto add_points = [&](CLI::App* sub) {
    sub->add_option("points", o.input, "points file")->required();
    sub->add_flag("--normalize", o.normalize, "send v1, v2, v3 to 0, 1, inf first");
    sub->add_option("--tol", o.tol, "relative incircle tolerance")->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", o.output, "write to this file instead of stdout");
  };

  auto* hull = app.add_subcommand("hull", "polyhedron report for a points file");
  add_points(hull);
  hull->add_option("--kmax", o.kmax, "largest cutset size to certify");
  hull->add_option("--svg", o.svg, "also write an SVG picture");

  auto* shears = app.add_subcommand("shears", "shear file of the polyhedron of a points file");
  add_points(shears);
  auto* angles = app.add_subcommand("angles", "dihedral angles of the polyhedron of a points file");
  add_points(angles);
  auto* svg = app.add_subcommand("svg", "SVG picture of the tessellation");
  add_points(svg);
  svg->add_option("--svg", o.svg, "output SVG path");

  auto* realize = app.add_subcommand("realize", "vertex positions realizing a complete shear file");
  realize->add_option("shears", o.input, "shear file")->required();
  realize->add_option("--tol", o.tol, "residual tolerance")->check(CLI::PositiveNumber);
  realize->add_option("--seed", o.seed, "restart jitter seed (0: none on the first attempt)");
  realize->add_option("-o,--output", o.output, "write the solution points file here");

  auto* check = app.add_subcommand("check", "run every validator on a points, shear or report file");
  check->add_option("file", o.input, "input file")->required();
  check->add_option("--kmax", o.kmax, "largest cutset size to certify");
  check->add_option("--tol", o.tol, "tolerance for cusp sums and link ratios")->check(CLI::PositiveNumber);
  check->add_option("-o,--output", o.output, "write to this file instead of stdout");

  auto* flipgraph = app.add_subcommand("flipgraph", "exhaustive flip graph of the N-vertex sphere");
  flipgraph->add_option("N", o.n, "vertex count")->required();
  flipgraph->add_option("--nmax", o.nmax, "refuse N above this bound");
  flipgraph->add_flag("--adjacency", o.adjacency, "include fingerprints and adjacency lists");
  flipgraph->add_option("-o,--output", o.output, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*hull) return cmd_hull(o);
    if (*shears) return cmd_shears(o);
    if (*angles) return cmd_angles(o);
    if (*svg) return cmd_svg(o);
    if (*realize) return cmd_realize(o);
    if (*check) return cmd_check(o);
    if (*flipgraph) return cmd_flipgraph(o);
  } catch (const ideal::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ideal::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitParse;
}
