#include "tropharm/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "tropharm/collar.hpp"
#include "tropharm/convergence.hpp"
#include "tropharm/error.hpp"
#include "tropharm/forms.hpp"
#include "tropharm/io.hpp"
#include "tropharm/morphism.hpp"
#include "tropharm/phase.hpp"

namespace tropharm::cli {

namespace {

using io::Json;

struct Config {
  double tol = 1e-9;
  std::string out_path;
  bool quiet = false;

  std::string graph_path;
  std::string residues_path;
  std::string twists_path;
  std::string base_vertex;
  double ray_length = 1.0;
  bool svg = false;
  bool json = false;

  std::vector<std::string> a_edges;
  std::vector<std::string> puncture_leaves;

  std::vector<double> t_values{1e3, 1e4, 1e5, 1e6};
  double kappa = kDefaultKappa;
  std::string window;
  std::size_t density = 1;
  double resolution = 0.01;
  std::string csv_path;

  std::optional<double> length;
  std::string sweep;
  bool annulus = false;
  double tropical_length = 1.0;
};

MetricGraph load_graph(const Config& c) { return io::graph_from_json(io::read_json_file(c.graph_path)); }

ResidueMatrix load_residues(const Config& c, const MetricGraph& g) {
  return io::residues_from_json(io::read_json_file(c.residues_path), g);
}

std::size_t base_index(const Config& c, const MetricGraph& g) {
  if (c.base_vertex.empty()) return 0;
  const auto v = g.find_vertex(c.base_vertex);
  if (!v) fail(ErrorCode::UnknownVertex, "unknown base vertex '" + c.base_vertex + "'");
  return *v;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) fail(ErrorCode::InvalidInput, "cannot write '" + path + "'");
}

class Emitter {
 public:
  Emitter(const Config& c, std::ostream& out) : config_(c), out_(out) {}
  void operator()(const std::string& text) const {
    if (!config_.out_path.empty()) write_file(config_.out_path, text);
    else if (!config_.quiet) out_ << text;
  }
  void operator()(const Json& doc) const { (*this)(io::dump(doc)); }

 private:
  const Config& config_;
  std::ostream& out_;
};

Json cmd_check(const Config& c) {
  const MetricGraph g = load_graph(c);
  const auto dims = form_space_dims(g);
  return {{"valid", true},
          {"g", g.genus()},
          {"n", g.leaf_count()},
          {"vertices", g.vertex_count()},
          {"edges", g.edge_count()},
          {"dims", {dims.exact, dims.holomorphic}}};
}

Json cmd_solve(const Config& c) {
  const MetricGraph g = load_graph(c);
  const ResidueMatrix r = load_residues(c, g);
  const KirchhoffSolver solver(g);
  const auto loops = cycle_basis(g);
  Json forms = Json::array();
  Json balance = Json::array();
  Json exactness = Json::array();
  for (Eigen::Index k = 0; k < r.rows(); ++k) {
    const OneForm form = solver.solve(r.row(k));
    forms.push_back(io::to_json(form));
    balance.push_back(form.balance_defect());
    double worst = 0.0;
    for (const auto& loop : loops) worst = std::max(worst, std::abs(integrate(form, loop)));
    exactness.push_back(worst);
  }
  return {{"forms", forms},
          {"metadata",
           {{"rows", r.rows()},
            {"balance_defect", balance},
            {"loop_integral_max", exactness},
            {"total_length", g.total_length()}}}};
}

std::string cmd_embed(const Config& c) {
  const MetricGraph g = load_graph(c);
  const ResidueMatrix r = load_residues(c, g);
  if (!(c.ray_length > 0.0)) fail(ErrorCode::InvalidInput, "--ray-length must be positive");
  const auto morphism = build_morphism(g, r, base_index(c, g));
  const Scene scene = emit_embedding(morphism, c.ray_length);
  if (c.svg) return io::to_svg(scene);
  return io::dump(io::to_json(scene));
}

Json cmd_regularity(const Config& c) {
  const MetricGraph g = load_graph(c);
  const auto morphism = build_morphism(g, load_residues(c, g), base_index(c, g));
  const auto report = regularity_rank(g, morphism);
  return io::to_json(report);
}

Json cmd_twists_solve(const Config& c) {
  const MetricGraph g = load_graph(c);
  const auto morphism = build_morphism(g, load_residues(c, g), base_index(c, g));
  return io::to_json(solve_twists(g, morphism));
}

Json cmd_twists_check(const Config& c) {
  const MetricGraph g = load_graph(c);
  const ResidueMatrix r = load_residues(c, g);
  const auto morphism = build_morphism(g, r, base_index(c, g));
  const auto twists = io::twists_from_json(io::read_json_file(c.twists_path), g);
  Json doc = io::to_json(check_integrality(twists, morphism, c.tol));
  doc["period_matrix_integer"] = is_integer_period_matrix(limit_period_matrix(g, twists, r), c.tol);
  return doc;
}

Json cmd_periods(const Config& c) {
  const MetricGraph g = load_graph(c);
  const ResidueMatrix r = load_residues(c, g);
  const TwistAssignment twists =
      c.twists_path.empty() ? TwistAssignment::zero(g) : io::twists_from_json(io::read_json_file(c.twists_path), g);
  PeriodBasis basis = default_period_basis(g);
  if (!c.a_edges.empty()) {
    basis.a_edges.clear();
    for (const auto& id : c.a_edges) {
      const auto e = g.find_edge(id);
      if (!e) fail(ErrorCode::UnknownEdge, "unknown A-cycle edge '" + id + "'");
      basis.a_edges.push_back(*e);
    }
  }
  if (!c.puncture_leaves.empty()) {
    basis.puncture_leaves.clear();
    for (const auto& id : c.puncture_leaves) {
      const auto l = g.find_leaf(id);
      if (!l) fail(ErrorCode::UnknownLeaf, "unknown puncture leaf '" + id + "'");
      basis.puncture_leaves.push_back(*l);
    }
  }
  return io::to_json(limit_period_matrix(g, twists, r, basis), c.tol);
}

Box parse_window(const std::string& text, Eigen::Index dimension) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) fail(ErrorCode::InvalidInput, "--window expects 'lo,hi'");
  try {
    return Box::cube(dimension, std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidInput, "--window expects two numbers 'lo,hi'");
  }
}

Json cmd_degenerate(const Config& c) {
  const MetricGraph g = load_graph(c);
  const ResidueMatrix r = load_residues(c, g);
  ConvergenceOptions options;
  options.base_vertex = base_index(c, g);
  options.kappa = c.kappa;
  options.density = c.density;
  options.resolution = c.resolution;
  if (!c.window.empty()) options.window = parse_window(c.window, r.rows());
  const auto report = convergence_experiment(g, r, c.t_values, options);
  if (!c.csv_path.empty()) write_file(c.csv_path, report.csv());
  return io::to_json(report);
}

std::pair<double, double> parse_sweep(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) fail(ErrorCode::InvalidInput, "--sweep expects 'a..b', e.g. 1e-1..1e-6");
  try {
    return {std::stod(text.substr(0, dots)), std::stod(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidInput, "--sweep expects two numbers 'a..b'");
  }
}

Json cmd_collar(const Config& c) {
  if (c.annulus) {
    return io::to_json(annulus_period_experiment(c.tropical_length, c.kappa, c.t_values));
  }
  if (c.length && !c.sweep.empty()) fail(ErrorCode::InvalidInput, "use either --l or --sweep");
  if (c.length) return io::to_json(collar_row(*c.length));
  if (c.sweep.empty()) fail(ErrorCode::InvalidInput, "collar needs --l, --sweep or --annulus");
  const auto [a, b] = parse_sweep(c.sweep);
  if (!(a > 0.0) || !(b > 0.0)) fail(ErrorCode::NonPositiveLength, "sweep lengths must be positive");
  auto exponent = [](double l) {
    const double e = -std::log10(l);
    if (std::abs(e - std::round(e)) > 1e-9) fail(ErrorCode::InvalidInput, "sweep ends must be powers of ten");
    return static_cast<int>(std::round(e));
  };
  return io::to_json(collar_limit_report(exponent(a), exponent(b)));
}

void print_error(std::ostream& err, std::string_view code, const std::string& message) {
  err << Json{{"code", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Harmonic tropical curves: forms, morphisms, phases and degenerations", "tropharm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", c.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out_path, "Write the result to this file");
  app.add_flag("--quiet", c.quiet, "Do not print the result");

  std::function<std::string()> action;
  auto json_action = [&](Json (*f)(const Config&)) { return [&, f] { return io::dump(f(c)); }; };

  auto* check = app.add_subcommand("check", "Validate a graph and report form-space dimensions");
  check->add_option("graph", c.graph_path, "Graph file")->required();
  check->callback([&] { action = json_action(cmd_check); });

  auto add_graph_residues = [&](CLI::App* sub) {
    sub->add_option("graph", c.graph_path, "Graph file")->required();
    sub->add_option("residues", c.residues_path, "Residue matrix file")->required();
  };

  auto* solve = app.add_subcommand("solve", "Solve for the exact forms with given residues");
  add_graph_residues(solve);
  solve->callback([&] { action = json_action(cmd_solve); });

  auto* embed = app.add_subcommand("embed", "Emit the image of the harmonic morphism");
  add_graph_residues(embed);
  auto* svg = embed->add_flag("--svg", c.svg, "SVG output");
  embed->add_flag("--json", c.json, "JSON output (default)")->excludes(svg);
  embed->add_option("--base-vertex", c.base_vertex, "Vertex sent to the origin");
  embed->add_option("--ray-length", c.ray_length, "Drawn length of leaf rays");
  embed->callback([&] { action = [&] { return cmd_embed(c); }; });

  auto* regularity = app.add_subcommand("regularity", "Rank of the loop conditions on edge lengths");
  add_graph_residues(regularity);
  regularity->callback([&] { action = json_action(cmd_regularity); });

  auto* twists = app.add_subcommand("twists", "Twist congruences for a tropical morphism");
  twists->require_subcommand(1);
  auto* twists_solve = twists->add_subcommand("solve", "Describe the identity component of solutions");
  add_graph_residues(twists_solve);
  twists_solve->callback([&] { action = json_action(cmd_twists_solve); });
  auto* twists_check = twists->add_subcommand("check", "Test the loop condition for given twists");
  add_graph_residues(twists_check);
  twists_check->add_option("--twists", c.twists_path, "Twist file")->required();
  twists_check->callback([&] { action = json_action(cmd_twists_check); });

  auto* periods = app.add_subcommand("periods", "Limit normalized period matrix");
  add_graph_residues(periods);
  periods->add_option("--twists", c.twists_path, "Twist file (default: all zero)");
  periods->add_option("--a-edges", c.a_edges, "Edges whose A-cycles form the basis")->delimiter(',');
  periods->add_option("--puncture-leaves", c.puncture_leaves, "Leaves of the puncture rows")->delimiter(',');
  periods->callback([&] { action = json_action(cmd_periods); });

  auto* degenerate = app.add_subcommand("degenerate", "Rescaled amoebas against the tropical image");
  add_graph_residues(degenerate);
  degenerate->add_option("--t", c.t_values, "Values of t")->delimiter(',');
  degenerate->add_option("--kappa", c.kappa, "Length schedule constant")->check(CLI::PositiveNumber);
  degenerate->add_option("--window", c.window, "Comparison window 'lo,hi' (cube)");
  degenerate->add_option("--density", c.density, "Sampling density multiplier");
  degenerate->add_option("--resolution", c.resolution, "Radial sample spacing after rescaling")
      ->check(CLI::PositiveNumber);
  degenerate->add_option("--base-vertex", c.base_vertex, "Vertex used for alignment");
  degenerate->add_option("--csv", c.csv_path, "Also write t,distance rows to this file");
  degenerate->callback([&] { action = json_action(cmd_degenerate); });

  auto* collar = app.add_subcommand("collar", "Collar width and modulus");
  collar->add_option("--l", c.length, "Geodesic length");
  collar->add_option("--sweep", c.sweep, "Range of powers of ten, e.g. 1e-1..1e-6");
  collar->add_flag("--annulus", c.annulus, "Run the annulus period experiment instead");
  collar->add_option("--kappa", c.kappa, "Length schedule constant")->check(CLI::PositiveNumber);
  collar->add_option("--t", c.t_values, "Values of t for --annulus")->delimiter(',');
  collar->add_option("--length", c.tropical_length, "Tropical edge length for --annulus");
  collar->callback([&] { action = json_action(cmd_collar); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "InvalidInput", e.what());
    return 1;
  } catch (const Error& e) {
    print_error(err, to_string(e.code()), e.what());
    return 1;
  }

  try {
    const Emitter emit(c, out);
    emit(action());
    return 0;
  } catch (const Error& e) {
    print_error(err, to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    print_error(err, "InternalError", e.what());
  }
  return 1;
}

}  // namespace tropharm::cli
