#include "tropharm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tropharm/error.hpp"

namespace tropharm::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorCode::ParseError, what); }

const Json& member(const Json& doc, const char* key) {
  if (!doc.is_object()) parse_fail(std::string("expected an object holding '") + key + "'");
  const auto it = doc.find(key);
  if (it == doc.end()) parse_fail(std::string("missing key '") + key + "'");
  return *it;
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) parse_fail(std::string(what) + " must be a string");
  return j.get<std::string>();
}

double number_of(const Json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  return j.get<double>();
}

const Json& array_of(const Json& j, const char* what) {
  if (!j.is_array()) parse_fail(std::string(what) + " must be an array");
  return j;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

MetricGraph graph_from_json(const Json& doc) {
  CubicGraph g;
  std::map<std::string, double> lengths;
  for (const auto& v : array_of(member(doc, "vertices"), "vertices")) g.vertices.push_back(string_of(v, "vertex id"));
  for (const auto& e : array_of(member(doc, "edges"), "edges")) {
    const auto& ends = array_of(member(e, "ends"), "edge ends");
    if (ends.size() != 2) parse_fail("edge ends must list two vertices");
    CubicGraph::Edge edge{string_of(member(e, "id"), "edge id"),
                          {string_of(ends[0], "edge end"), string_of(ends[1], "edge end")}};
    if (lengths.contains(edge.id)) fail(ErrorCode::DuplicateId, "duplicate id '" + edge.id + "'");
    lengths[edge.id] = number_of(member(e, "length"), "edge length");
    g.edges.push_back(std::move(edge));
  }
  for (const auto& l : array_of(member(doc, "leaves"), "leaves")) {
    g.leaves.push_back({string_of(member(l, "id"), "leaf id"), string_of(member(l, "vertex"), "leaf vertex")});
  }
  if (const auto it = doc.find("ribbon"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) parse_fail("ribbon must be an object");
    for (const auto& [vid, order] : it->items()) {
      auto& out = g.ribbon[vid];
      for (const auto& x : array_of(order, "ribbon entry")) out.push_back(string_of(x, "ribbon id"));
    }
  }
  return validate(g, lengths);
}

Json to_json(const MetricGraph& graph) {
  const CubicGraph g = graph.description();
  Json doc;
  doc["vertices"] = g.vertices;
  doc["edges"] = Json::array();
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edge(e);
    doc["edges"].push_back({{"id", edge.id},
                            {"ends", {graph.vertex_id(edge.ends[0]), graph.vertex_id(edge.ends[1])}},
                            {"length", edge.length}});
  }
  doc["leaves"] = Json::array();
  for (const auto& l : g.leaves) doc["leaves"].push_back({{"id", l.id}, {"vertex", l.vertex}});
  doc["ribbon"] = g.ribbon;
  return doc;
}

ResidueMatrix residues_from_json(const Json& doc, const MetricGraph& graph) {
  const auto& entries = array_of(member(doc, "entries"), "entries");
  const std::size_t n = graph.leaf_count();
  std::vector<std::size_t> column_leaf(n);
  if (const auto it = doc.find("leaf_order"); it != doc.end()) {
    const auto& order = array_of(*it, "leaf_order");
    if (order.size() != n) fail(ErrorCode::DimensionMismatch, "leaf_order must list every leaf once");
    std::vector<bool> used(n, false);
    for (std::size_t c = 0; c < n; ++c) {
      const std::string id = string_of(order[c], "leaf id");
      const auto l = graph.find_leaf(id);
      if (!l) fail(ErrorCode::UnknownLeaf, "unknown leaf '" + id + "' in leaf_order");
      if (used[*l]) fail(ErrorCode::DuplicateId, "leaf '" + id + "' repeated in leaf_order");
      used[*l] = true;
      column_leaf[c] = *l;
    }
  } else {
    for (std::size_t c = 0; c < n; ++c) column_leaf[c] = c;
  }
  if (const auto it = doc.find("rows"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<long long>() != static_cast<long long>(entries.size())) {
      fail(ErrorCode::DimensionMismatch, "'rows' does not match the number of entry rows");
    }
  }
  Eigen::MatrixXd r(static_cast<Eigen::Index>(entries.size()), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& row = array_of(entries[k], "residue row");
    if (row.size() != n) fail(ErrorCode::DimensionMismatch, "residue rows need one entry per leaf");
    for (std::size_t c = 0; c < n; ++c) {
      r(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(column_leaf[c])) = number_of(row[c], "residue");
    }
  }
  return ResidueMatrix(std::move(r));
}

Json to_json(const ResidueMatrix& residues, const MetricGraph& graph) {
  Json order = Json::array();
  for (std::size_t l = 0; l < graph.leaf_count(); ++l) order.push_back(graph.leaf(l).id);
  return {{"rows", residues.rows()}, {"leaf_order", order}, {"entries", matrix_to_json(residues.entries())}};
}

OneForm one_form_from_json(const Json& doc, const std::filesystem::path& base_dir) {
  const Json& g = member(doc, "graph");
  const MetricGraph graph = g.is_string() ? graph_from_json(read_json_file(base_dir / g.get<std::string>()))
                                          : graph_from_json(g);
  Eigen::VectorXd edges = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.edge_count()));
  Eigen::VectorXd leaves = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.leaf_count()));
  const Json& values = member(doc, "values");
  if (!values.is_object()) parse_fail("values must be an object");
  for (const auto& [id, value] : values.items()) {
    const double x = number_of(value, "form value");
    if (const auto e = graph.find_edge(id)) {
      edges(static_cast<Eigen::Index>(*e)) = x;
    } else if (const auto l = graph.find_leaf(id)) {
      leaves(static_cast<Eigen::Index>(*l)) = x;
    } else {
      fail(ErrorCode::UnknownEdge, "form value for unknown id '" + id + "'");
    }
  }
  return OneForm(graph, std::move(edges), std::move(leaves));
}

Json to_json(const OneForm& form) {
  const auto& g = form.carrier();
  Json values = Json::object();
  for (std::size_t e = 0; e < g.edge_count(); ++e) values[g.edge(e).id] = form.edge_values()(static_cast<Eigen::Index>(e));
  for (std::size_t l = 0; l < g.leaf_count(); ++l) values[g.leaf(l).id] = form.leaf_values()(static_cast<Eigen::Index>(l));
  return {{"graph", to_json(g)}, {"values", values}};
}

TwistAssignment twists_from_json(const Json& doc, const MetricGraph& graph) {
  if (!doc.is_object()) parse_fail("twist file must be an object of edge id -> angle");
  std::map<std::string, double> angles;
  for (const auto& [id, value] : doc.items()) angles[id] = number_of(value, "twist angle");
  return TwistAssignment::from_map(graph, angles);
}

Json to_json(const TwistAssignment& twists) {
  Json doc = Json::object();
  const auto& g = twists.carrier();
  for (std::size_t e = 0; e < g.edge_count(); ++e) doc[g.edge(e).id] = twists.angle(e);
  return doc;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i).transpose()));
  return out;
}

Json to_json(const Scene& scene) {
  Json vertices = Json::object();
  for (const auto& v : scene.vertices) vertices[v.id] = vector_to_json(v.position);
  Json edges = Json::array();
  for (const auto& s : scene.segments) {
    edges.push_back({{"id", s.id},
                     {"from", scene.vertices[s.from].id},
                     {"to", scene.vertices[s.to].id},
                     {"multiplicity", s.multiplicity}});
  }
  Json rays = Json::array();
  for (const auto& r : scene.rays) {
    rays.push_back({{"leaf", r.leaf},
                    {"origin", scene.vertices[r.vertex].id},
                    {"direction", vector_to_json(r.direction)},
                    {"length", r.length}});
  }
  return {{"dimension", scene.dimension}, {"vertices", vertices}, {"edges", edges}, {"rays", rays}};
}

namespace {

std::string fmt6(double x) {
  char buf[32];
  if (x == 0.0) x = 0.0;  // no "-0"
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

std::string to_svg(const Scene& scene) {
  if (scene.dimension < 1 || scene.dimension > 3) {
    fail(ErrorCode::UnsupportedDimensionForSvg, "SVG output needs a scene of dimension 1, 2 or 3");
  }
  // Cabinet projection for 3D; y grows downwards in SVG.
  auto planar = [&](const Eigen::VectorXd& p) {
    const double depth = scene.dimension == 3 ? 0.5 * p(2) * std::numbers::sqrt2 / 2.0 : 0.0;
    const double y = scene.dimension >= 2 ? p(1) : 0.0;
    return std::pair<double, double>{p(0) - depth, -(y - depth)};
  };
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  bool first = true;
  for (const auto& piece : scene_pieces(scene)) {
    for (const auto* q : {&piece.a, &piece.b}) {
      const auto [x, y] = planar(*q);
      x0 = first ? x : std::min(x0, x);
      x1 = first ? x : std::max(x1, x);
      y0 = first ? y : std::min(y0, y);
      y1 = first ? y : std::max(y1, y);
      first = false;
    }
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double margin = 0.05 * span;
  x0 -= margin;
  y0 -= margin;
  const double w = (x1 - x0) + margin;
  const double h = (y1 - y0) + margin;
  const double stroke = 0.005 * span;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt6(x0) << ' ' << fmt6(y0) << ' ' << fmt6(w)
      << ' ' << fmt6(h) << "\">\n";
  out << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt6(stroke) << "\">\n";
  for (const auto& s : scene.segments) {
    const auto [ax, ay] = planar(scene.vertices[s.from].position);
    const auto [bx, by] = planar(scene.vertices[s.to].position);
    out << "<polyline id=\"" << s.id << "\" points=\"" << fmt6(ax) << ',' << fmt6(ay) << ' ' << fmt6(bx) << ','
        << fmt6(by) << "\"";
    if (s.multiplicity > 1) out << " stroke-width=\"" << fmt6(stroke * s.multiplicity) << "\"";
    out << "/>\n";
  }
  for (const auto& r : scene.rays) {
    const auto [ax, ay] = planar(scene.origin(r));
    const auto [bx, by] = planar(scene.origin(r) + r.offset());
    out << "<polyline id=\"" << r.leaf << "\" points=\"" << fmt6(ax) << ',' << fmt6(ay) << ' ' << fmt6(bx) << ','
        << fmt6(by) << "\" stroke-dasharray=\"" << fmt6(4 * stroke) << ' ' << fmt6(2 * stroke) << "\"/>\n";
  }
  out << "</g>\n<g fill=\"black\">\n";
  for (const auto& v : scene.vertices) {
    const auto [x, y] = planar(v.position);
    out << "<circle id=\"" << v.id << "\" cx=\"" << fmt6(x) << "\" cy=\"" << fmt6(y) << "\" r=\""
        << fmt6(2 * stroke) << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

Json to_json(const RegularityReport& report) {
  return {{"rank", report.rank},
          {"expected", report.expected},
          {"is_regular", report.is_regular},
          {"singular_values", vector_to_json(report.singular_values)}};
}

Json to_json(const TwistSolution& solution) {
  Json constraints = Json::array();
  for (Eigen::Index i = 0; i < solution.constraints.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < solution.constraints.cols(); ++j) row.push_back(solution.constraints(i, j));
    constraints.push_back(row);
  }
  return {{"constraints", constraints},
          {"rank", solution.rank},
          {"dimension", solution.dimension},
          {"kernel", matrix_to_json(solution.kernel)},
          {"representative", to_json(solution.representative)}};
}

Json to_json(const IntegralityCheck& check) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < check.residuals.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < check.residuals.cols(); ++k) {
      row.push_back({{"loop", r}, {"coordinate", k}, {"residual", check.residuals(r, k)},
                     {"passed", static_cast<bool>(check.passed(r, k))}});
    }
    rows.push_back(row);
  }
  return {{"table", rows}, {"all_passed", check.all_passed}, {"max_residual", check.max_residual}};
}

Json to_json(const LimitPeriodMatrix& matrix, double integer_tol) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < matrix.entries.rows(); ++i) {
    Json entries = Json::array();
    for (Eigen::Index k = 0; k < matrix.entries.cols(); ++k) {
      entries.push_back({matrix.entries(i, k).real(), matrix.entries(i, k).imag()});
    }
    const char* kind = matrix.kinds[static_cast<std::size_t>(i)] == PeriodRowKind::Puncture ? "puncture"
                       : matrix.kinds[static_cast<std::size_t>(i)] == PeriodRowKind::ACycle ? "A"
                                                                                          : "B";
    rows.push_back({{"label", matrix.labels[static_cast<std::size_t>(i)]}, {"kind", kind}, {"entries", entries}});
  }
  return {{"rows", rows}, {"is_integer", is_integer_period_matrix(matrix, integer_tol)}};
}

Json to_json(const CollarRow& row) {
  return {{"l", row.length}, {"w", row.width}, {"m", row.modulus}, {"l_times_m", row.length_times_modulus}};
}

Json to_json(const CollarLimitReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) rows.push_back(to_json(r));
  return {{"rows", rows},
          {"limit_estimate", report.limit_estimate},
          {"pi", std::numbers::pi},
          {"pi_gap", report.pi_gap},
          {"quoted_constant", report.quoted_constant},
          {"monotone", report.monotone},
          {"contradicts_quoted_constant", report.contradicts_quoted_constant}};
}

Json to_json(const AnnulusPeriodReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) rows.push_back({{"t", r.t}, {"collar_length", r.collar_length}, {"value", r.value}});
  return {{"tropical_length", report.tropical_length}, {"kappa", report.kappa}, {"rows", rows},
          {"raw_limit", report.raw_limit}, {"extrapolated_limit", report.extrapolated_limit},
          {"kappa_star", report.kappa_star}, {"two_pi_squared", 2.0 * std::numbers::pi * std::numbers::pi}};
}

Json to_json(const ConvergenceReport& report) {
  Json by_t = Json::object();
  for (const auto& r : report.rows) {
    std::ostringstream key;
    key.precision(17);
    key << r.t;
    by_t[key.str()] = {{"global_hausdorff", r.global_hausdorff},
                       {"forward", r.forward},
                       {"backward", r.backward},
                       {"per_tripod", r.per_tripod},
                       {"collar_lengths", r.collar_lengths},
                       {"cloud_size", r.cloud_size}};
  }
  return {{"t", by_t},
          {"kappa", report.kappa},
          {"window", {{"lo", vector_to_json(report.window.lo)}, {"hi", vector_to_json(report.window.hi)}}},
          {"monotone", report.monotone()}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace tropharm::io
