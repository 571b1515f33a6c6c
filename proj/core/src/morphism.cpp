#include "tropharm/morphism.hpp"

#include <cmath>
#include <map>

#include "tropharm/error.hpp"
#include "tropharm/linalg.hpp"

namespace tropharm {

Eigen::VectorXd HarmonicMorphism::slope(const OrientedEdgeRef& ref) const {
  const auto i = static_cast<Eigen::Index>(ref.index);
  if (ref.is_leaf()) {
    // Stored outward; forward means inward.
    return ref.forward ? Eigen::VectorXd(-leaf_slopes.col(i)) : Eigen::VectorXd(leaf_slopes.col(i));
  }
  return ref.forward ? Eigen::VectorXd(edge_slopes.col(i)) : Eigen::VectorXd(-edge_slopes.col(i));
}

MorphismDefects morphism_defects(const HarmonicMorphism& morphism) {
  const auto& g = morphism.carrier;
  const Eigen::Index m = morphism.ambient_dim();
  MorphismDefects d;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(m);
    for (const auto& r : g.outgoing(v)) sum += morphism.slope(r);
    d.balancing = std::max(d.balancing, sum.norm());
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const Eigen::VectorXd gap = morphism.vertex_positions.col(static_cast<Eigen::Index>(edge.ends[1])) -
                                morphism.vertex_positions.col(static_cast<Eigen::Index>(edge.ends[0])) -
                                edge.length * morphism.edge_slopes.col(static_cast<Eigen::Index>(e));
    d.compatibility = std::max(d.compatibility, gap.norm());
  }
  return d;
}

namespace {

double magnitude(const Eigen::MatrixXd& m) { return m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0; }

void check_shapes(const HarmonicMorphism& morphism) {
  const auto& g = morphism.carrier;
  const Eigen::Index m = morphism.edge_slopes.rows();
  if (morphism.edge_slopes.cols() != static_cast<Eigen::Index>(g.edge_count()) ||
      morphism.leaf_slopes.cols() != static_cast<Eigen::Index>(g.leaf_count()) ||
      morphism.vertex_positions.cols() != static_cast<Eigen::Index>(g.vertex_count()) ||
      morphism.leaf_slopes.rows() != m || morphism.vertex_positions.rows() != m) {
    fail(ErrorCode::DimensionMismatch, "morphism arrays do not match the graph");
  }
  if (morphism.base_vertex >= g.vertex_count()) fail(ErrorCode::UnknownVertex, "base vertex out of range");
}

}  // namespace

void check_morphism(const HarmonicMorphism& morphism, double tol) {
  check_shapes(morphism);
  const auto d = morphism_defects(morphism);
  const double slope_scale =
      std::max({1.0, magnitude(morphism.edge_slopes), magnitude(morphism.leaf_slopes)});
  const double position_scale = std::max(slope_scale, magnitude(morphism.vertex_positions));
  if (!(d.balancing <= tol * slope_scale)) {
    fail(ErrorCode::Unbalanced, "morphism is not balanced (defect " + std::to_string(d.balancing) + ")");
  }
  if (!(d.compatibility <= tol * position_scale)) {
    fail(ErrorCode::InvalidInput,
         "vertex positions are not compatible with slopes (defect " + std::to_string(d.compatibility) + ")");
  }
}

HarmonicMorphism morphism_from_slopes(const MetricGraph& carrier, Eigen::MatrixXd edge_slopes,
                                      Eigen::MatrixXd leaf_slopes, std::size_t base_vertex) {
  const Eigen::Index m = edge_slopes.rows();
  HarmonicMorphism out{carrier, base_vertex,
                       Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(carrier.vertex_count())),
                       std::move(edge_slopes), std::move(leaf_slopes)};
  check_shapes(out);

  const auto tree = spanning_tree(carrier);
  for (std::size_t v = 0; v < carrier.vertex_count(); ++v) {
    if (v == base_vertex) continue;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(m);
    for (const auto& step : tree_path(carrier, tree, base_vertex, v)) {
      p += carrier.length(step.index) * out.slope(step);
    }
    out.vertex_positions.col(static_cast<Eigen::Index>(v)) = p;
  }
  check_morphism(out);
  return out;
}

HarmonicMorphism build_morphism(const MetricGraph& carrier, const ResidueMatrix& residues,
                                std::size_t base_vertex) {
  if (residues.cols() != static_cast<Eigen::Index>(carrier.leaf_count())) {
    fail(ErrorCode::DimensionMismatch, "residue matrix needs one column per leaf");
  }
  const Eigen::Index m = residues.rows();
  Eigen::MatrixXd edge_slopes(m, static_cast<Eigen::Index>(carrier.edge_count()));
  Eigen::MatrixXd leaf_slopes(m, static_cast<Eigen::Index>(carrier.leaf_count()));
  const KirchhoffSolver solver(carrier);
  for (Eigen::Index k = 0; k < m; ++k) {
    const OneForm form = solver.solve(residues.row(k));
    edge_slopes.row(k) = form.edge_values().transpose();
    leaf_slopes.row(k) = -form.leaf_values().transpose();
  }
  return morphism_from_slopes(carrier, std::move(edge_slopes), std::move(leaf_slopes), base_vertex);
}

HarmonicMorphism build_morphism(const MetricGraph& carrier, const ResidueMatrix& residues,
                                std::string_view base_vertex_id) {
  const auto v = carrier.find_vertex(base_vertex_id);
  if (!v) fail(ErrorCode::UnknownVertex, "unknown base vertex '" + std::string(base_vertex_id) + "'");
  return build_morphism(carrier, residues, *v);
}

ResidueMatrix residues_of(const HarmonicMorphism& morphism) {
  return ResidueMatrix(-morphism.leaf_slopes);
}

std::vector<OneForm> coordinate_forms(const HarmonicMorphism& morphism) {
  std::vector<OneForm> forms;
  for (Eigen::Index k = 0; k < morphism.ambient_dim(); ++k) {
    forms.emplace_back(morphism.carrier, morphism.edge_slopes.row(k).transpose(),
                       Eigen::VectorXd(-morphism.leaf_slopes.row(k).transpose()));
  }
  return forms;
}

bool is_tropical(const HarmonicMorphism& morphism, double tol) {
  auto integral = [tol](const Eigen::MatrixXd& m) {
    return ((m.array() - m.array().round()).abs() <= tol).all();
  };
  return integral(morphism.edge_slopes) && integral(morphism.leaf_slopes);
}

namespace {

DirectionTag tag_of(const Eigen::VectorXd& slope, double zero_threshold) {
  const double norm = slope.norm();
  if (norm <= zero_threshold) return {true, Eigen::VectorXd::Zero(slope.size())};
  return {false, slope / norm};
}

bool same_tag(const DirectionTag& a, const DirectionTag& b, double tol) {
  if (a.zero != b.zero) return false;
  return a.zero || (a.direction - b.direction).norm() <= tol;
}

}  // namespace

bool CombinatorialType::same_as(const CombinatorialType& other, double tol) const {
  if (edges.size() != other.edges.size() || leaves.size() != other.leaves.size()) return false;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!same_tag(edges[i], other.edges[i], tol)) return false;
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (!same_tag(leaves[i], other.leaves[i], tol)) return false;
  }
  return true;
}

CombinatorialType combinatorial_type(const HarmonicMorphism& morphism, double zero_tol) {
  const double scale = std::max({1.0, magnitude(morphism.edge_slopes), magnitude(morphism.leaf_slopes)});
  const double threshold = zero_tol * scale;
  CombinatorialType type;
  for (Eigen::Index e = 0; e < morphism.edge_slopes.cols(); ++e) {
    type.edges.push_back(tag_of(morphism.edge_slopes.col(e), threshold));
  }
  for (Eigen::Index l = 0; l < morphism.leaf_slopes.cols(); ++l) {
    type.leaves.push_back(tag_of(morphism.leaf_slopes.col(l), threshold));
  }
  return type;
}

RegularityReport regularity_rank(const MetricGraph& carrier, const HarmonicMorphism& morphism,
                                 double relative_threshold) {
  const auto loops = cycle_basis(carrier);
  const Eigen::Index m = morphism.ambient_dim();
  const auto g = static_cast<Eigen::Index>(loops.size());
  RegularityReport report;
  report.expected = static_cast<std::size_t>(m * g);
  report.constraints = Eigen::MatrixXd::Zero(m * g, static_cast<Eigen::Index>(carrier.edge_count()));
  for (Eigen::Index r = 0; r < g; ++r) {
    for (const auto& step : loops[static_cast<std::size_t>(r)].steps) {
      const Eigen::VectorXd s = morphism.slope(step);
      for (Eigen::Index k = 0; k < m; ++k) {
        report.constraints(r * m + k, static_cast<Eigen::Index>(step.index)) += s(k);
      }
    }
  }
  const auto info = numerical_rank(report.constraints, relative_threshold);
  report.rank = static_cast<std::size_t>(info.rank);
  report.singular_values = info.singular_values;
  report.is_regular = report.rank == report.expected;
  return report;
}

Scene emit_embedding(const HarmonicMorphism& morphism, double leaf_ray_length) {
  const auto& g = morphism.carrier;
  const auto type = combinatorial_type(morphism);
  Scene scene;
  scene.dimension = morphism.ambient_dim();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    scene.vertices.push_back({g.vertex_id(v), morphism.vertex_positions.col(static_cast<Eigen::Index>(v))});
  }

  // Parallel uncontracted edges between the same vertices draw the same segment.
  std::map<std::pair<std::size_t, std::size_t>, int> images;
  auto key_of = [&](std::size_t e) {
    const auto& ends = g.edge(e).ends;
    return std::minmax(ends[0], ends[1]);
  };
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!type.edges[e].zero) ++images[key_of(e)];
  }
  for (std::size_t e : g.edges_by_id()) {
    if (type.edges[e].zero) continue;
    const auto& edge = g.edge(e);
    scene.segments.push_back({edge.id, edge.ends[0], edge.ends[1], images[key_of(e)]});
  }
  for (std::size_t l = 0; l < g.leaf_count(); ++l) {
    if (type.leaves[l].zero) continue;
    scene.rays.push_back({g.leaf(l).id, g.leaf(l).vertex,
                          morphism.leaf_slopes.col(static_cast<Eigen::Index>(l)), leaf_ray_length});
  }
  return scene;
}

}  // namespace tropharm
