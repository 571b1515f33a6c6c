#include "tropharm/realization.hpp"

#include <cmath>
#include <numbers>

#include "tropharm/error.hpp"

namespace tropharm {

Placement place_punctures(const MetricGraph& tree, double t) {
  if (!tree.is_tree()) fail(ErrorCode::NotATree, "puncture placement needs a genus-0 graph");
  if (!(t > std::numbers::e) || !std::isfinite(t)) fail(ErrorCode::InvalidInput, "placement needs t > e");
  const std::size_t nv = tree.vertex_count();
  const std::size_t n = tree.leaf_count();
  const std::size_t last = n - 1;
  const std::size_t root = tree.leaf(last).vertex;

  // Depth-first walk recording the parent direction, the depth and the
  // cluster centre (in units where the root scale is t^D).
  std::vector<OrientedEdgeRef> parent(nv);
  std::vector<double> depth(nv, 0.0);
  std::vector<std::size_t> order;
  std::vector<bool> seen(nv, false);
  std::vector<std::size_t> stack{root};
  parent[root] = OrientedEdgeRef::leaf_outward(last);
  seen[root] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto& ref : tree.outgoing(v)) {
      const auto w = tree.head(ref);
      if (!w || seen[*w]) continue;
      seen[*w] = true;
      parent[*w] = ref.reversed();
      depth[*w] = depth[v] + tree.length(ref.index);
      stack.push_back(*w);
    }
  }
  double max_depth = 0.0;
  for (double d : depth) max_depth = std::max(max_depth, d);

  std::vector<double> scale(nv);
  for (std::size_t v = 0; v < nv; ++v) scale[v] = std::pow(t, max_depth - depth[v]);

  std::vector<Complex> centre(nv, {0.0, 0.0});
  std::vector<Puncture> punctures(n, Puncture::infinity());
  for (std::size_t v : order) {
    const auto& out = tree.outgoing(v);
    std::size_t p = 0;
    while (!(out[p] == parent[v])) ++p;
    for (int c = 0; c < 2; ++c) {
      const auto& ref = out[(p + 1 + static_cast<std::size_t>(c)) % 3];
      const Complex point = centre[v] + static_cast<double>(c) * scale[v];
      if (ref.is_leaf()) {
        punctures[ref.index] = Puncture::finite(point);
      } else {
        centre[*tree.head(ref)] = point;
      }
    }
  }

  // At w = exp(i pi/3) both |w| and |w - 1| equal 1, so the local pair-of-pants
  // contribution to the amoeba vanishes there.
  const Complex w = std::polar(1.0, std::numbers::pi / 3.0);
  std::vector<Complex> vertex_points(nv);
  for (std::size_t v = 0; v < nv; ++v) vertex_points[v] = centre[v] + scale[v] * w;
  return {PuncturedSphere(std::move(punctures)), root, std::move(vertex_points), std::move(scale)};
}

std::vector<Complex> ToricMap::operator()(Complex z) const {
  std::vector<Complex> out(static_cast<std::size_t>(exponents.rows()), Complex{1.0, 0.0});
  for (std::size_t j = 0; j < sphere.size(); ++j) {
    const auto& p = sphere[j];
    if (p.at_infinity) continue;
    const Complex d = z - p.value;
    if (d == Complex{0.0, 0.0}) fail(ErrorCode::EvaluationAtPuncture, "toric map evaluated at a puncture");
    for (Eigen::Index k = 0; k < exponents.rows(); ++k) {
      const int e = exponents(k, static_cast<Eigen::Index>(j));
      if (e != 0) out[static_cast<std::size_t>(k)] *= std::pow(d, e);
    }
  }
  return out;
}

Realization realize_genus0(const MetricGraph& tree, const ResidueMatrix& residues, double t) {
  if (!tree.is_tree()) fail(ErrorCode::NotATree, "realisation needs a genus-0 graph");
  if (residues.cols() != static_cast<Eigen::Index>(tree.leaf_count())) {
    fail(ErrorCode::DimensionMismatch, "residue matrix needs one column per leaf");
  }
  const Eigen::MatrixXd& r = residues.entries();
  if (((r.array() - r.array().round()).abs() > 1e-9).any()) {
    fail(ErrorCode::NonIntegerResidues, "realisation needs integer residues");
  }
  Placement placement = place_punctures(tree, t);
  ToricMap map{placement.sphere, r.array().round().matrix().cast<int>()};
  return {std::move(placement), std::move(map)};
}

}  // namespace tropharm
