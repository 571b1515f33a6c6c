#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tropharm/amoeba.hpp"
#include "tropharm/forms.hpp"
#include "tropharm/graph.hpp"

namespace tropharm {

/// Punctures on the sphere whose log-distance tree reproduces a metric tree.
///
/// The tree is rooted at the vertex carrying the last leaf, which is sent to
/// infinity. Walking away from the root, the two branches that follow the
/// parent direction in ribbon order receive the constants 0 and 1 at scale
/// t^(D - d(v)), where d(v) is the metric depth of v and D the largest depth
/// of a vertex. A leaf's puncture is the sum of the constants met on its way
/// down from the root.
struct Placement {
  PuncturedSphere sphere;
  std::size_t root = 0;
  /// centre + scale * exp(i pi/3) for each vertex; used to align amoebas.
  std::vector<Complex> vertex_points;
  /// |z - cluster centre| scale of each vertex.
  std::vector<double> vertex_scales;
};

/// Throws NotATree or InvalidInput (t <= e, or punctures that coincide in
/// double precision once t^D approaches 1e16).
Placement place_punctures(const MetricGraph& tree, double t);

/// z -> (prod_j (z - p_j)^{r_j^(k)})_k over finite punctures.
struct ToricMap {
  PuncturedSphere sphere;
  Eigen::MatrixXi exponents;  // m x n

  /// Throws EvaluationAtPuncture.
  std::vector<Complex> operator()(Complex z) const;
};

struct Realization {
  Placement placement;
  ToricMap map;
};

/// Throws NotATree, NonIntegerResidues, DimensionMismatch, InvalidInput.
Realization realize_genus0(const MetricGraph& tree, const ResidueMatrix& residues, double t);

}  // namespace tropharm
