#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string_view>
#include <vector>

#include "tropharm/forms.hpp"
#include "tropharm/graph.hpp"
#include "tropharm/scene.hpp"

namespace tropharm {

/// A harmonic tropical morphism C -> R^m: affine on every leaf-edge, balanced
/// at every vertex, with the base vertex sent to the origin.
///
/// Edge slopes are stored along ends[0] -> ends[1]; leaf slopes are stored
/// outward (towards the open end), which is minus the residue.
struct HarmonicMorphism {
  MetricGraph carrier;
  std::size_t base_vertex = 0;
  Eigen::MatrixXd vertex_positions;  // m x |V|
  Eigen::MatrixXd edge_slopes;       // m x |E|
  Eigen::MatrixXd leaf_slopes;       // m x n

  Eigen::Index ambient_dim() const { return edge_slopes.rows(); }
  /// Slope along an oriented element (leaves: forward = inward).
  Eigen::VectorXd slope(const OrientedEdgeRef& ref) const;
};

struct MorphismDefects {
  double balancing = 0.0;      // max over vertices of |sum of outgoing slopes|
  double compatibility = 0.0;  // max over edges of |p(head) - p(tail) - l(e) s(e)|
};

MorphismDefects morphism_defects(const HarmonicMorphism& morphism);

/// Throws Unbalanced or InvalidInput when the invariants fail at tolerance
/// `tol` (relative to the largest slope / position magnitude, floored at 1).
void check_morphism(const HarmonicMorphism& morphism, double tol = 1e-9);

/// Assembles a morphism from slopes alone, integrating positions from the
/// base vertex along the spanning tree, then checks all invariants.
HarmonicMorphism morphism_from_slopes(const MetricGraph& carrier, Eigen::MatrixXd edge_slopes,
                                      Eigen::MatrixXd leaf_slopes, std::size_t base_vertex = 0);

/// pi_R: slopes are the m exact forms omega_{R,C}. Throws DimensionMismatch
/// when R does not have one column per leaf.
HarmonicMorphism build_morphism(const MetricGraph& carrier, const ResidueMatrix& residues,
                                std::size_t base_vertex);
HarmonicMorphism build_morphism(const MetricGraph& carrier, const ResidueMatrix& residues,
                                std::string_view base_vertex_id);

/// Residues (inward leaf slopes) of a morphism.
ResidueMatrix residues_of(const HarmonicMorphism& morphism);

/// The m one-forms given by the coordinates of the slopes.
std::vector<OneForm> coordinate_forms(const HarmonicMorphism& morphism);

/// True iff every edge and leaf slope is within `tol` of an integer vector.
bool is_tropical(const HarmonicMorphism& morphism, double tol = 1e-9);

/// Either the zero tag or a unit vector of S^{m-1}.
struct DirectionTag {
  bool zero = true;
  Eigen::VectorXd direction;
};

struct CombinatorialType {
  std::vector<DirectionTag> edges;   // canonical orientation
  std::vector<DirectionTag> leaves;  // outward

  /// Tag-wise comparison; directions must agree within `tol`.
  bool same_as(const CombinatorialType& other, double tol = 1e-9) const;
};

/// Normalizes slopes; slopes with norm <= zero_tol (relative to the largest
/// slope, floored at 1) get the zero tag.
CombinatorialType combinatorial_type(const HarmonicMorphism& morphism, double zero_tol = 1e-12);

struct RegularityReport {
  std::size_t rank = 0;
  std::size_t expected = 0;
  bool is_regular = true;
  /// Rows (loop, coordinate), columns edges.
  Eigen::MatrixXd constraints;
  Eigen::VectorXd singular_values;
};

/// Rank of the linear conditions on edge lengths that keep every basis loop
/// closed with the slopes of `morphism` frozen. Regular iff rank = m*g.
RegularityReport regularity_rank(const MetricGraph& carrier, const HarmonicMorphism& morphism,
                                 double relative_threshold = 1e-9);

/// Image of the morphism. Contracted edges and leaves are dropped; parallel
/// edges with identical images are flagged with their multiplicity.
Scene emit_embedding(const HarmonicMorphism& morphism, double leaf_ray_length);

}  // namespace tropharm
