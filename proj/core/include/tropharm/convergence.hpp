#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropharm/amoeba.hpp"
#include "tropharm/collar.hpp"
#include "tropharm/forms.hpp"
#include "tropharm/graph.hpp"
#include "tropharm/hausdorff.hpp"
#include "tropharm/morphism.hpp"

namespace tropharm {

struct ConvergenceOptions {
  /// Comparison window; defaults to the bounding box of the target scene
  /// (rays of unit length beyond the vertices) inflated 1.5x.
  std::optional<Box> window;
  /// Fixed punctures in leaf order; by default they come from
  /// place_punctures (realize_genus0 when R is integral).
  std::optional<std::vector<Puncture>> punctures;
  std::size_t base_vertex = 0;
  double kappa = kDefaultKappa;
  /// Multiplies every sampling grid size.
  std::size_t density = 1;
  /// Target spacing of the radial samples after rescaling by 1/log t.
  double resolution = 0.01;
  std::size_t angular_base = 64;
  std::size_t grid_base = 64;
  /// Scene -> cloud discretisation step; <= 0 picks 1e-3 of the window diagonal.
  double hausdorff_step = 0.0;
  /// 0 = TROPHARM_THREADS or hardware concurrency.
  std::size_t threads = 0;
};

struct ConvergenceRow {
  double t = 0.0;
  double global_hausdorff = 0.0;
  double forward = 0.0;   // cloud -> scene
  double backward = 0.0;  // scene -> cloud
  /// Vertex id -> Hausdorff distance between the half-tripod of the vertex
  /// and the cloud points closest to it.
  std::map<std::string, double> per_tripod;
  /// Edge id -> l_t(e) = kappa / (l(e) log t).
  std::map<std::string, double> collar_lengths;
  std::size_t cloud_size = 0;
};

struct ConvergenceReport {
  double kappa = 0.0;
  Box window;
  std::vector<ConvergenceRow> rows;

  /// d(t_{i+1}) <= (1 + slack) d(t_i) for the global distance.
  bool monotone(double slack = 0.1) const;
  /// t,global_hausdorff,forward,backward
  std::string csv() const;
};

/// For each t: place the punctures, sample (1/log t) times the harmonic
/// amoeba, translate so the image of the base vertex's cluster point sits on
/// pi_R(base vertex) (with fixed punctures the point exp(i pi/3) is used),
/// and compare to the image of pi_R inside the window.
/// Throws NotATree, DimensionMismatch, InvalidInput (t <= e or not
/// increasing), EmptyAfterClipping.
ConvergenceReport convergence_experiment(const MetricGraph& carrier, const ResidueMatrix& residues,
                                         std::span<const double> t_values, const ConvergenceOptions& options = {});

/// The default comparison window for a morphism.
Box default_window(const HarmonicMorphism& morphism);

}  // namespace tropharm
