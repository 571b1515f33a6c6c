#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tropharm/forms.hpp"
#include "tropharm/graph.hpp"
#include "tropharm/morphism.hpp"

namespace tropharm {

/// Twist parameters on the non-leaf edges, stored as arguments reduced into
/// [0, 2pi). Applying a twist glues the two boundary geodesics of an edge by
/// z -> -conj(Theta(e) z); no surface is built here, only the argument data.
class TwistAssignment {
 public:
  /// Throws DimensionMismatch.
  TwistAssignment(MetricGraph carrier, Eigen::VectorXd angles);
  /// Missing edges get angle 0; unknown ids throw UnknownEdge.
  static TwistAssignment from_map(const MetricGraph& carrier, const std::map<std::string, double>& angles);
  static TwistAssignment zero(const MetricGraph& carrier);

  const MetricGraph& carrier() const { return carrier_; }
  const Eigen::VectorXd& angles() const { return angles_; }
  double angle(std::size_t edge) const { return angles_(static_cast<Eigen::Index>(edge)); }

 private:
  MetricGraph carrier_;
  Eigen::VectorXd angles_;
};

/// Reduces an angle into [0, 2pi).
double reduce_angle(double theta);

/// Distance from x to the nearest multiple of 2pi.
double distance_to_2pi_lattice(double x);

/// Sum over the loop of theta(e) * value(e as oriented by the loop).
/// Throws NotALoop.
double loop_twist_sum(const TwistAssignment& twists, const OneForm& form, const GraphPath& loop);

/// Coordinate-wise twist sums for a morphism.
Eigen::VectorXd loop_twist_sums(const TwistAssignment& twists, const HarmonicMorphism& morphism,
                                const GraphPath& loop);

struct IntegralityCheck {
  /// residuals(r, k): distance of the twist sum of basis loop r, coordinate k,
  /// to 2pi Z.
  Eigen::MatrixXd residuals;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> passed;
  bool all_passed = true;
  double max_residual = 0.0;
};

/// Tests the loop condition on the cycle basis; by linearity this decides it
/// for every loop. Throws NotTropical when slopes are not integral.
IntegralityCheck check_integrality(const TwistAssignment& twists, const HarmonicMorphism& morphism,
                                   double tol = 1e-9);

/// Identity component of { theta : sum_e theta(e) s_k(e) = 0 mod 2pi on every
/// basis loop }, plus the integer constraint matrix describing it.
struct TwistSolution {
  /// Rows (loop, coordinate), columns edges; entries are integers.
  Eigen::MatrixXi constraints;
  std::size_t rank = 0;
  std::size_t dimension = 0;  // |E| - rank
  /// Orthonormal real basis (|E| x dimension) of the kernel of `constraints`.
  Eigen::MatrixXd kernel;
  TwistAssignment representative;

  /// theta = 2pi * kernel * y mod 2pi, y uniform in [0,4)^dimension so the
  /// sample wraps around the torus several times.
  template <class Rng>
  TwistAssignment sample(Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd y(kernel.cols());
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = unit(rng) * 4.0;
    return point(y);
  }
  TwistAssignment point(const Eigen::VectorXd& coefficients) const;
};

/// Throws NotTropical.
TwistSolution solve_twists(const MetricGraph& carrier, const HarmonicMorphism& morphism);

enum class PeriodRowKind { Puncture, ACycle, BCycle };

struct PeriodBasis {
  std::vector<std::size_t> puncture_leaves;  // n-1 leaves
  std::vector<std::size_t> a_edges;          // g edges
  std::vector<GraphPath> b_loops;            // g loops
};

/// First n-1 leaves, co-tree edges, and the fundamental loops.
PeriodBasis default_period_basis(const MetricGraph& carrier);

/// Limit normalized period matrix, (2g+n-1) x m, entries (1/2 pi i) * period.
struct LimitPeriodMatrix {
  std::vector<PeriodRowKind> kinds;
  std::vector<std::string> labels;
  Eigen::MatrixXcd entries;
};

/// Puncture rows are residues, A rows are omega_{R,C}(e), B rows are
/// (1/2pi) * loop_twist_sum. Throws BadBasis.
LimitPeriodMatrix limit_period_matrix(const MetricGraph& carrier, const TwistAssignment& twists,
                                      const ResidueMatrix& residues, const PeriodBasis& basis);
LimitPeriodMatrix limit_period_matrix(const MetricGraph& carrier, const TwistAssignment& twists,
                                      const ResidueMatrix& residues);

bool is_integer_period_matrix(const LimitPeriodMatrix& matrix, double tol = 1e-9);

}  // namespace tropharm
