#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>

#include "tropharm/graph.hpp"

namespace tropharm {

/// Balancing and residue-sum tolerances, relative to the largest absolute value
/// involved (floored at 1 for balancing so that zero forms are well defined).
struct FormTolerances {
  double balance = 1e-9;
  double residue = 1e-9;
};

/// A tropical 1-form: one real per leaf-edge in its canonical orientation
/// (edges ends[0] -> ends[1], leaves inward), balanced at every vertex.
class OneForm {
 public:
  /// Throws DimensionMismatch or Unbalanced.
  OneForm(MetricGraph carrier, Eigen::VectorXd edge_values, Eigen::VectorXd leaf_values,
          double balance_tolerance = FormTolerances{}.balance);

  static OneForm zero(const MetricGraph& carrier);

  const MetricGraph& carrier() const { return carrier_; }
  const Eigen::VectorXd& edge_values() const { return edge_values_; }
  const Eigen::VectorXd& leaf_values() const { return leaf_values_; }

  /// Value on an oriented element; antisymmetric under reversal.
  double value(const OrientedEdgeRef& ref) const;

  double max_abs() const;
  /// max over vertices of |sum of the three outgoing values|.
  double balance_defect() const;

  OneForm operator+(const OneForm& other) const;
  OneForm operator-(const OneForm& other) const;
  OneForm operator*(double scale) const;

 private:
  MetricGraph carrier_;
  Eigen::VectorXd edge_values_;
  Eigen::VectorXd leaf_values_;
};

double balance_defect(const MetricGraph& graph, const Eigen::VectorXd& edge_values,
                      const Eigen::VectorXd& leaf_values);

/// m x n real matrix of residues (row k = residues of the k-th coordinate, in
/// leaf order) with zero row sums.
class ResidueMatrix {
 public:
  /// Throws ResiduesDontSumToZero.
  explicit ResidueMatrix(Eigen::MatrixXd entries, double tolerance = FormTolerances{}.residue);

  Eigen::Index rows() const { return entries_.rows(); }
  Eigen::Index cols() const { return entries_.cols(); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  Eigen::VectorXd row(Eigen::Index k) const { return entries_.row(k).transpose(); }

 private:
  Eigen::MatrixXd entries_;
};

/// Throws ResiduesDontSumToZero unless |sum| <= tolerance * max|r|.
void check_residue_sum(const Eigen::VectorXd& residues, double tolerance = FormTolerances{}.residue);

/// Values on the inward leaves, in leaf order.
Eigen::VectorXd residues(const OneForm& form);

/// Sum over the path of length(e) * value(e as oriented by the path).
/// Throws InfiniteIntegral when a leaf of the path carries a nonzero value.
double integrate(const OneForm& form, const GraphPath& path);

/// 1 on the oriented elements of the path, 0 elsewhere. Accepts loops and
/// leaf-to-leaf paths; throws NotPathOrLoop otherwise.
OneForm dual_form(const MetricGraph& graph, const GraphPath& path);

/// Electrical-flow solver for exact forms: edge resistance = length, leaf
/// currents = residues. The grounded Laplacian is factored once and reused.
class KirchhoffSolver {
 public:
  explicit KirchhoffSolver(MetricGraph graph, FormTolerances tolerances = {});
  ~KirchhoffSolver();
  KirchhoffSolver(KirchhoffSolver&&) noexcept;
  KirchhoffSolver& operator=(KirchhoffSolver&&) noexcept;

  /// Throws DimensionMismatch or ResiduesDontSumToZero.
  OneForm solve(const Eigen::VectorXd& residue_row) const;
  /// Vertex potentials (grounded at the smallest vertex id) for a residue row.
  Eigen::VectorXd potentials(const Eigen::VectorXd& residue_row) const;

  const MetricGraph& graph() const { return graph_; }

 private:
  struct Factorization;
  MetricGraph graph_;
  FormTolerances tolerances_;
  std::unique_ptr<Factorization> factorization_;
};

/// The unique exact form with the given residues.
OneForm solve_exact_form(const MetricGraph& graph, const Eigen::VectorXd& residue_row,
                         const FormTolerances& tolerances = {});

struct FormDecomposition {
  OneForm exact;
  OneForm holomorphic;
};

/// Splits a form into its exact part (same residues) and a holomorphic remainder.
FormDecomposition decompose(const OneForm& form);

struct FormSpaceDims {
  std::size_t exact = 0;
  std::size_t holomorphic = 0;
};

/// (n-1, g), cross-checked against ranks of the balancing and loop systems.
/// Throws TooFewLeaves when n < 2 and InternalError on a rank mismatch.
FormSpaceDims form_space_dims(const MetricGraph& graph);

/// Numerically computed dimensions of all forms, exact forms and holomorphic forms.
struct FormSpaceRanks {
  std::size_t all = 0;
  std::size_t exact = 0;
  std::size_t holomorphic = 0;
};
FormSpaceRanks form_space_ranks(const MetricGraph& graph);

bool is_integer_form(const OneForm& form, double tolerance);

}  // namespace tropharm
